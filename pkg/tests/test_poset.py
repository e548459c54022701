from itertools import combinations

import pytest

from facering import PosetError, SimplicialPoset, bundled_poset, validate_simplicial

from helpers import ALL_BUNDLED


def test_parse_p1(p1):
    assert len(p1) == 5
    assert p1.bottom == "0"
    assert p1.atoms == ("y1", "y2")
    assert p1.rank_of("x") == 2 and p1.rank_of("z") == 2
    assert p1.rank_of("y1") == 1 and p1.rank_of("0") == 0
    assert p1.proper_elements == ("y1", "y2", "x", "z")


def test_parse_single_element():
    p = SimplicialPoset.from_json_text('{"elements": ["pt"], "covers": []}')
    assert p.bottom == "pt"
    assert p.atoms == ()
    assert validate_simplicial(p).ok


def test_parse_cycle_error():
    with pytest.raises(PosetError, match="cycle"):
        SimplicialPoset(["0", "y1", "x"], [["y1", "0"], ["x", "y1"], ["y1", "x"]])


def test_parse_self_cover_error():
    with pytest.raises(PosetError, match="cycle"):
        SimplicialPoset(["0", "a"], [["a", "a"]])


def test_parse_missing_bottom():
    with pytest.raises(PosetError, match="bottom"):
        SimplicialPoset(["a", "b"], [])


def test_parse_malformed():
    with pytest.raises(PosetError, match="malformed"):
        SimplicialPoset.from_json_text("{not json")
    with pytest.raises(PosetError, match="malformed"):
        SimplicialPoset.from_json_text('{"elements": ["a"]}')
    with pytest.raises(PosetError, match="unknown element"):
        SimplicialPoset(["0", "a"], [["a", "0"], ["b", "0"]])
    with pytest.raises(PosetError, match="duplicate"):
        SimplicialPoset(["0", "a", "a"], [["a", "0"]])


def test_validate_p1_ok(p1):
    report = validate_simplicial(p1)
    assert report.ok and report.violations == []
    assert report.to_json()["ok"] is True


def test_validate_chain_not_boolean():
    # rank-2 element with a single atom below it
    p = SimplicialPoset(["0", "a", "b"], [["a", "0"], ["b", "a"]])
    report = validate_simplicial(p)
    assert not report.ok
    assert ("boolean lower interval", ("b",)) in report.violations


def test_validate_redundant_edge_breaks_grading():
    p = SimplicialPoset(
        ["0", "y1", "y2", "x"],
        [["y1", "0"], ["y2", "0"], ["x", "y1"], ["x", "y2"], ["x", "0"]],
    )
    report = validate_simplicial(p)
    assert not report.ok
    assert any(axiom == "graded covers" for axiom, _ in report.violations)


def test_validate_all_bundled():
    for name in ALL_BUNDLED:
        assert validate_simplicial(bundled_poset(name)).ok, name


def test_hollow_triangle_intervals_brute_force():
    p = bundled_poset("hollow_triangle")
    # independent check: every lower interval has 2**rank elements and its
    # atom-set map is a bijection onto the power set
    for x in p.elements:
        interval = [y for y in p.elements if p.leq(y, x)]
        r = p.rank_of(x)
        assert len(interval) == 2 ** r
        keys = {frozenset(p.atoms_below(y)) for y in interval}
        assert len(keys) == 2 ** r


def test_join_set_examples(p1):
    assert p1.join_set(("y1", "y2")) == ("x", "z")
    assert p1.join_set(("x", "z")) == ()
    assert p1.join_set(("x",)) == ("x",)
    with pytest.raises(ValueError):
        p1.join_set(())


def test_join_set_properties():
    for name in ALL_BUNDLED:
        p = bundled_poset(name)
        for a, b in combinations(p.elements, 2):
            js = p.join_set((a, b))
            for u in js:
                assert p.leq(a, u) and p.leq(b, u)
            for u, v in combinations(js, 2):
                assert not p.leq(u, v) and not p.leq(v, u)


def test_meet_examples(p1):
    assert p1.meet("y1", "y2") == "0"
    assert p1.meet("x", "z") is None
    assert p1.meet("x", "x") == "x"


def test_meet_is_largest_lower_bound():
    for name in ALL_BUNDLED:
        p = bundled_poset(name)
        for a, b in combinations(p.elements, 2):
            if not p.join_set((a, b)):
                continue
            m = p.meet(a, b)
            lbs = [y for y in p.elements if p.leq(y, a) and p.leq(y, b)]
            assert m in lbs
            assert all(p.leq(y, m) for y in lbs)


def test_incidence_signs_p1(p1):
    # removed-atom position rule: x over y1 removes y2 (position 1)
    assert p1.incidence_sign("x", "y1") == -1
    assert p1.incidence_sign("x", "y2") == 1
    assert p1.incidence_sign("z", "y1") == -1
    assert p1.incidence_sign("y1", "0") == 1
    assert p1.incidence_sign("y2", "0") == 1


def test_incidence_not_a_cover(p1):
    with pytest.raises(ValueError, match="cover"):
        p1.incidence_sign("x", "0")


def test_removed_atom(p1):
    assert p1.removed_atom("x", "y1") == "y2"
    assert p1.removed_atom("z", "y2") == "y1"


def test_incidence_diamond_cancellation():
    for name in ALL_BUNDLED:
        p = bundled_poset(name)
        for w, x, mids in p.rank2_intervals():
            assert len(mids) == 2
            z1, z2 = mids
            total = (
                p.incidence_sign(x, z1) * p.incidence_sign(z1, w)
                + p.incidence_sign(x, z2) * p.incidence_sign(z2, w)
            )
            assert total == 0, (name, w, x)


def test_boolean_counts():
    for name in ALL_BUNDLED:
        p = bundled_poset(name)
        for x in p.elements:
            below = [y for y in p.elements if p.leq(y, x)]
            assert len(below) == 2 ** p.rank_of(x)
            assert len(p.atoms_below(x)) == p.rank_of(x)


def test_parallel_elements_not_merged(p1):
    # x and z sit over the same atoms but stay distinct
    assert set(p1.atoms_below("x")) == set(p1.atoms_below("z"))
    assert "x" != "z" and p1.rank_of("x") == p1.rank_of("z")
    assert not p1.leq("x", "z") and not p1.leq("z", "x")


def test_saturated_chains(p1):
    chains = p1.saturated_chains("x", "0")
    assert sorted(chains) == [("x", "y1", "0"), ("x", "y2", "0")]
    assert p1.saturated_chains("x", "x") == [("x",)]
    assert p1.saturated_chains("y1", "z") == []


def test_face_poset_recognition():
    assert bundled_poset("hollow_triangle").is_face_poset_of_complex()
    assert bundled_poset("tetrahedron_boundary").is_face_poset_of_complex()
    assert not bundled_poset("p1").is_face_poset_of_complex()
    assert not bundled_poset("double_triangle").is_face_poset_of_complex()


def test_json_roundtrip(p1):
    again = SimplicialPoset.from_json_obj(p1.to_json_obj())
    assert again.names == p1.names
    assert again.covers == p1.covers

from itertools import product

import pytest

from facering import Envelope, bundled_poset, PolyRing
from facering.scalars import PrimeField

from helpers import (
    make_ring,
    random_envelope_element,
    random_polynomial,
    subset_expansion_action,
)


@pytest.fixture
def env_x(ring_p1):
    return Envelope.of(ring_p1, "x")


def test_envelope_shapes(ring_p1, env_x):
    assert env_x.atoms == ("y1", "y2")
    assert env_x.inv_vars == ("x", "z")
    e0 = Envelope.of(ring_p1, "0")
    assert e0.atoms == () and e0.inv_vars == ("y1", "y2", "x", "z")
    ey = Envelope.of(ring_p1, "y1")
    assert ey.atoms == ("y1",) and ey.inv_vars == ("y2", "x", "z")
    assert Envelope.of(ring_p1, "x") is env_x


def test_unit(env_x, ring_p1):
    u = env_x.unit()
    assert env_x.degree(env_x.unit_mon) == (0, 0)
    assert env_x.depth(env_x.unit_mon) == 0
    for x in ring_p1.poset.elements:
        e = Envelope.of(ring_p1, x)
        assert e.degree(e.unit_mon) == (0, 0)
    # variables not under x kill the unit
    assert env_x.act_variable("z", u).is_zero()


def test_degree_and_depth_examples(env_x):
    m = env_x.monomial_key({"y1": 1, "y2": 1}, {"x": 1})
    assert env_x.degree(m) == (0, 0)
    assert env_x.depth(m) == 2
    m2 = env_x.monomial_key({"y1": -3}, {"z": 2})
    assert env_x.degree(m2) == (-5, -2)
    assert env_x.depth(m2) == 4


def test_act_variable_displays(env_x, ring_p1):
    one = ring_p1.field.one
    for a, b in product(range(-2, 3), repeat=2):
        for c, d in product(range(0, 3), repeat=2):
            m = env_x.monomial({"y1": a, "y2": b}, {"x": c, "z": d})
            # the ambient element both bumps the Laurent part and contracts
            got = env_x.act_variable("x", m)
            want = env_x.monomial({"y1": a + 1, "y2": b + 1}, {"x": c, "z": d})
            if c >= 1:
                want = want + env_x.monomial({"y1": a, "y2": b}, {"x": c - 1, "z": d})
            assert got == want
            # the parallel element only contracts
            got = env_x.act_variable("z", m)
            want = (
                env_x.monomial({"y1": a, "y2": b}, {"x": c, "z": d - 1})
                if d >= 1
                else env_x.zero()
            )
            assert got == want
            # atoms shift the Laurent part
            assert env_x.act_variable("y1", m) == env_x.monomial(
                {"y1": a + 1, "y2": b}, {"x": c, "z": d}
            )


def test_act_variable_errors(env_x):
    with pytest.raises(ValueError):
        env_x.act_variable("0", env_x.unit())
    with pytest.raises(ValueError):
        env_x.act_variable("w", env_x.unit())


def test_act_polynomial_examples(env_x, ring_p1):
    u = env_x.unit()
    f = ring_p1.parse("t[y1]*t[y2] - t[x] - t[z]")
    assert env_x.act_polynomial(f, u).is_zero()
    assert env_x.act_polynomial(ring_p1.one(), u) == u
    got = env_x.act_polynomial(ring_p1.parse("t[y1]*t[y2]"), u)
    assert got == env_x.monomial({"y1": 1, "y2": 1})


def test_act_polynomial_matches_subset_expansion(ring_p1, rng):
    for x in ("x", "y1", "0"):
        env = Envelope.of(ring_p1, x)
        for _ in range(60):
            f = random_polynomial(ring_p1, rng, terms=1, max_vars=2, max_exp=2)
            ((mon, c),) = f.terms.items()
            e = random_envelope_element(env, rng)
            via_iteration = env.act_monomial(mon, e)
            via_subsets = subset_expansion_action(env, mon, e)
            assert via_iteration == via_subsets


def test_act_tilde(env_x, ring_p1, rng):
    assert env_x.act_tilde("x", env_x.monomial(inverse={"x": 1})) == env_x.unit()
    assert env_x.act_tilde("z", env_x.unit()).is_zero()
    with pytest.raises(ValueError):
        env_x.act_tilde("y1", env_x.unit())
    # agreement with the polynomial route on random elements
    for _ in range(200):
        z = rng.choice(env_x.inv_vars)
        e = random_envelope_element(env_x, rng)
        assert env_x.act_tilde(z, e) == env_x.act_polynomial(
            ring_p1.tilde_of("x", z), e
        )


def test_act_tilde_agreement_other_posets(rng):
    ring = make_ring("solid_triangle")
    env = Envelope.of(ring, "123")
    for _ in range(100):
        z = rng.choice(env.inv_vars)
        e = random_envelope_element(env, rng, depth_max=4)
        assert env.act_tilde(z, e) == env.act_polynomial(ring.tilde_of("123", z), e)


def test_module_axioms_random(rng):
    for name in ("p1", "hollow_triangle"):
        ring = make_ring(name)
        for x in ring.poset.elements:
            env = Envelope.of(ring, x)
            for _ in range(40):
                f = random_polynomial(ring, rng, terms=2, max_vars=2, max_exp=1)
                g = random_polynomial(ring, rng, terms=2, max_vars=2, max_exp=1)
                e = random_envelope_element(env, rng)
                assert env.act_polynomial(f * g, e) == env.act_polynomial(
                    f, env.act_polynomial(g, e)
                )
                assert env.act_polynomial(f + g, e) == env.act_polynomial(
                    f, e
                ) + env.act_polynomial(g, e)


def test_graded_action(env_x, ring_p1, rng):
    for _ in range(80):
        f = random_polynomial(ring_p1, rng, terms=1, max_vars=2, max_exp=2)
        ((mon, _),) = f.terms.items()
        e = random_envelope_element(env_x, rng, terms=1)
        ((emon, _),) = e.terms.items()
        out = env_x.act_monomial(mon, e)
        want = tuple(
            a + b
            for a, b in zip(ring_p1.monomial_degree(mon), env_x.degree(emon))
        )
        for om in out.terms:
            assert env_x.degree(om) == want


def test_action_never_raises_depth(env_x, ring_p1, rng):
    for _ in range(120):
        e = random_envelope_element(env_x, rng)
        d = e.max_depth()
        z = rng.choice(ring_p1.variables)
        out = env_x.act_variable(z, e)
        assert out.max_depth() <= d


def test_defining_ideal_kills_base(ring_p1):
    # every generator annihilates every embedded monomial of the quotient
    for x in ring_p1.poset.elements:
        env = Envelope.of(ring_p1, x)
        atoms = env.atoms
        for exps in product(range(0, 3), repeat=len(atoms)):
            base = env.monomial(dict(zip(atoms, exps)))
            for f in ring_p1.generators():
                assert env.act_polynomial(f, base).is_zero()


def test_degree_support_constraint():
    # nonzero graded pieces need non-positive entries outside the atoms below x
    ring = make_ring("hollow_triangle")
    env = Envelope.of(ring, "12")
    assert env.monomials_of_degree((0, 0, 1), depth_max=4) == []
    assert env.monomials_of_degree((2, 0, -2), depth_max=4) != []
    assert env.monomials_of_degree((0, 0, -2), depth_max=1) == []


def test_monomials_of_degree_enumeration(env_x):
    mons = env_x.monomials_of_degree((1, 1), depth_max=3)
    assert env_x.monomial_key({"y1": 1, "y2": 1}) in mons
    assert env_x.monomial_key({"y1": 2, "y2": 2}, {"x": 1}) in mons
    assert env_x.monomial_key({"y1": 2, "y2": 2}, {"z": 1}) in mons
    assert len(mons) == 3
    for m in mons:
        assert env_x.degree(m) == (1, 1)
        assert env_x.depth(m) <= 3


def test_annihilator_p1(env_x, ring_p1):
    basis = env_x.annihilator_basis((1, 1), 3)
    assert len(basis) == 1
    (vec,) = basis
    embedded = env_x.embed_base(ring_p1.parse("t[y1]*t[y2]"))
    # one-dimensional, spanned by the embedded quotient element
    (coeff,) = {
        c / embedded.terms[m] for m, c in vec.terms.items() if m in embedded.terms
    }
    assert vec == embedded.scale(coeff)


def test_annihilator_degree_zero(ring_p1):
    for x in ring_p1.poset.elements:
        env = Envelope.of(ring_p1, x)
        for m in (1, 2, 3):
            basis = env.annihilator_basis((0, 0), m)
            assert len(basis) == 1
            assert basis[0].terms.keys() == {env.unit_mon}


def test_annihilator_dimension_table(ring_p1):
    expected = {"x": 1, "z": 1, "y1": 0, "y2": 0, "0": 0}
    for x, want in expected.items():
        env = Envelope.of(ring_p1, x)
        assert len(env.annihilator_basis((0, 1), 2)) == (1 if x in ("x", "z", "y2") else 0)
        assert len(env.annihilator_basis((1, 1), 2)) == want


def test_annihilator_rejects_negative(env_x):
    with pytest.raises(ValueError):
        env_x.annihilator_basis((-1, 0), 2)


def test_essential_witness_examples(env_x, ring_p1):
    assert env_x.essential_witness(env_x.unit()) == ring_p1.one()
    e = env_x.monomial({"y1": -1}, {"x": 1})
    f = env_x.essential_witness(e)
    assert f == ring_p1.variable("y1") * ring_p1.tilde_of("x", "x")
    out = env_x.act_polynomial(f, e)
    assert out == env_x.unit()
    with pytest.raises(ValueError):
        env_x.essential_witness(env_x.zero())


def test_essential_witness_random(rng):
    for name in ("p1", "solid_triangle"):
        ring = make_ring(name)
        poset = ring.poset
        for _ in range(100):
            x = rng.choice(poset.elements)
            env = Envelope.of(ring, x)
            e = random_envelope_element(env, rng, depth_max=3)
            f = env.essential_witness(e)
            out = env.act_polynomial(f, e)
            assert not out.is_zero() and env.in_base(out)


def test_in_L(env_x):
    inside = env_x.monomial({"y1": 1, "y2": 1}, {"x": 1})
    assert env_x.in_L(inside)
    assert not env_x.in_L(env_x.unit())
    negative_degree = env_x.monomial({"y1": -1}, {"x": 1})
    assert not env_x.in_L(negative_degree)
    assert env_x.L_defect(inside + env_x.unit()) == env_x.unit_mon


def test_element_json(env_x, ring_p1):
    e = env_x.monomial({"y1": 2}, {"x": 1}) + env_x.unit().scale(
        ring_p1.field.parse("-1/2")
    )
    obj = env_x.element_to_json(e)
    assert obj["ambient"] == "x"
    assert obj["terms"] == [
        {"laurent": {}, "inverse": {}, "coeff": "-1/2"},
        {"laurent": {"y1": 2}, "inverse": {"x": 1}, "coeff": "1"},
    ]


def test_prime_field_envelope(rng):
    ring = PolyRing(bundled_poset("p1"), PrimeField(2))
    env = Envelope.of(ring, "x")
    u = env.unit()
    doubled = env.act_polynomial(ring.parse("t[x] + t[x]"), env.monomial(inverse={"x": 2}))
    assert doubled.is_zero()
    f = ring.parse("t[y1]*t[y2] + t[x] + t[z]")
    assert env.act_polynomial(f, u).is_zero()

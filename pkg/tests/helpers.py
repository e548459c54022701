"""Shared test utilities: random generators and independent mini-oracles."""

from itertools import combinations

from facering import PolyRing, bundled_poset
from facering.scalars import QQ

ALL_BUNDLED = (
    "p1",
    "hollow_triangle",
    "solid_triangle",
    "tetrahedron_boundary",
    "two_disjoint_edges",
    "double_triangle",
)

COMPLEX_BUNDLED = (
    "hollow_triangle",
    "solid_triangle",
    "tetrahedron_boundary",
    "two_disjoint_edges",
)


def make_ring(name, field=QQ):
    return PolyRing(bundled_poset(name), field)


def random_monomial_exps(ring, rng, max_vars=2, max_exp=2):
    exps = {}
    for _ in range(rng.randint(1, max_vars)):
        exps[rng.choice(ring.variables)] = rng.randint(1, max_exp)
    return exps


def random_polynomial(ring, rng, terms=3, max_vars=2, max_exp=2, coeff_range=3):
    f = ring.zero()
    for _ in range(rng.randint(1, terms)):
        c = 0
        while c == 0:
            c = rng.randint(-coeff_range, coeff_range)
        f = f + ring.term(ring.field.from_int(c), random_monomial_exps(ring, rng, max_vars, max_exp))
    return f


def random_envelope_element(env, rng, terms=2, laurent_bound=2, depth_max=3):
    """Random nonzero element with inverse parts of bounded depth."""
    out = env.zero()
    while out.is_zero():
        acc = {}
        for _ in range(rng.randint(1, terms)):
            lau = tuple(rng.randint(-laurent_bound, laurent_bound) for _ in range(env.natoms))
            inv = [0] * env.ninv
            budget = rng.randint(0, depth_max)
            order = list(range(env.ninv))
            rng.shuffle(order)
            for j in order:
                w = env._iweight[j]
                if w <= budget and rng.random() < 0.6:
                    e = rng.randint(1, budget // w)
                    inv[j] = e
                    budget -= e * w
            c = 0
            while c == 0:
                c = rng.randint(-2, 2)
            key = (lau, tuple(inv))
            acc[key] = acc.get(key, env.ring.field.zero) + env.ring.field.from_int(c)
        out = env.element(acc)
    return out


def subset_expansion_action(env, exps, elem):
    """Independent oracle for the polynomial-monomial action: expand the
    comultiplication of the product over all subsets of variable occurrences
    instead of iterating single-variable actions."""
    ring = env.ring
    field = ring.field
    occurrences = []
    for k, e in enumerate(exps):
        occurrences.extend([ring.variables[k]] * e)
    m = len(occurrences)
    total = {}
    for (lau, inv), c in elem.terms.items():
        for r in range(m + 1):
            for left in combinations(range(m), r):
                left_set = set(left)
                # face-projection factor on the Laurent part
                lau2 = list(lau)
                dead = False
                for i in left:
                    z = occurrences[i]
                    if z in env._apos:
                        lau2[env._apos[z]] += 1
                    elif env._ileq[env._ipos[z]]:
                        for t, b in enumerate(env._ibump[env._ipos[z]]):
                            lau2[t] += b
                    else:
                        dead = True
                        break
                if dead:
                    continue
                # contraction factor on the inverse part
                inv2 = list(inv)
                for i in range(m):
                    if i in left_set:
                        continue
                    z = occurrences[i]
                    if z not in env._ipos:
                        dead = True
                        break
                    j = env._ipos[z]
                    if inv2[j] == 0:
                        dead = True
                        break
                    inv2[j] -= 1
                if dead:
                    continue
                key = (tuple(lau2), tuple(inv2))
                s = total.get(key, field.zero) + c
                if s:
                    total[key] = s
                else:
                    total.pop(key, None)
    return env.element(total)

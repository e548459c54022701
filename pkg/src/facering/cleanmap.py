"""Normalized homomorphisms between envelopes and their certification.

A degree-zero map between envelopes is called clean when it carries the
positive-depth non-negative part of the source into that of the target;
with the monomial bases fixed here, a clean map between fixed endpoints is
unique up to a scalar.  This module builds the explicit cover-step maps,
composes them along saturated chains, certifies cleanness and linearity on
finite boxes, constructs a degree-zero automorphism that is deliberately not
clean, and reconstructs the base-change conjugate that turns an arbitrary
unit-preserving map back into the clean one.

Certificates are depth-bounded by necessity (the defining condition ranges
over infinitely many monomials) and always record their bounds.
"""

from __future__ import annotations

from dataclasses import dataclass
from math import comb

from .envelope import Envelope, EnvelopeElement


class StabilizationError(RuntimeError):
    """A truncated correction series failed to terminate within its bound."""


@dataclass
class CertReport:
    """Result of one bounded certification sweep."""

    name: str
    bounds: dict
    passed: bool
    checked: int = 0
    witness: dict | None = None
    details: dict | None = None

    def to_json(self):
        out = {
            "property": self.name,
            "box": self.bounds,
            "status": "pass" if self.passed else "fail",
            "checked": self.checked,
        }
        if self.witness is not None:
            out["witness"] = self.witness
        if self.details is not None:
            out["details"] = self.details
        return out


class CoverData:
    """Precomputed combinatorics of one cover step between envelopes.

    The source variables split as atoms | Z | W: Z holds the elements below
    the upper endpoint that contain the removed atom (their inverse
    exponents absorb the binomial transfer), W everything else (carried
    along unchanged).
    """

    def __init__(self, ring, upper, lower):
        poset = ring.poset
        if not poset.is_cover(upper, lower):
            raise ValueError(f"{upper!r} does not cover {lower!r}")
        self.ring = ring
        self.upper = upper
        self.lower = lower
        self.source = Envelope.of(ring, upper)
        self.target = Envelope.of(ring, lower)
        self.removed = poset.removed_atom(upper, lower)
        src, tgt = self.source, self.target
        self.r_pos = src._apos[self.removed]
        self.kept = tuple(
            (i, tgt._apos[a]) for i, a in enumerate(src.atoms) if a != self.removed
        )
        zs = tuple(
            z
            for z in src.inv_vars
            if poset.leq(z, upper) and not poset.leq(z, lower)
        )
        for z in src.inv_vars:
            if poset.leq(z, upper):
                assert (z in zs) == poset.leq(self.removed, z)
        self.Z = zs
        zset = set(zs)
        self.z_src = tuple(src._ipos[z] for z in zs)
        self.z_tgt = tuple(tgt._ipos[z] for z in zs)
        self.w_pairs = tuple(
            (src._ipos[w], tgt._ipos[w]) for w in src.inv_vars if w not in zset
        )
        self.r_tgt = tgt._ipos[self.removed]
        self._zbumps = tuple(src._ibump[src._ipos[z]] for z in zs)
        for zb in self._zbumps:
            assert zb[self.r_pos] == 1
        self._dcache = {}

    @classmethod
    def of(cls, ring, upper, lower):
        key = (upper, lower)
        cd = ring._covers.get(key)
        if cd is None:
            cd = ring._covers[key] = cls(ring, upper, lower)
        return cd

    def _expansions(self, budget):
        cached = self._dcache.get(budget)
        if cached is not None:
            return cached
        k = len(self.Z)
        out = []
        d = [0] * k

        def rec(i, rem):
            if i == k:
                bump = [0] * self.source.natoms
                for dz, zb in zip(d, self._zbumps):
                    if dz:
                        for t, b in enumerate(zb):
                            if b:
                                bump[t] += dz
                out.append((tuple(d), sum(d), tuple(bump)))
                return
            for e in range(rem + 1):
                d[i] = e
                rec(i + 1, rem - e)
            d[i] = 0

        rec(0, budget)
        self._dcache[budget] = tuple(out)
        return self._dcache[budget]

    def apply_monomial(self, lau, inv):
        """Expand one source monomial into [(laurent, inverse, int coeff)].

        Transfers up to -a_r units of the removed atom's Laurent exponent
        into the Z inverse exponents, weighting each move by the binomial
        count of its interleavings; monomials with positive removed-atom
        exponent map to zero.
        """
        a_r = lau[self.r_pos]
        if a_r > 0:
            return ()
        tgt = self.target
        out = []
        for d, sd, bump in self._expansions(-a_r):
            coeff = 1
            for js, dz in zip(self.z_src, d):
                if dz:
                    b = inv[js]
                    coeff *= comb(b + dz, b)
            tl = [0] * tgt.natoms
            for si, ti in self.kept:
                tl[ti] = lau[si] + bump[si]
            ti_ = [0] * tgt.ninv
            for js, jt in self.w_pairs:
                ti_[jt] = inv[js]
            for js, jt, dz in zip(self.z_src, self.z_tgt, d):
                ti_[jt] = inv[js] + dz
            ti_[self.r_tgt] = -(a_r + sd)
            out.append((tuple(tl), tuple(ti_), coeff))
        return out


class CleanMap:
    """Composite of cover steps along a saturated chain, sending the source
    unit to scalar times the target unit."""

    def __init__(self, ring, chain, scalar=None):
        chain = tuple(chain)
        if not chain:
            raise ValueError("empty chain")
        poset = ring.poset
        for u, l in zip(chain, chain[1:]):
            if not poset.is_cover(u, l):
                raise ValueError(f"chain step {u!r} > {l!r} is not a cover")
        self.ring = ring
        self.chain = chain
        self.scalar = ring.field.one if scalar is None else scalar
        self._covers = tuple(
            CoverData.of(ring, u, l) for u, l in zip(chain, chain[1:])
        )

    @property
    def source(self):
        return self.chain[0]

    @property
    def target(self):
        return self.chain[-1]

    @property
    def source_env(self):
        return Envelope.of(self.ring, self.source)

    @property
    def target_env(self):
        return Envelope.of(self.ring, self.target)

    def scaled(self, c):
        return CleanMap(self.ring, self.chain, self.scalar * c)

    def apply_monomial(self, mon):
        return self(EnvelopeElement(self.source_env, {mon: self.ring.field.one}))

    def __call__(self, elem):
        if elem.env is not self.source_env:
            raise ValueError("element lives in a different envelope")
        fld = self.ring.field
        terms = elem.terms
        for cd in self._covers:
            nxt = {}
            for (lau, inv), c in terms.items():
                for tl, ti, k in cd.apply_monomial(lau, inv):
                    cc = c if k == 1 else c * fld.from_int(k)
                    if not cc:
                        continue
                    key = (tl, ti)
                    s = nxt.get(key)
                    if s is None:
                        nxt[key] = cc
                    else:
                        s = s + cc
                        if s:
                            nxt[key] = s
                        else:
                            del nxt[key]
            terms = nxt
        if terms is elem.terms:
            terms = dict(terms)
        out = EnvelopeElement(self.target_env, terms)
        if self.scalar != self.ring.field.one:
            out = out.scale(self.scalar)
        return out

    def __repr__(self):
        return f"CleanMap({' > '.join(self.chain)})"


def cover_map(ring, upper, lower):
    """The normalized map attached to a single cover."""
    return CleanMap(ring, (upper, lower))


def rank1_map(ring, atom):
    """The map from a rank-1 envelope down to the bottom envelope."""
    if ring.poset.rank_of(atom) != 1:
        raise ValueError(f"{atom!r} is not rank 1")
    return CleanMap(ring, (atom, ring.poset.bottom))


def chain_map(ring, chain):
    """Composite along a saturated chain, normalized on the unit."""
    return CleanMap(ring, chain)


def identity_map(ring, x):
    return CleanMap(ring, (x,))


class GradedEndomap:
    """Evaluable degree-zero self-map of one envelope."""

    def __init__(self, env, fn, label=""):
        self.env = env
        self._fn = fn
        self.label = label

    @property
    def source_env(self):
        return self.env

    @property
    def target_env(self):
        return self.env

    def __call__(self, elem):
        if elem.env is not self.env:
            raise ValueError("element lives in a different envelope")
        return self._fn(elem)

    def __repr__(self):
        return f"GradedEndomap({self.label or 'anonymous'})"


class ComposedMap:
    """Composition outer after inner of two evaluable maps."""

    def __init__(self, outer, inner):
        if inner.target_env is not outer.source_env:
            raise ValueError("maps do not compose")
        self.outer = outer
        self.inner = inner

    @property
    def source_env(self):
        return self.inner.source_env

    @property
    def target_env(self):
        return self.outer.target_env

    def __call__(self, elem):
        return self.outer(self.inner(elem))


def compose_maps(outer, inner):
    return ComposedMap(outer, inner)


def nonclean_automorphism(ring, x, lam):
    """Degree-zero automorphism of the envelope at x that is not clean.

    id + lam * theta, where theta shifts every atom Laurent exponent down by
    one after contracting the inverse exponent of x itself.  theta is
    S-linear (unit shifts and straightened contractions commute with the
    action) and locally nilpotent, so the sum is invertible; it fixes the
    unit but pushes positive-depth monomials onto it.
    """
    if ring.poset.rank_of(x) < 2:
        raise ValueError("need an element of rank at least 2")
    env = Envelope.of(ring, x)
    shift = (-1,) * env.natoms

    def fn(elem):
        theta = env.act_laurent(shift, env.act_tilde(x, elem))
        return elem + theta.scale(lam)

    return GradedEndomap(env, fn, label=f"unit-shift perturbation at {x}")


def check_clean(m, depth_bound=4):
    """Certify cleanness on all degree-zero positive-depth monomials of
    depth at most depth_bound (degree zero suffices: both sides of the
    condition are stable under the Laurent units that move degrees)."""
    src = m.source_env
    tgt = m.target_env
    zero_deg = (0,) * src.ring.natoms
    mons = src.monomials_of_degree(zero_deg, depth_max=depth_bound, depth_min=1)
    fld = src.ring.field
    for k, mon in enumerate(mons):
        img = m(EnvelopeElement(src, {mon: fld.one}))
        bad = tgt.L_defect(img)
        if bad is not None:
            return CertReport(
                "clean",
                {"depth": depth_bound},
                False,
                checked=k + 1,
                witness={
                    "input": src.element_to_json(EnvelopeElement(src, {mon: fld.one})),
                    "image": tgt.element_to_json(img),
                    "offending": tgt.element_to_json(
                        EnvelopeElement(tgt, {bad: fld.one})
                    ),
                },
            )
    return CertReport("clean", {"depth": depth_bound}, True, checked=len(mons))


def check_linearity(m, laurent_bound=2, depth_bound=2, inverse_bound=None):
    """Certify degree preservation and commutation with every variable on a
    finite monomial box."""
    src = m.source_env
    tgt = m.target_env
    ring = src.ring
    fld = ring.field
    bounds = {"laurent": laurent_bound}
    if inverse_bound is not None:
        bounds["inverse"] = inverse_bound
    else:
        bounds["depth"] = depth_bound
    checked = 0
    for mon in src.monomial_box(
        laurent_bound, depth_bound=depth_bound, inverse_bound=inverse_bound
    ):
        e = EnvelopeElement(src, {mon: fld.one})
        img = m(e)
        d = src.degree(mon)
        for om in img.terms:
            if tgt.degree(om) != d:
                return CertReport(
                    "graded linearity",
                    bounds,
                    False,
                    checked=checked,
                    witness={
                        "reason": "degree not preserved",
                        "input": src.element_to_json(e),
                        "image": tgt.element_to_json(img),
                    },
                )
        for w in ring.variables:
            lhs = m(src.act_variable(w, e))
            rhs = tgt.act_variable(w, img)
            if lhs != rhs:
                return CertReport(
                    "graded linearity",
                    bounds,
                    False,
                    checked=checked,
                    witness={
                        "reason": f"action of t[{w}] does not commute",
                        "input": src.element_to_json(e),
                    },
                )
        checked += 1
    return CertReport("graded linearity", bounds, True, checked=checked)


def tau_coefficient(phi, alpha, beta):
    """Coefficient of beta in the base-change conjugate applied to alpha.

    Pairs phi against the target unit after multiplying alpha by the dual
    element of beta (straightened contractions, then a Laurent unit); the
    grading makes this vanish unless the degrees agree.
    """
    env = phi.source_env
    tgt = phi.target_env
    fld = env.ring.field
    lau_a, inv_a = alpha
    lau_b, inv_b = beta
    if any(b > a for a, b in zip(inv_a, inv_b)):
        return fld.zero
    shifted = (
        tuple(a - b for a, b in zip(lau_a, lau_b)),
        tuple(a - b for a, b in zip(inv_a, inv_b)),
    )
    img = phi(EnvelopeElement(env, {shifted: fld.one}))
    return img.terms.get(tgt.unit_mon, fld.zero)


def tau_map(phi):
    """The base-change conjugate of phi as an evaluable endomap.

    Requires phi to preserve the unit up to a nonzero scalar.  Per input
    monomial only finitely many output monomials can carry a coefficient
    (their inverse parts are bounded by the input's), so values are computed
    on demand and memoized.
    """
    env = phi.source_env
    fld = env.ring.field
    c = tau_coefficient(phi, env.unit_mon, env.unit_mon)
    if not c:
        raise ValueError("map kills the unit; no conjugate exists")
    memo = {}
    n = env.ring.natoms
    acoords = set(env._acoord)
    free = [g for g in range(n) if g not in acoords]

    def candidates(alpha):
        lau_a, inv_a = alpha
        adeg = env.degree(alpha)
        stack = [()]
        for j in range(env.ninv):
            stack = [pre + (e,) for pre in stack for e in range(inv_a[j] + 1)]
        for inv_b in stack:
            ok = True
            for g in free:
                s = -sum(
                    e * env._ideg[j][g] for j, e in enumerate(inv_b) if e
                )
                if s != adeg[g]:
                    ok = False
                    break
            if not ok:
                continue
            lau_b = tuple(
                adeg[g] + sum(e * env._ideg[j][g] for j, e in enumerate(inv_b) if e)
                for g in env._acoord
            )
            yield (lau_b, inv_b)

    def tau_mono(alpha):
        out = memo.get(alpha)
        if out is None:
            out = {}
            for beta in candidates(alpha):
                co = tau_coefficient(phi, alpha, beta)
                if co:
                    out[beta] = co
            memo[alpha] = out
        return out

    def fn(elem):
        acc = {}
        for mon, c0 in elem.terms.items():
            for beta, co in tau_mono(mon).items():
                v = acc.get(beta, fld.zero) + c0 * co
                if v:
                    acc[beta] = v
                else:
                    acc.pop(beta, None)
        return EnvelopeElement(env, acc)

    return GradedEndomap(env, fn, label="base-change conjugate")


def materialize_tau(phi, monomials):
    """Conjugate endomap with its table precomputed on the given monomials."""
    t = tau_map(phi)
    env = t.env
    fld = env.ring.field
    for mon in monomials:
        t(EnvelopeElement(env, {mon: fld.one}))
    return t


def neumann_inverse(endo, max_extra=4):
    """Inverse of a unit-triangular evaluable endomap via its correction
    series; raises StabilizationError instead of silently truncating."""
    env = endo.env
    fld = env.ring.field
    c = endo(env.unit()).terms.get(env.unit_mon)
    if not c:
        raise ValueError("endomap kills the unit; not invertible this way")
    inv_c = fld.one / c

    def n_of(e):
        return endo(e).scale(inv_c) - e

    def fn(elem):
        if elem.is_zero():
            return elem
        bound = max(sum(inv) for (_, inv) in elem.terms) + max_extra
        term = elem
        total = env.zero()
        sign = 1
        k = 0
        while term:
            total = (total + term) if sign > 0 else (total - term)
            sign = -sign
            k += 1
            if k > bound:
                raise StabilizationError(
                    f"correction series did not stabilize within {bound} steps"
                )
            term = n_of(term)
        return total.scale(inv_c)

    return GradedEndomap(env, fn, label=f"series inverse of {endo.label}")

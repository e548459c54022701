"""Finitely supported model of the graded injective hull at a poset element.

For an element x, basis monomials are pairs (laurent | inverse): an integer
Laurent exponent vector over the atoms below x and a non-negative exponent
vector over all remaining variables, encoding

    (prod_i t_i^{a_i})  (x)  (prod_z t_z^{-c_z}).

The ring acts through the comultiplication rule t -> t(x)1 + 1(x)t: an atom
below x shifts the Laurent part; any other variable acts by its face
projection on the Laurent part plus a contraction of the inverse part.  The
depth of a monomial is the total degree of its inverse part; the action
never raises depth, so depth-bounded spans are submodules and truncated
computations (annihilators in particular) are exact, not approximate.

The full hull has infinite-dimensional graded pieces as soon as the rank is
at least two; this module never materialises it.  Elements here are finite
combinations, every operation returns finite output, and all operations are
pure, so parallel evaluation over degrees or elements is safe.
"""

from __future__ import annotations

from itertools import product

from .linalg import kernel_basis


class EnvelopeElement:
    """Finite combination of basis monomials of one envelope."""

    __slots__ = ("env", "terms")

    def __init__(self, env, terms):
        self.env = env
        self.terms = terms

    def is_zero(self):
        return not self.terms

    def __bool__(self):
        return bool(self.terms)

    def __eq__(self, other):
        return (
            isinstance(other, EnvelopeElement)
            and self.env is other.env
            and self.terms == other.terms
        )

    def __add__(self, other):
        if self.env is not other.env:
            raise ValueError("elements live in different envelopes")
        merged = dict(self.terms)
        for m, c in other.terms.items():
            s = merged.get(m)
            if s is None:
                merged[m] = c
            else:
                s = s + c
                if s:
                    merged[m] = s
                else:
                    del merged[m]
        return EnvelopeElement(self.env, merged)

    def __neg__(self):
        return EnvelopeElement(self.env, {m: -c for m, c in self.terms.items()})

    def __sub__(self, other):
        return self + (-other)

    def scale(self, c):
        if not c:
            return EnvelopeElement(self.env, {})
        return EnvelopeElement(self.env, {m: v * c for m, v in self.terms.items()})

    def coefficient(self, mon):
        return self.terms.get(mon, self.env.ring.field.zero)

    def max_depth(self):
        return max((self.env.depth(m) for m in self.terms), default=0)

    def __repr__(self):
        return f"<at {self.env.x}: {self.env.format(self)}>"


class Envelope:
    """Envelope attached to one poset element, with its monomial calculus."""

    def __init__(self, ring, x):
        poset = ring.poset
        if x not in poset:
            raise ValueError(f"unknown element {x!r}")
        self.ring = ring
        self.x = x
        self.atoms = poset.atoms_below(x)
        self.natoms = len(self.atoms)
        aset = set(self.atoms)
        self.inv_vars = tuple(z for z in ring.variables if z not in aset)
        self.ninv = len(self.inv_vars)
        self._apos = {a: i for i, a in enumerate(self.atoms)}
        self._ipos = {z: j for j, z in enumerate(self.inv_vars)}
        self._acoord = tuple(ring.atom_index(a) for a in self.atoms)
        self._ideg = tuple(ring.variable_degree(z) for z in self.inv_vars)
        self._iweight = tuple(sum(d) for d in self._ideg)
        self._ileq = tuple(poset.leq(z, x) for z in self.inv_vars)
        bumps = []
        for z, under in zip(self.inv_vars, self._ileq):
            if under:
                zat = set(poset.atoms_below(z))
                bumps.append(tuple(1 if a in zat else 0 for a in self.atoms))
            else:
                bumps.append(None)
        self._ibump = tuple(bumps)
        self.unit_mon = ((0,) * self.natoms, (0,) * self.ninv)
        self._invcache = {}

    @classmethod
    def of(cls, ring, x):
        env = ring._envelopes.get(x)
        if env is None:
            env = ring._envelopes[x] = cls(ring, x)
        return env

    def __repr__(self):
        return f"Envelope({self.x!r})"

    # ---------- element constructors ----------

    def zero(self):
        return EnvelopeElement(self, {})

    def unit(self):
        return EnvelopeElement(self, {self.unit_mon: self.ring.field.one})

    def monomial_key(self, laurent=None, inverse=None):
        lau = [0] * self.natoms
        for name, e in (laurent or {}).items():
            if name not in self._apos:
                raise ValueError(f"{name!r} is not an atom below {self.x!r}")
            lau[self._apos[name]] = e
        inv = [0] * self.ninv
        for name, e in (inverse or {}).items():
            if name not in self._ipos:
                raise ValueError(f"{name!r} is not an inverse variable at {self.x!r}")
            if e < 0:
                raise ValueError("inverse exponents must be non-negative")
            inv[self._ipos[name]] = e
        return (tuple(lau), tuple(inv))

    def monomial(self, laurent=None, inverse=None, coeff=None):
        c = self.ring.field.one if coeff is None else coeff
        if not c:
            return self.zero()
        return EnvelopeElement(self, {self.monomial_key(laurent, inverse): c})

    def element(self, terms):
        return EnvelopeElement(self, {m: c for m, c in terms.items() if c})

    def embed_base(self, f):
        """Image of a polynomial supported on the atoms below x."""
        self.ring._check(f)
        out = {}
        for mon, c in f.terms.items():
            lau = [0] * self.natoms
            for k, e in enumerate(mon):
                if e:
                    name = self.ring.variables[k]
                    if name not in self._apos:
                        raise ValueError(
                            f"{name!r} does not survive at {self.x!r}"
                        )
                    lau[self._apos[name]] = e
            out[(tuple(lau), (0,) * self.ninv)] = c
        return EnvelopeElement(self, out)

    # ---------- degree and depth ----------

    def degree(self, mon):
        lau, inv = mon
        deg = [0] * self.ring.natoms
        for i, e in enumerate(lau):
            if e:
                deg[self._acoord[i]] += e
        for j, e in enumerate(inv):
            if e:
                d = self._ideg[j]
                for g, dg in enumerate(d):
                    if dg:
                        deg[g] -= e * dg
        return tuple(deg)

    def depth(self, mon):
        return sum(e * w for e, w in zip(mon[1], self._iweight))

    # ---------- ring action ----------

    def act_variable(self, z, elem):
        """Action of a single variable, monomial by monomial."""
        if z == self.ring.poset.bottom:
            raise ValueError("the bottom element carries no variable")
        out = {}
        if z in self._apos:
            i = self._apos[z]
            for (lau, inv), c in elem.terms.items():
                key = (lau[:i] + (lau[i] + 1,) + lau[i + 1:], inv)
                _acc(out, key, c)
        else:
            if z not in self._ipos:
                raise ValueError(f"unknown variable {z!r}")
            j = self._ipos[z]
            bump = self._ibump[j]
            for (lau, inv), c in elem.terms.items():
                if bump is not None:
                    key = (tuple(a + b for a, b in zip(lau, bump)), inv)
                    _acc(out, key, c)
                e = inv[j]
                if e > 0:
                    key = (lau, inv[:j] + (e - 1,) + inv[j + 1:])
                    _acc(out, key, c)
        return EnvelopeElement(self, out)

    def act_monomial(self, mon, elem):
        for k, e in enumerate(mon):
            if e:
                z = self.ring.variables[k]
                for _ in range(e):
                    elem = self.act_variable(z, elem)
                    if not elem.terms:
                        return elem
        return elem

    def act_polynomial(self, f, elem):
        self.ring._check(f)
        total = self.zero()
        for mon, c in f.terms.items():
            total = total + self.act_monomial(mon, elem).scale(c)
        return total

    def act_tilde(self, z, elem):
        """Action of the straightened variable: a pure inverse-part shift,
        killing monomials whose z-exponent is zero."""
        if z not in self._ipos:
            raise ValueError(f"{z!r} is not an inverse variable at {self.x!r}")
        j = self._ipos[z]
        out = {}
        for (lau, inv), c in elem.terms.items():
            e = inv[j]
            if e > 0:
                # injective on the surviving monomials, so no collisions
                out[(lau, inv[:j] + (e - 1,) + inv[j + 1:])] = c
        return EnvelopeElement(self, out)

    def act_laurent(self, shift, elem):
        """Multiplication by a Laurent unit on the atom part."""
        out = {}
        for (lau, inv), c in elem.terms.items():
            out[(tuple(a + s for a, s in zip(lau, shift)), inv)] = c
        return EnvelopeElement(self, out)

    # ---------- monomial enumeration ----------

    def _inverse_vectors(self, depth_max):
        cached = self._invcache.get(depth_max)
        if cached is not None:
            return cached
        out = []
        vec = [0] * self.ninv
        weights = self._iweight

        def rec(j, budget):
            if j == self.ninv:
                out.append(tuple(vec))
                return
            w = weights[j]
            for e in range(budget // w + 1):
                vec[j] = e
                rec(j + 1, budget - e * w)
            vec[j] = 0

        rec(0, depth_max)
        self._invcache[depth_max] = tuple(out)
        return self._invcache[depth_max]

    def monomials_of_degree(self, a, depth_max, depth_min=0):
        """All basis monomials of the given degree with bounded depth.

        The inverse part is searched directly; the Laurent part is then
        forced by the degree.  Empty whenever the degree has a positive
        entry outside the atoms below x.
        """
        n = self.ring.natoms
        a = tuple(a)
        if len(a) != n:
            raise ValueError("degree vector has the wrong length")
        acoords = set(self._acoord)
        free = [g for g in range(n) if g not in acoords]
        target = [-a[g] for g in free]
        if any(t < 0 for t in target):
            return []
        dvecs = [tuple(self._ideg[j][g] for g in free) for j in range(self.ninv)]
        out = []
        vec = [0] * self.ninv

        def rec(j, budget, rem):
            if j == self.ninv:
                if all(r == 0 for r in rem):
                    depth = depth_max - budget
                    if depth >= depth_min:
                        lau = tuple(
                            a[g] + sum(
                                vec[k] * self._ideg[k][g]
                                for k in range(self.ninv)
                                if vec[k]
                            )
                            for g in self._acoord
                        )
                        out.append((lau, tuple(vec)))
                return
            w = self._iweight[j]
            dv = dvecs[j]
            top = budget // w
            for t, d in zip(rem, dv):
                if d:
                    top = min(top, t // d)
            for e in range(top + 1):
                vec[j] = e
                rec(j + 1, budget - e * w, [t - e * d for t, d in zip(rem, dv)])
            vec[j] = 0

        rec(0, depth_max, target)
        out.sort()
        return out

    def monomial_box(self, laurent_bound, depth_bound=None, inverse_bound=None):
        """Iterate basis monomials with Laurent exponents in a symmetric box
        and inverse part bounded either by depth or by a per-exponent cap."""
        if inverse_bound is not None:
            invs = product(range(inverse_bound + 1), repeat=self.ninv)
        else:
            invs = self._inverse_vectors(depth_bound or 0)
        rng = range(-laurent_bound, laurent_bound + 1)
        for inv in invs:
            for lau in product(rng, repeat=self.natoms):
                yield (lau, inv)

    # ---------- distinguished subspaces ----------

    def L_defect(self, elem):
        """First monomial outside the positive-depth non-negative part."""
        for mon in sorted(elem.terms):
            if self.depth(mon) < 1 or any(d < 0 for d in self.degree(mon)):
                return mon
        return None

    def in_L(self, elem):
        return self.L_defect(elem) is None

    def in_base(self, elem):
        """Whether the element lies in the embedded polynomial quotient
        (depth zero, no negative Laurent exponents)."""
        return all(
            self.depth(m) == 0 and min(m[0], default=0) >= 0 for m in elem.terms
        )

    # ---------- solvers ----------

    def annihilator_basis(self, a, depth_bound):
        """Basis of the degree-a elements of bounded depth killed by every
        defining relation, by exact linear algebra on the finite slice.

        Truncation is exact because the action never raises depth.
        """
        a = tuple(a)
        if any(v < 0 for v in a):
            raise ValueError("degree must be componentwise non-negative")
        mons = self.monomials_of_degree(a, depth_max=depth_bound)
        if not mons:
            return []
        field = self.ring.field
        rows = {}
        for gi, f in enumerate(self.ring.generators()):
            for k, m in enumerate(mons):
                img = self.act_polynomial(f, EnvelopeElement(self, {m: field.one}))
                for om, c in img.terms.items():
                    row = rows.get((gi, om))
                    if row is None:
                        row = rows[(gi, om)] = [field.zero] * len(mons)
                    row[k] = row[k] + c
        basis = kernel_basis(list(rows.values()), len(mons), field)
        return [
            EnvelopeElement(self, {mons[k]: v for k, v in enumerate(vec) if v})
            for vec in basis
        ]

    def essential_witness(self, elem):
        """Polynomial f with f * elem a nonzero member of the embedded
        polynomial quotient.

        Repeatedly multiplies by the straightened variable with the largest
        inverse exponent (each pass strictly lowers the maximal depth and
        kills nothing outright), then clears negative Laurent exponents with
        a plain atom monomial.
        """
        if elem.is_zero():
            raise ValueError("no witness for the zero element")
        ring = self.ring
        f = ring.one()
        cur = elem
        while cur.max_depth() > 0:
            best = None
            for (_, inv) in cur.terms:
                for j, e in enumerate(inv):
                    if e and (best is None or e > best[0] or (e == best[0] and j < best[1])):
                        best = (e, j)
            z = self.inv_vars[best[1]]
            f = ring.tilde_of(self.x, z) * f
            cur = self.act_tilde(z, cur)
        if self.natoms:
            mins = [min(lau[i] for (lau, _) in cur.terms) for i in range(self.natoms)]
            shift = {self.atoms[i]: -m for i, m in enumerate(mins) if m < 0}
            if shift:
                f = f * ring.monomial(shift)
        result = self.act_polynomial(f, elem)
        assert result and self.in_base(result)
        return f

    # ---------- presentation ----------

    def format(self, elem):
        if not elem.terms:
            return "0"
        bits = []
        for mon in sorted(elem.terms, reverse=True):
            c = elem.terms[mon]
            lau, inv = mon
            lpart = "*".join(
                f"t[{a}]^{e}" if e != 1 else f"t[{a}]"
                for a, e in zip(self.atoms, lau)
                if e
            ) or "1"
            ipart = "*".join(
                f"t[{z}]^{-e}" for z, e in zip(self.inv_vars, inv) if e
            ) or "1"
            bits.append(f"({self.ring.field.format(c)})*({lpart} (x) {ipart})")
        return " + ".join(bits)

    def element_to_json(self, elem):
        terms = []
        for mon in sorted(elem.terms):
            lau, inv = mon
            terms.append(
                {
                    "laurent": {a: e for a, e in zip(self.atoms, lau) if e},
                    "inverse": {z: e for z, e in zip(self.inv_vars, inv) if e},
                    "coeff": self.ring.field.format(elem.terms[mon]),
                }
            )
        return {"ambient": self.x, "terms": terms}


def _acc(out, key, c):
    s = out.get(key)
    if s is None:
        out[key] = c
    else:
        s = s + c
        if s:
            out[key] = s
        else:
            del out[key]

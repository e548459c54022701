"""Sparse exact polynomials on the variable set of a simplicial poset.

One variable per non-bottom element, graded by atom support.  Exponent
vectors are dense tuples; the posets handled here are small, so dense keys
beat clever sparse ones.  Besides plain arithmetic this module carries the
defining quadratic relations of the face quotient, the straightened
variables relative to an ambient element, prime generator sets per element,
and a rewriting normal form onto chain-supported monomials that decides
ideal membership.

Polynomials are immutable values and all operations are pure functions, so
independent inputs can be evaluated concurrently.
"""

from __future__ import annotations

import re

from .scalars import QQ


class Polynomial:
    """Sparse polynomial: terms map exponent tuples to nonzero scalars."""

    __slots__ = ("ring", "terms")

    def __init__(self, ring, terms):
        self.ring = ring
        self.terms = terms

    def is_zero(self):
        return not self.terms

    def __bool__(self):
        return bool(self.terms)

    def __eq__(self, other):
        return (
            isinstance(other, Polynomial)
            and self.ring is other.ring
            and self.terms == other.terms
        )

    def __hash__(self):
        return hash(frozenset(self.terms.items()))

    def __add__(self, other):
        self.ring._check(other)
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
        return Polynomial(self.ring, merged)

    def __neg__(self):
        return Polynomial(self.ring, {m: -c for m, c in self.terms.items()})

    def __sub__(self, other):
        return self + (-other)

    def __mul__(self, other):
        if not isinstance(other, Polynomial):
            return NotImplemented
        self.ring._check(other)
        out = {}
        for m1, c1 in self.terms.items():
            for m2, c2 in other.terms.items():
                key = tuple(a + b for a, b in zip(m1, m2))
                c = c1 * c2
                s = out.get(key)
                if s is None:
                    if c:
                        out[key] = c
                else:
                    s = s + c
                    if s:
                        out[key] = s
                    else:
                        del out[key]
        return Polynomial(self.ring, out)

    def scale(self, c):
        if not c:
            return Polynomial(self.ring, {})
        return Polynomial(self.ring, {m: v * c for m, v in self.terms.items()})

    def is_homogeneous(self):
        degs = {self.ring.monomial_degree(m) for m in self.terms}
        return len(degs) <= 1

    def multidegree(self):
        """Common degree of all terms; None for the zero polynomial."""
        if not self.terms:
            return None
        degs = {self.ring.monomial_degree(m) for m in self.terms}
        if len(degs) > 1:
            raise ValueError("inhomogeneous polynomial has no multidegree")
        return degs.pop()

    def __str__(self):
        return self.ring.format(self)

    def __repr__(self):
        return f"Polynomial({self.ring.format(self)})"


_FACTOR_RE = re.compile(r"t\[([^\]]+)\](?:\^(\d+))?$")


class PolyRing:
    """The ambient polynomial ring on a simplicial poset, atom-graded."""

    def __init__(self, poset, field=QQ):
        self.poset = poset
        self.field = field
        self.variables = poset.proper_elements
        self.nvars = len(self.variables)
        self._vidx = {x: k for k, x in enumerate(self.variables)}
        self.natoms = len(poset.atoms)
        self._aidx = {a: g for g, a in enumerate(poset.atoms)}
        self._vdeg = tuple(
            tuple(1 if poset.leq(a, x) else 0 for a in poset.atoms)
            for x in self.variables
        )
        self._vrank = tuple(poset.rank_of(x) for x in self.variables)
        self._zero_mon = (0,) * self.nvars

        comp = {}
        for k1 in range(self.nvars):
            for k2 in range(k1 + 1, self.nvars):
                x, y = self.variables[k1], self.variables[k2]
                comp[(k1, k2)] = poset.leq(x, y) or poset.leq(y, x)
        self._comparable = comp

        # rewrite data for each incomparable pair: (meet index or None, join indices)
        rw = {}
        for (k1, k2), comparable in comp.items():
            if comparable:
                continue
            x, y = self.variables[k1], self.variables[k2]
            joins = tuple(self._vidx[z] for z in poset.join_set((x, y)))
            if joins:
                m = poset.meet(x, y)
                meet_idx = None if m == poset.bottom else self._vidx[m]
            else:
                meet_idx = None
            rw[(k1, k2)] = (meet_idx, joins)
        self._rewrite = rw

        self._generators = None
        self._envelopes = {}
        self._covers = {}

    def __repr__(self):
        return f"PolyRing({len(self.variables)} variables over {self.field!r})"

    def _check(self, f):
        if f.ring is not self:
            raise ValueError("polynomial belongs to a different ring")

    # ---------- constructors ----------

    def zero(self):
        return Polynomial(self, {})

    def one(self):
        return Polynomial(self, {self._zero_mon: self.field.one})

    def variable(self, name):
        return self.term(self.field.one, {name: 1})

    def monomial(self, exps):
        return self.term(self.field.one, exps)

    def term(self, coeff, exps):
        vec = [0] * self.nvars
        for name, e in exps.items():
            if name not in self._vidx:
                raise ValueError(f"unknown variable {name!r}")
            if e < 0:
                raise ValueError("negative exponent")
            vec[self._vidx[name]] += e
        if not coeff:
            return self.zero()
        return Polynomial(self, {tuple(vec): coeff})

    def from_int_terms(self, terms):
        """Polynomial from (int coefficient, name->exp dict) pairs."""
        out = self.zero()
        for n, exps in terms:
            out = out + self.term(self.field.from_int(n), exps)
        return out

    # ---------- grading ----------

    def atom_index(self, a):
        return self._aidx[a]

    def variable_degree(self, name):
        """Degree vector of one variable: the indicator of its atoms."""
        if name == self.poset.bottom:
            raise ValueError("the bottom element carries no variable")
        if name not in self._vidx:
            raise ValueError(f"unknown variable {name!r}")
        return self._vdeg[self._vidx[name]]

    def monomial_degree(self, mon):
        deg = [0] * self.natoms
        for k, e in enumerate(mon):
            if e:
                d = self._vdeg[k]
                for g in range(self.natoms):
                    if d[g]:
                        deg[g] += e * d[g]
        return tuple(deg)

    def degree_sum(self):
        """Sum of the degrees of all variables (the canonical shift vector)."""
        total = [0] * self.natoms
        for d in self._vdeg:
            for g in range(self.natoms):
                total[g] += d[g]
        return tuple(total)

    # ---------- defining relations and friends ----------

    def generators(self):
        """Defining relations, one per incomparable variable pair.

        t_x t_y - t_{x^y} * sum of t_z over the join set; the meet factor is
        dropped when the meet is the bottom, and an empty join set leaves the
        bare product.
        """
        if self._generators is None:
            one = self.field.one
            out = []
            for k1 in range(self.nvars):
                for k2 in range(k1 + 1, self.nvars):
                    if self._comparable[(k1, k2)]:
                        continue
                    meet_idx, joins = self._rewrite[(k1, k2)]
                    lead = list(self._zero_mon)
                    lead[k1] += 1
                    lead[k2] += 1
                    terms = {tuple(lead): one}
                    for z in joins:
                        tail = list(self._zero_mon)
                        if meet_idx is not None:
                            tail[meet_idx] += 1
                        tail[z] += 1
                        key = tuple(tail)
                        terms[key] = terms.get(key, self.field.zero) - one
                        if not terms[key]:
                            del terms[key]
                    out.append(Polynomial(self, terms))
            self._generators = tuple(out)
        return self._generators

    def generator_pairs(self):
        """(x, y, relation) triples in the order of generators()."""
        gens = iter(self.generators())
        out = []
        for k1 in range(self.nvars):
            for k2 in range(k1 + 1, self.nvars):
                if not self._comparable[(k1, k2)]:
                    out.append((self.variables[k1], self.variables[k2], next(gens)))
        return tuple(out)

    def prime_generators(self, x):
        """Generators of the graded prime attached to x: the variables not
        under x, plus the defining relations with those variables killed."""
        if x not in self.poset:
            raise ValueError(f"unknown element {x!r}")
        killed = tuple(
            k for k, z in enumerate(self.variables) if not self.poset.leq(z, x)
        )
        kset = set(killed)
        reduced = []
        seen = set()
        for f in self.generators():
            terms = {
                m: c for m, c in f.terms.items() if all(m[k] == 0 for k in kset)
            }
            if terms:
                g = Polynomial(self, terms)
                if g not in seen:
                    seen.add(g)
                    reduced.append(g)
        return tuple(self.variables[k] for k in killed), tuple(reduced)

    def face_projection(self, x, f):
        """Image of f under the quotient onto the face at x: variables not
        under x go to zero, the rest to the product of their atoms."""
        self._check(f)
        poset = self.poset
        out = {}
        for mon, c in f.terms.items():
            vec = [0] * self.nvars
            dead = False
            for k, e in enumerate(mon):
                if not e:
                    continue
                z = self.variables[k]
                if not poset.leq(z, x):
                    dead = True
                    break
                for a in poset.atoms_below(z):
                    vec[self._vidx[a]] += e
            if dead:
                continue
            key = tuple(vec)
            s = out.get(key)
            if s is None:
                out[key] = c
            else:
                s = s + c
                if s:
                    out[key] = s
                else:
                    del out[key]
        return Polynomial(self, out)

    def tilde_of(self, x, z):
        """Straightened variable relative to the ambient element x."""
        if z not in self._vidx:
            raise ValueError(f"unknown variable {z!r}")
        t = self.variable(z)
        if self.poset.leq(z, x) and self.poset.rank_of(z) >= 2:
            return t - self.monomial({a: 1 for a in self.poset.atoms_below(z)})
        return t

    def f_U(self, x, U):
        """Sum of straightened variables over the join set of a set of atoms
        under x; a member of the defining ideal."""
        U = tuple(U)
        ax = set(self.poset.atoms_below(x))
        if len(U) < 2:
            raise ValueError("need at least two atoms")
        if not set(U) <= ax:
            raise ValueError("atoms must lie under the ambient element")
        out = self.zero()
        for z in self.poset.join_set(U):
            out = out + self.tilde_of(x, z)
        return out

    def g_pair(self, x, U, z1, z2):
        """Quadratic ideal member attached to two join-set elements, the
        first below the ambient element and the second not."""
        U = tuple(U)
        js = self.poset.join_set(U)
        if z1 == z2 or z1 not in js or z2 not in js:
            raise ValueError("need two distinct members of the join set")
        if not self.poset.leq(z1, x):
            raise ValueError("first element must lie under the ambient element")
        atom_prod = self.monomial({a: 1 for a in U})
        return self.tilde_of(x, z1) * self.tilde_of(x, z2) + self.tilde_of(x, z2) * atom_prod

    # ---------- straightening normal form ----------

    def is_chain_monomial(self, mon):
        support = [k for k, e in enumerate(mon) if e]
        return all(
            self._comparable[(i, j)]
            for a, i in enumerate(support)
            for j in support[a + 1:]
        )

    def _first_incomparable_pair(self, mon):
        support = [k for k, e in enumerate(mon) if e]
        for a, i in enumerate(support):
            for j in support[a + 1:]:
                if not self._comparable[(i, j)]:
                    return (i, j)
        return None

    def _last_incomparable_pair(self, mon):
        support = [k for k, e in enumerate(mon) if e]
        best = None
        for a, i in enumerate(support):
            for j in support[a + 1:]:
                if not self._comparable[(i, j)]:
                    best = (i, j)
        return best

    def _weight(self, mon):
        # strictly increases at every rewrite (meet/join spread the ranks at
        # fixed atom degree), and is bounded in each multidegree
        return sum(e * r * r for e, r in zip(mon, self._vrank))

    def straighten(self, f, strategy="max-monomial"):
        nf, _ = self.straighten_stats(f, strategy)
        return nf

    def straighten_stats(self, f, strategy="max-monomial"):
        """Normal form onto chain-supported monomials plus the rewrite count.

        Rewrites one incomparable product at a time using the defining
        relations; the result differs from f by an ideal member and is a
        fixed point of the procedure.
        """
        self._check(f)
        if strategy not in ("max-monomial", "min-monomial"):
            raise ValueError(f"unknown strategy {strategy!r}")
        work = dict(f.terms)
        steps = 0
        maxfirst = strategy == "max-monomial"
        find_pair = (
            self._first_incomparable_pair if maxfirst else self._last_incomparable_pair
        )
        while True:
            picked = None
            for mon in sorted(work, reverse=maxfirst):
                pair = find_pair(mon)
                if pair is not None:
                    picked = (mon, pair)
                    break
            if picked is None:
                break
            mon, (k1, k2) = picked
            coeff = work.pop(mon)
            steps += 1
            meet_idx, joins = self._rewrite[(k1, k2)]
            base = list(mon)
            base[k1] -= 1
            base[k2] -= 1
            if meet_idx is not None:
                base[meet_idx] += 1
            w0 = self._weight(mon)
            for z in joins:
                out = list(base)
                out[z] += 1
                key = tuple(out)
                assert self._weight(key) > w0
                s = work.get(key)
                if s is None:
                    work[key] = coeff
                else:
                    s = s + coeff
                    if s:
                        work[key] = s
                    else:
                        del work[key]
        return Polynomial(self, work), steps

    def is_ideal_member(self, f):
        """Membership in the defining ideal, via the straightening normal
        form (chain monomials are a basis of the quotient)."""
        return self.straighten(f).is_zero()

    # ---------- text and JSON ----------

    def parse(self, text):
        """Parse "c * t[name]^e * ..." terms joined by '+' and '-'."""
        s = text.replace("−", "-").strip()
        if not s:
            raise ValueError("empty polynomial text")
        chunks = []
        sign, buf, depth = 1, [], 0
        for ch in s:
            if ch == "[":
                depth += 1
            elif ch == "]":
                depth -= 1
            if depth == 0 and ch in "+-":
                if "".join(buf).strip():
                    chunks.append((sign, "".join(buf)))
                elif chunks:
                    raise ValueError(f"dangling sign in {text!r}")
                sign = 1 if ch == "+" else -1
                buf = []
            else:
                buf.append(ch)
        if not "".join(buf).strip():
            raise ValueError(f"dangling sign in {text!r}")
        chunks.append((sign, "".join(buf)))

        total = {}
        for sign, body in chunks:
            coeff = self.field.one
            vec = [0] * self.nvars
            for factor in body.split("*"):
                factor = factor.strip()
                if not factor:
                    raise ValueError(f"empty factor in {text!r}")
                m = _FACTOR_RE.fullmatch(factor)
                if m:
                    name = m.group(1)
                    if name not in self._vidx:
                        raise ValueError(f"unknown variable {name!r}")
                    vec[self._vidx[name]] += int(m.group(2) or 1)
                else:
                    coeff = coeff * self.field.parse(factor)
            if sign < 0:
                coeff = -coeff
            key = tuple(vec)
            s0 = total.get(key)
            if s0 is None:
                total[key] = coeff
            else:
                s0 = s0 + coeff
                if s0:
                    total[key] = s0
                else:
                    del total[key]
        return Polynomial(self, {m: c for m, c in total.items() if c})

    def _format_monomial(self, mon):
        return "*".join(
            f"t[{self.variables[k]}]^{e}" if e > 1 else f"t[{self.variables[k]}]"
            for k, e in enumerate(mon)
            if e
        )

    def format(self, f):
        self._check(f)
        if not f.terms:
            return "0"
        parts = []
        for mon in sorted(f.terms, reverse=True):
            c = f.terms[mon]
            body = self._format_monomial(mon)
            if self.field.char == 0:
                neg = c < 0
                mag = -c if neg else c
                coeff = self.field.format(mag)
                lead = (coeff + "*" + body) if (body and coeff != "1") else (body or coeff)
                if not parts:
                    parts.append(("-" if neg else "") + lead)
                else:
                    parts.append(("- " if neg else "+ ") + lead)
            else:
                coeff = self.field.format(c)
                lead = (coeff + "*" + body) if (body and coeff != "1") else (body or coeff)
                parts.append(lead if not parts else "+ " + lead)
        return " ".join(parts)

    def poly_to_json(self, f):
        self._check(f)
        return {
            "terms": [
                {
                    "coeff": self.field.format(f.terms[mon]),
                    "monomial": {
                        self.variables[k]: e for k, e in enumerate(mon) if e
                    },
                }
                for mon in sorted(f.terms, reverse=True)
            ]
        }

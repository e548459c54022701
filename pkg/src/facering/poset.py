"""Finite simplicial posets: parsing, validation, joins, meets, cover signs.

A simplicial poset has a least element and every lower interval isomorphic to
a boolean algebra.  Elements are identified by their display names.  The atom
order is the order of first appearance among rank-1 elements in the input,
and every sign and basis convention downstream derives from it, so results
are reproducible bit for bit.  Instances are immutable after construction and
safe for concurrent reads.
"""

from __future__ import annotations

import json
from dataclasses import dataclass
from itertools import combinations


class PosetError(ValueError):
    """Malformed poset description: bad file shape, cycle, missing bottom."""


@dataclass
class ValidationReport:
    """Axiom check outcome; ok holds exactly when violations is empty."""

    ok: bool
    violations: list

    def to_json(self):
        return {
            "ok": self.ok,
            "violations": [
                {"axiom": axiom, "witness": list(witness)}
                for axiom, witness in self.violations
            ],
        }


class SimplicialPoset:
    def __init__(self, names, covers):
        names = [str(x) for x in names]
        if not names:
            raise PosetError("malformed poset: no elements")
        if len(names) != len(set(names)):
            raise PosetError("malformed poset: duplicate element names")
        self.names = tuple(names)
        self._idx = {x: i for i, x in enumerate(self.names)}
        n = len(names)

        lower = [[] for _ in range(n)]
        upper = [[] for _ in range(n)]
        pairs = set()
        for pair in covers:
            try:
                u, l = pair
            except (TypeError, ValueError) as exc:
                raise PosetError(f"malformed cover entry {pair!r}") from exc
            u, l = str(u), str(l)
            if u not in self._idx or l not in self._idx:
                raise PosetError(f"cover mentions unknown element: {pair!r}")
            iu, il = self._idx[u], self._idx[l]
            if iu == il:
                raise PosetError(f"cycle in covers: {u!r} covers itself")
            if (iu, il) not in pairs:
                pairs.add((iu, il))
                lower[iu].append(il)
                upper[il].append(iu)

        # Kahn order, lowest elements first; leftovers mean a cycle.
        indeg = [len(lower[i]) for i in range(n)]
        queue = [i for i in range(n) if indeg[i] == 0]
        topo = []
        while queue:
            i = queue.pop()
            topo.append(i)
            for u in upper[i]:
                indeg[u] -= 1
                if indeg[u] == 0:
                    queue.append(u)
        if len(topo) != n:
            raise PosetError("cycle in covers")

        minima = [i for i in range(n) if not lower[i]]
        if len(minima) != 1:
            names_ = ", ".join(self.names[i] for i in sorted(minima))
            raise PosetError(f"missing bottom (minimal elements: {names_})")
        self._bottom = minima[0]

        below = [None] * n
        for i in topo:
            acc = {i}
            for l in lower[i]:
                acc |= below[l]
            below[i] = frozenset(acc)
        self._below = below
        above = [set() for _ in range(n)]
        for i in range(n):
            for j in below[i]:
                above[j].add(i)
        self._above = [frozenset(s) for s in above]

        rank = [0] * n
        for i in topo:
            if lower[i]:
                rank[i] = 1 + max(rank[l] for l in lower[i])
        self._rank = tuple(rank)

        self._lower = tuple(tuple(sorted(lower[i])) for i in range(n))
        self._upper = tuple(tuple(sorted(upper[i])) for i in range(n))
        self.covers = tuple(
            (self.names[u], self.names[l]) for u, l in sorted(pairs)
        )

        self.atoms = tuple(x for x in self.names if self._rank[self._idx[x]] == 1)
        self._atom_order = {a: k for k, a in enumerate(self.atoms)}
        self._atoms_below = tuple(
            tuple(a for a in self.atoms if self._idx[a] in below[i])
            for i in range(n)
        )

    # ---------- construction ----------

    @classmethod
    def from_json_obj(cls, obj):
        if not isinstance(obj, dict) or "elements" not in obj or "covers" not in obj:
            raise PosetError("malformed poset file: need 'elements' and 'covers' keys")
        if not isinstance(obj["elements"], list) or not isinstance(obj["covers"], list):
            raise PosetError("malformed poset file: 'elements' and 'covers' must be lists")
        return cls(obj["elements"], obj["covers"])

    @classmethod
    def from_json_text(cls, text):
        try:
            obj = json.loads(text)
        except json.JSONDecodeError as exc:
            raise PosetError(f"malformed poset file: {exc}") from exc
        return cls.from_json_obj(obj)

    @classmethod
    def from_file(cls, path):
        with open(path, "r", encoding="utf-8") as fh:
            return cls.from_json_text(fh.read())

    def to_json_obj(self):
        return {"elements": list(self.names), "covers": [list(c) for c in self.covers]}

    # ---------- basic queries ----------

    def __contains__(self, name):
        return name in self._idx

    def __len__(self):
        return len(self.names)

    def __repr__(self):
        return f"SimplicialPoset({len(self.names)} elements, {len(self.atoms)} atoms)"

    @property
    def elements(self):
        return self.names

    @property
    def bottom(self):
        return self.names[self._bottom]

    @property
    def proper_elements(self):
        """All elements except the bottom, in input order."""
        return tuple(x for x in self.names if self._idx[x] != self._bottom)

    @property
    def max_rank(self):
        return max(self._rank)

    def rank_of(self, x):
        return self._rank[self._idx[x]]

    def leq(self, a, b):
        return self._idx[a] in self._below[self._idx[b]]

    def lower_covers(self, x):
        return tuple(self.names[i] for i in self._lower[self._idx[x]])

    def upper_covers(self, x):
        return tuple(self.names[i] for i in self._upper[self._idx[x]])

    def is_cover(self, u, l):
        return self._idx[l] in self._lower[self._idx[u]]

    def atoms_below(self, x):
        """Atoms under x, listed in the global atom order."""
        return self._atoms_below[self._idx[x]]

    # ---------- joins, meets, signs ----------

    def join_set(self, xs):
        """Minimal common upper bounds of a nonempty collection; may be empty."""
        idxs = [self._idx[x] for x in xs]
        if not idxs:
            raise ValueError("join of an empty collection")
        common = frozenset.intersection(*(self._above[i] for i in idxs))
        minimal = [
            u
            for u in common
            if not any(v != u and u in self._above[v] for v in common)
        ]
        return tuple(self.names[i] for i in sorted(minimal))

    def meet(self, a, b):
        """Largest common lower bound, or None when the join set is empty."""
        if not self.join_set((a, b)):
            return None
        lbs = self._below[self._idx[a]] & self._below[self._idx[b]]
        top = max(lbs, key=lambda i: self._rank[i])
        if any(l not in self._below[top] for l in lbs):
            raise PosetError("no largest common lower bound; poset is not simplicial")
        return self.names[top]

    def removed_atom(self, u, l):
        """The unique atom under u that is not under l, for a cover u > l."""
        if not self.is_cover(u, l):
            raise ValueError(f"{u!r} does not cover {l!r}")
        gone = set(self.atoms_below(u)) - set(self.atoms_below(l))
        if len(gone) != 1:
            raise ValueError(f"cover ({u!r}, {l!r}) does not remove a unique atom")
        return gone.pop()

    def incidence_sign(self, u, l):
        """Boundary sign of a cover: (-1)**(position of the removed atom
        among the atoms under u, in global atom order)."""
        removed = self.removed_atom(u, l)
        j = self.atoms_below(u).index(removed)
        return -1 if j % 2 else 1

    # ---------- structure enumeration ----------

    def rank2_intervals(self):
        """All intervals [w, x] of rank difference two with their middles."""
        out = []
        for x in self.names:
            rx = self.rank_of(x)
            for w in self.names:
                if self.rank_of(w) == rx - 2 and self.leq(w, x):
                    mids = tuple(
                        z
                        for z in self.names
                        if self.rank_of(z) == rx - 1
                        and self.leq(w, z)
                        and self.leq(z, x)
                    )
                    out.append((w, x, mids))
        return out

    def saturated_chains(self, top, bot):
        """All saturated chains from top down to bot (inclusive)."""
        if not self.leq(bot, top):
            return []
        if top == bot:
            return [(top,)]
        out = []
        for l in self.lower_covers(top):
            if self.leq(bot, l):
                for ch in self.saturated_chains(l, bot):
                    out.append((top,) + ch)
        return out

    def is_face_poset_of_complex(self):
        """True when every pairwise join set has at most one element."""
        return all(
            len(self.join_set((p, q))) <= 1
            for p, q in combinations(self.names, 2)
        )


def validate_simplicial(poset: SimplicialPoset) -> ValidationReport:
    """Check the defining axioms; each failure carries a witness."""
    violations = []

    for x in poset.elements:
        if not poset.leq(poset.bottom, x):
            violations.append(("unique minimum", (poset.bottom, x)))

    # all maximal chains in a lower interval share the rank as their length
    for u, l in poset.covers:
        if poset.rank_of(u) != poset.rank_of(l) + 1:
            violations.append(("graded covers", (u, l)))

    for x in poset.elements:
        interval = [y for y in poset.elements if poset.leq(y, x)]
        ax = poset.atoms_below(x)
        r = poset.rank_of(x)
        ok = len(ax) == r and len(interval) == 2 ** r
        if ok:
            keys = {y: frozenset(poset.atoms_below(y)) for y in interval}
            ok = len(set(keys.values())) == 2 ** r
        if ok:
            for y in interval:
                for z in interval:
                    if poset.leq(y, z) != (keys[y] <= keys[z]):
                        ok = False
                        break
                if not ok:
                    break
        if not ok:
            violations.append(("boolean lower interval", (x,)))

    for w, x, mids in poset.rank2_intervals():
        if len(mids) != 2:
            violations.append(("two middles in rank-2 intervals", (w, x)))

    return ValidationReport(not violations, violations)

"""Exact coefficient fields: arbitrary-precision rationals and prime fields.

Every scalar in the package is a Fraction or a prime-field residue; there is
no floating point anywhere, so all downstream linear algebra is exact.
"""

from __future__ import annotations

import math
from fractions import Fraction


class FieldError(ValueError):
    pass


class Rationals:
    """Field handle for the rationals; scalars are fractions.Fraction."""

    char = 0
    name = "Q"
    zero = Fraction(0)
    one = Fraction(1)

    def from_int(self, n: int) -> Fraction:
        return Fraction(n)

    def binomial(self, n: int, k: int) -> Fraction:
        return Fraction(math.comb(n, k))

    def parse(self, text: str) -> Fraction:
        try:
            return Fraction(text.strip())
        except (ValueError, ZeroDivisionError) as exc:
            raise FieldError(f"bad rational literal {text!r}") from exc

    def format(self, a) -> str:
        return str(a)

    def __repr__(self):
        return "Q"


class FpElement:
    """Residue class modulo a prime, with field arithmetic."""

    __slots__ = ("val", "p")

    def __init__(self, val: int, p: int):
        self.val = val % p
        self.p = p

    def __add__(self, other):
        return FpElement(self.val + other.val, self.p)

    def __sub__(self, other):
        return FpElement(self.val - other.val, self.p)

    def __neg__(self):
        return FpElement(-self.val, self.p)

    def __mul__(self, other):
        return FpElement(self.val * other.val, self.p)

    def __truediv__(self, other):
        if not other.val:
            raise ZeroDivisionError("division by zero residue")
        return FpElement(self.val * pow(other.val, self.p - 2, self.p), self.p)

    def __eq__(self, other):
        return (
            isinstance(other, FpElement)
            and self.p == other.p
            and self.val == other.val
        )

    def __hash__(self):
        return hash((self.val, self.p))

    def __bool__(self):
        return self.val != 0

    def __repr__(self):
        return str(self.val)


def _is_prime(p: int) -> bool:
    if p < 2:
        return False
    d = 2
    while d * d <= p:
        if p % d == 0:
            return False
        d += 1
    return True


class PrimeField:
    """Field handle for the integers modulo a prime p."""

    def __init__(self, p: int):
        if not isinstance(p, int) or not _is_prime(p):
            raise FieldError(f"{p!r} is not a prime")
        self.p = p
        self.char = p
        self.name = f"F{p}"
        self.zero = FpElement(0, p)
        self.one = FpElement(1, p)

    def from_int(self, n: int) -> FpElement:
        return FpElement(n, self.p)

    def binomial(self, n: int, k: int) -> FpElement:
        return FpElement(math.comb(n, k), self.p)

    def parse(self, text: str) -> FpElement:
        try:
            return FpElement(int(text.strip()), self.p)
        except ValueError as exc:
            raise FieldError(f"bad F{self.p} literal {text!r}") from exc

    def format(self, a) -> str:
        return str(a.val)

    def __repr__(self):
        return self.name


QQ = Rationals()


def field_from_name(name: str, prime: int | None = None):
    """Resolve "Q", "F<p>", or ("Fp", prime) to a field handle."""
    name = name.strip()
    if name in ("Q", "QQ"):
        return QQ
    if name == "Fp":
        if prime is None:
            raise FieldError("field Fp needs an explicit prime")
        return PrimeField(prime)
    if name.startswith("F") and name[1:].isdigit():
        return PrimeField(int(name[1:]))
    raise FieldError(f"unknown field {name!r}")

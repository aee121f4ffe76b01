"""Exact coefficient fields.

Elements are plain Python numbers: residues ``0..p-1`` for a prime field,
``int`` or :class:`fractions.Fraction` for the rationals.  The field object
carries the arithmetic that differs between the two.
"""

from __future__ import annotations

from fractions import Fraction


def is_prime(p: int) -> bool:
    if p < 2:
        return False
    if p % 2 == 0:
        return p == 2
    d = 3
    while d * d <= p:
        if p % d == 0:
            return False
        d += 2
    return True


class PrimeField:
    def __init__(self, p: int):
        if not is_prime(p):
            raise ValueError(f"{p} is not prime")
        self.p = p

    @property
    def tag(self) -> str:
        return f"GF({self.p})"

    def __repr__(self):
        return self.tag

    def __eq__(self, other):
        return isinstance(other, PrimeField) and other.p == self.p

    def __hash__(self):
        return hash(("GF", self.p))

    def __call__(self, x) -> int:
        if isinstance(x, Fraction):
            return x.numerator * pow(x.denominator, -1, self.p) % self.p
        return int(x) % self.p

    def inv(self, x) -> int:
        x = self(x)
        if x == 0:
            raise ZeroDivisionError("inverse of zero")
        return pow(x, -1, self.p)

    def is_zero(self, x) -> bool:
        return self(x) == 0

    def format(self, x) -> str:
        return str(self(x))

    def parse(self, s: str) -> int:
        return self(Fraction(s))


class RationalField:
    tag = "QQ"

    def __repr__(self):
        return self.tag

    def __eq__(self, other):
        return isinstance(other, RationalField)

    def __hash__(self):
        return hash("QQ")

    def __call__(self, x):
        if isinstance(x, Fraction):
            return x.numerator if x.denominator == 1 else x
        if isinstance(x, int):
            return x
        return Fraction(x)

    def inv(self, x) -> Fraction:
        if x == 0:
            raise ZeroDivisionError("inverse of zero")
        return Fraction(1) / x

    def is_zero(self, x) -> bool:
        return x == 0

    def format(self, x) -> str:
        return str(self(x))

    def parse(self, s: str):
        return self(Fraction(s))


QQ = RationalField()


def GF(p: int) -> PrimeField:
    return PrimeField(p)


def field_from_tag(tag: str):
    if tag == "QQ":
        return QQ
    if tag.startswith("GF(") and tag.endswith(")"):
        return PrimeField(int(tag[3:-1]))
    raise ValueError(f"unknown field tag {tag!r}")


def determinant(rows, field) -> object:
    """Determinant by Gaussian elimination over ``field``."""
    a = [[field(x) for x in r] for r in rows]
    size = len(a)
    det = field(1)
    for c in range(size):
        pivot = next((r for r in range(c, size) if not field.is_zero(a[r][c])), None)
        if pivot is None:
            return field(0)
        if pivot != c:
            a[c], a[pivot] = a[pivot], a[c]
            det = field(-det)
        det = field(det * a[c][c])
        inv = field.inv(a[c][c])
        for r in range(c + 1, size):
            f = field(a[r][c] * inv)
            if f:
                a[r] = [field(x - f * y) for x, y in zip(a[r], a[c])]
    return det

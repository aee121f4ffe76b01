"""Sparse multivariate polynomials over an exact field.

Exponent vectors are tuples of length ``nvars``; only nonzero coefficients
are stored.
"""

from __future__ import annotations

import os
from typing import Iterable

Exponent = tuple[int, ...]

DEFAULT_MAX_TERMS = 10**7


class FeasibilityError(RuntimeError):
    pass


def max_terms() -> int:
    """Expansion bound; ``EFL_MAX_TERMS`` overrides the default of 10**7."""
    raw = os.environ.get("EFL_MAX_TERMS")
    return int(raw) if raw else DEFAULT_MAX_TERMS


class SparsePolynomial:
    __slots__ = ("nvars", "field", "terms")

    def __init__(self, nvars: int, field, terms: dict[Exponent, object] | None = None):
        self.nvars = nvars
        self.field = field
        self.terms: dict[Exponent, object] = {}
        for e, c in (terms or {}).items():
            if len(e) != nvars:
                raise ValueError(f"exponent {e} has wrong length")
            c = field(c)
            if c:
                self.terms[tuple(e)] = c

    @classmethod
    def constant(cls, nvars: int, field, c) -> "SparsePolynomial":
        return cls(nvars, field, {(0,) * nvars: c})

    @classmethod
    def variable(cls, nvars: int, field, index: int) -> "SparsePolynomial":
        e = [0] * nvars
        e[index] = 1
        return cls(nvars, field, {tuple(e): 1})

    def _check(self, other):
        if self.nvars != other.nvars or self.field != other.field:
            raise ValueError("polynomials live in different rings")

    def _coerce(self, other) -> "SparsePolynomial":
        if isinstance(other, SparsePolynomial):
            self._check(other)
            return other
        return SparsePolynomial.constant(self.nvars, self.field, other)

    def __add__(self, other):
        other = self._coerce(other)
        out = dict(self.terms)
        f = self.field
        for e, c in other.terms.items():
            s = f(out.get(e, 0) + c)
            if s:
                out[e] = s
            else:
                out.pop(e, None)
        return self._raw(out)

    __radd__ = __add__

    def __neg__(self):
        f = self.field
        return self._raw({e: f(-c) for e, c in self.terms.items()})

    def __sub__(self, other):
        return self + (-self._coerce(other))

    def __rsub__(self, other):
        return self._coerce(other) - self

    def _raw(self, terms) -> "SparsePolynomial":
        p = SparsePolynomial.__new__(SparsePolynomial)
        p.nvars, p.field, p.terms = self.nvars, self.field, terms
        return p

    def mul(self, other, limit: int | None = None) -> "SparsePolynomial":
        other = self._coerce(other)
        work = len(self.terms) * len(other.terms)
        if limit is not None and work > limit:
            raise FeasibilityError(f"product needs {work} term multiplications, bound is {limit}")
        f = self.field
        out: dict[Exponent, object] = {}
        for e1, c1 in self.terms.items():
            for e2, c2 in other.terms.items():
                e = tuple(a + b for a, b in zip(e1, e2))
                out[e] = out.get(e, 0) + c1 * c2
        return self._raw({e: c for e, c in ((e, f(c)) for e, c in out.items()) if c})

    def __mul__(self, other):
        return self.mul(other)

    __rmul__ = __mul__

    def __pow__(self, k: int):
        if k < 0:
            raise ValueError("negative power")
        result = SparsePolynomial.constant(self.nvars, self.field, 1)
        base = self
        while k:
            if k & 1:
                result = result * base
            k >>= 1
            if k:
                base = base * base
        return result

    def __eq__(self, other):
        if not isinstance(other, SparsePolynomial):
            return NotImplemented
        return self.nvars == other.nvars and self.field == other.field and self.terms == other.terms

    def __len__(self):
        return len(self.terms)

    def __repr__(self):
        return f"SparsePolynomial({len(self.terms)} terms over {self.field!r})"

    def coefficient(self, e: Iterable[int]):
        return self.terms.get(tuple(e), self.field(0))

    def total_degree(self) -> int:
        return max((sum(e) for e in self.terms), default=-1)

    def top_terms(self) -> dict[Exponent, object]:
        d = self.total_degree()
        return {e: c for e, c in self.terms.items() if sum(e) == d}

    def evaluate(self, point) -> object:
        f = self.field
        total = 0
        for e, c in self.terms.items():
            term = c
            for x, k in zip(point, e):
                if k:
                    term = term * x**k
            total += term
        return f(total)

    def sorted_terms(self) -> list[tuple[Exponent, object]]:
        """Terms in graded lexicographic order."""
        return sorted(self.terms.items(), key=lambda t: (sum(t[0]), t[0]))

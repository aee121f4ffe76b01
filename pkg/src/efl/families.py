"""The coloring polynomials P1 and P2 of an auxiliary graph.

Variables are the clique vertices, flattened row-major: ``x[i*n + j]`` is
the variable of v_ij.  P1 multiplies the clique Vandermonde factors Q_i by
``(x_u - x_v)**(n-1) - 1`` for every tree edge; P2 multiplies them by the
star products ``prod_{t != l} (x_u - x_{k,t})``.
"""

from __future__ import annotations

from functools import lru_cache
from math import comb
from typing import Callable, Mapping, Sequence

from .auxgraph import AuxGraph
from .fields import QQ, PrimeField, determinant, is_prime
from .polynomial import SparsePolynomial, max_terms

__all__ = [
    "poly_kind",
    "default_field",
    "flatten_point",
    "make_evaluator",
    "eval_P",
    "expand_P",
    "vandermonde_check",
]


def poly_kind(kind: str) -> str:
    k = kind.upper()
    if k in ("P1", "G1"):
        return "P1"
    if k in ("P2", "G2"):
        return "P2"
    raise ValueError(f"unknown polynomial kind {kind!r}")


def default_field(kind: str, n: int):
    """GF(n) for P1 (n must be prime), the rationals for P2."""
    if poly_kind(kind) == "P1":
        if not is_prime(n):
            raise ValueError(f"P1 is defined over GF(n) and needs prime n, got n={n}")
        return PrimeField(n)
    return QQ


def flatten_point(n: int, point) -> tuple:
    """Accept a flat sequence of n*n values, an n-by-n nested sequence, or a {(i, j): value} map."""
    if isinstance(point, Mapping):
        try:
            return tuple(point[(i, j)] for i in range(n) for j in range(n))
        except KeyError as exc:
            raise ValueError(f"point is missing variable {exc.args[0]}") from None
    point = list(point)
    if len(point) == n and all(isinstance(r, Sequence) for r in point):
        point = [x for r in point for x in r]
    if len(point) != n * n:
        raise ValueError(f"point has {len(point)} values, need {n * n}")
    return tuple(point)


def _factors(aux: AuxGraph, kind: str):
    """Index data for the cross-clique factors: one (u, v, leaves) per tree edge."""
    n = aux.n
    out = []
    for (i, j), (k, l) in aux.tree_edges:
        u = i * n + j
        v = k * n + l
        leaves = tuple(k * n + t for t in range(n) if t != l)
        out.append((u, v, leaves))
    return out


def make_evaluator(kind: str, aux: AuxGraph, field=None, cache: bool = False) -> Callable[[tuple], object]:
    """Fast evaluator taking a flat tuple of field elements."""
    kind = poly_kind(kind)
    n = aux.n
    field = field if field is not None else default_field(kind, n)
    pairs = [(i * n + a, i * n + b) for i in range(n) for a in range(n) for b in range(a + 1, n)]
    cross = _factors(aux, kind)

    def evaluate(x):
        acc = 1
        for a, b in pairs:
            d = x[a] - x[b]
            if d == 0:
                return field(0)
            acc *= d
        if kind == "P1":
            for u, v, _ in cross:
                acc *= (x[u] - x[v]) ** (n - 1) - 1
        else:
            for u, _, leaves in cross:
                xu = x[u]
                for t in leaves:
                    acc *= xu - x[t]
        return field(acc)

    if cache:
        return lru_cache(maxsize=None)(evaluate)
    return evaluate


def eval_P(kind: str, aux: AuxGraph, point, field=None):
    kind = poly_kind(kind)
    field = field if field is not None else default_field(kind, aux.n)
    x = tuple(field(v) for v in flatten_point(aux.n, point))
    return make_evaluator(kind, aux, field)(x)


def expand_P(kind: str, aux: AuxGraph, field=None, limit: int | None = None) -> SparsePolynomial:
    """Fully expanded P1 (over GF(n)) or P2 (integer coefficients over the rationals).

    Raises :class:`FeasibilityError` when a single product would need more
    than ``limit`` term multiplications (default from ``EFL_MAX_TERMS``).
    """
    kind = poly_kind(kind)
    n = aux.n
    field = field if field is not None else default_field(kind, n)
    limit = max_terms() if limit is None else limit
    nv = n * n

    def var(k):
        return SparsePolynomial.variable(nv, field, k)

    result = SparsePolynomial.constant(nv, field, 1)
    for i in range(n):
        for a in range(n):
            for b in range(a + 1, n):
                result = result.mul(var(i * n + a) - var(i * n + b), limit)
    for u, v, leaves in _factors(aux, kind):
        if kind == "P1":
            factor = (var(u) - var(v)) ** (n - 1) - 1
            result = result.mul(factor, limit)
        else:
            for t in leaves:
                result = result.mul(var(u) - var(t), limit)
    return result


def vandermonde_check(n: int, field, point: Sequence) -> bool:
    """(-1)**C(n,2) * prod_{j<j'} (x_j - x_j') equals det[x_j**k]."""
    xs = [field(x) for x in point]
    if len(xs) != n:
        raise ValueError(f"need {n} values")
    lhs = field(-1 if comb(n, 2) % 2 else 1)
    for a in range(n):
        for b in range(a + 1, n):
            lhs = field(lhs * (xs[a] - xs[b]))
    rhs = determinant([[x**k for k in range(n)] for x in xs], field)
    return field(lhs - rhs) == 0

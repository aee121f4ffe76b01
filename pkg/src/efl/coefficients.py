"""Three independent routes to a monomial coefficient of P1 / P2.

* expansion: look the monomial up in the expanded polynomial;
* orientations: signed count of orientations of the auxiliary graph whose
  in-degree vector equals the exponent vector (maximal degree only);
* formula: weighted sum of evaluations over a product grid.

Also here: Vandermonde-completable identifier monomials and the orientation
count used for G1 when n is prime.
"""

from __future__ import annotations

import random
from fractions import Fraction
from itertools import permutations, product
from math import comb, lcm
from typing import Callable, Iterator, Sequence

from .auxgraph import AuxGraph
from .fields import QQ, PrimeField, is_prime
from .orientation import clique_completable
from .polynomial import SparsePolynomial

__all__ = [
    "as_exponent",
    "exponent_to_json",
    "exponent_from_json",
    "coefficient_by_expansion",
    "coefficient_by_orientations",
    "coefficient_by_formula",
    "default_grid",
    "maximal_bounded_targets",
    "vc_criterion",
    "enumerate_vc_monomials",
    "sample_vc_monomials",
    "completions",
    "prime_orientation_count",
]


def as_exponent(n: int, target) -> tuple[int, ...]:
    """Normalize a flat tuple, an n-by-n nested list, or a {(i, j): e} map."""
    if isinstance(target, dict):
        out = [0] * (n * n)
        for (i, j), e in target.items():
            out[i * n + j] = int(e)
        return tuple(out)
    target = list(target)
    if len(target) == n and all(isinstance(r, (list, tuple)) for r in target):
        target = [x for r in target for x in r]
    if len(target) != n * n:
        raise ValueError(f"exponent vector needs {n * n} entries")
    if any(e < 0 for e in target):
        raise ValueError("negative exponent")
    return tuple(int(e) for e in target)


def exponent_to_json(n: int, e) -> dict[str, int]:
    return {f"({k // n},{k % n})": x for k, x in enumerate(e) if x}


def exponent_from_json(n: int, data: dict[str, int]) -> tuple[int, ...]:
    out = [0] * (n * n)
    for key, x in data.items():
        i, j = (int(s) for s in key.strip("()").split(","))
        out[i * n + j] = int(x)
    return tuple(out)


def coefficient_by_expansion(P: SparsePolynomial, target) -> object:
    return P.coefficient(target)


# --- signed orientation enumeration ------------------------------------------

def _units(aux: AuxGraph):
    """Edge bundles as (u, v, multiplicity), flat vertex indices, u the smaller endpoint."""
    n = aux.n
    flat = lambda c: c[0] * n + c[1]  # noqa: E731
    units = [(flat(u), flat(v), 1) for u, v in aux.clique_edges()]
    units += [(flat(u), flat(v), m) for u, v, m in aux.identifier_edges]
    # group bundles touching low-index vertices first so those close early
    units.sort(key=lambda t: (t[0], t[1]))
    return units


def _signed_count(units, need: list[int]) -> int:
    """Sum over orientations of ``units`` realizing in-degrees ``need`` of their signs.

    A bundle of multiplicity m with a copies headed at the smaller endpoint
    contributes C(m, a) orientations of sign (-1)**(m - a).
    """
    nv = len(need)
    rem = [0] * nv
    for u, v, m in units:
        rem[u] += m
        rem[v] += m
    if any(x < 0 or x > r for x, r in zip(need, rem)):
        return 0
    if sum(need) != sum(m for _, _, m in units):
        return 0
    need = list(need)

    def dfs(idx: int) -> int:
        if idx == len(units):
            return 1
        u, v, m = units[idx]
        rem[u] -= m
        rem[v] -= m
        total = 0
        # a copies to u, m - a to v
        lo = max(0, need[u] - rem[u], m - need[v])
        hi = min(m, need[u], m - (need[v] - rem[v]))
        for a in range(lo, hi + 1):
            need[u] -= a
            need[v] -= m - a
            sub = dfs(idx + 1)
            if sub:
                sign = -1 if (m - a) % 2 else 1
                total += sign * comb(m, a) * sub
            need[u] += a
            need[v] += m - a
        rem[u] += m
        rem[v] += m
        return total

    return dfs(0)


def coefficient_by_orientations(aux: AuxGraph, target, field=None):
    """Signed count of orientations of all of aux with in-degree vector ``target``.

    Only maximal targets (total = number of edge instances) are supported.
    Returns an exact integer, reduced into ``field`` when one is given.
    """
    e = as_exponent(aux.n, target)
    total = aux.edge_count()
    if sum(e) != total:
        raise ValueError(
            f"target has degree {sum(e)}; only maximal targets of degree {total} are supported"
        )
    value = _signed_count(_units(aux), list(e))
    return field(value) if field is not None else value


# --- coefficient formula ----------------------------------------------------

def default_grid(degrees: Sequence[int], field=None) -> list[list]:
    """C_k = {0, 1, ..., d_k}."""
    field = field or QQ
    return [[field(c) for c in range(d + 1)] for d in degrees]


def _weights(cs: list, field) -> list:
    out = []
    for a, c in enumerate(cs):
        d = 1
        for b, c2 in enumerate(cs):
            if a != b:
                d = d * (c - c2)
        if d == 0:
            raise ZeroDivisionError("grid set repeats an element")
        out.append(field.inv(d))
    return out


def coefficient_by_formula(evaluator: Callable[[tuple], object], degrees: Sequence[int], grid: Sequence[Sequence], field=None, integral: bool = False):
    """Coefficient of prod x_k**d_k via sum_{c in grid} P(c) / prod_k phi_k'(c_k).

    Valid only when deg P <= sum(degrees); that precondition is the
    caller's.  ``evaluator`` takes a flat tuple of field elements.  With
    ``integral`` set (integer-coefficient P over the rationals) a
    non-integer result raises ArithmeticError.
    """
    field = field or QQ
    degrees = list(degrees)
    grid = [[field(c) for c in cs] for cs in grid]
    if len(grid) != len(degrees):
        raise ValueError("grid and degree vector have different lengths")
    for k, (d, cs) in enumerate(zip(degrees, grid)):
        if len(cs) != d + 1:
            raise ValueError(f"grid set {k} has {len(cs)} elements, need {d + 1}")
    weights = [_weights(cs, field) for cs in grid]
    denom = 1
    if isinstance(field, PrimeField):
        int_weights = weights
    else:
        int_weights = []
        for ws in weights:
            scale = lcm(*(Fraction(w).denominator for w in ws))
            int_weights.append([int(w * scale) for w in ws])
            denom *= scale
    values = [evaluator(pt) for pt in product(*grid)]
    # contract the value tensor one axis at a time, last axis first
    for ws in reversed(int_weights):
        s = len(ws)
        values = [
            sum(values[b + t] * ws[t] for t in range(s))
            for b in range(0, len(values), s)
        ]
        if isinstance(field, PrimeField):
            values = [field(v) for v in values]
    (total,) = values
    if isinstance(field, PrimeField):
        return field(total)
    value = Fraction(total, denom)
    if integral and value.denominator != 1:
        raise ArithmeticError(f"coefficient {value} of an integer polynomial is not integral")
    return field(value)


# --- targets and Vandermonde-completable monomials -----------------------------

def maximal_bounded_targets(aux: AuxGraph) -> Iterator[tuple[int, ...]]:
    """Every exponent vector with entries <= n-1 and total = deg P, in increasing lexicographic order."""
    n = aux.n
    nv = n * n
    total = aux.edge_count()
    deficit = nv * (n - 1) - total
    if deficit < 0:
        return

    def rec(k, left):
        if k == nv:
            if left == 0:
                yield ()
            return
        # entry n-1-s where s is this slot's share of the deficit
        for s in range(min(n - 1, left), -1, -1):
            if left - s > (nv - k - 1) * (n - 1):
                continue
            for rest in rec(k + 1, left - s):
                yield (n - 1 - s,) + rest

    yield from rec(0, deficit)


def vc_criterion(beta, n: int) -> bool:
    """Each clique row, sorted decreasingly, stays below n-1, n-2, ..., 0."""
    return all(clique_completable(beta[i * n:(i + 1) * n], n) for i in range(n))


def _identifier_units(aux: AuxGraph):
    n = aux.n
    return [
        (u[0] * n + u[1], v[0] * n + v[1], m) for u, v, m in aux.identifier_edges
    ]


def enumerate_vc_monomials(aux: AuxGraph) -> list[tuple[int, ...]]:
    """Distinct identifier in-degree profiles passing the completability criterion, sorted."""
    n = aux.n
    units = _identifier_units(aux)
    beta = [0] * (n * n)
    found: set[tuple[int, ...]] = set()

    def row_ok(c):
        i = c // n
        return clique_completable(beta[i * n:(i + 1) * n], n)

    def dfs(idx):
        if idx == len(units):
            found.add(tuple(beta))
            return
        u, v, m = units[idx]
        for a in range(m + 1):
            beta[u] += a
            beta[v] += m - a
            if row_ok(u) and row_ok(v):
                dfs(idx + 1)
            beta[u] -= a
            beta[v] -= m - a

    dfs(0)
    return sorted(found)


def sample_vc_monomials(aux: AuxGraph, count: int, rng: random.Random, attempts: int = 200_000) -> list[tuple[int, ...]]:
    """Up to ``count`` distinct VC profiles from uniformly random bundle splits."""
    n = aux.n
    units = _identifier_units(aux)
    found: dict[tuple[int, ...], None] = {}
    for _ in range(attempts):
        if len(found) >= count:
            break
        beta = [0] * (n * n)
        for u, v, m in units:
            a = rng.randint(0, m)
            beta[u] += a
            beta[v] += m - a
        if vc_criterion(beta, n):
            found.setdefault(tuple(beta))
    return list(found)


def completions(beta, n: int) -> list[tuple[int, ...]]:
    """All beta + sigma with sigma a per-clique permutation of 0..n-1 and entries <= n-1."""
    rows = []
    for i in range(n):
        row = beta[i * n:(i + 1) * n]
        rows.append([
            tuple(b + s for b, s in zip(row, p))
            for p in permutations(range(n))
            if all(b + s <= n - 1 for b, s in zip(row, p))
        ])
    return sorted({sum(choice, ()) for choice in product(*rows)})


def prime_orientation_count(aux: AuxGraph, beta, p: int) -> tuple[int, bool, bool]:
    """Count identifier orientations of G1 realizing ``beta`` and inspect their signs.

    Returns ``(count, all_same_sign, count % p != 0)``.
    """
    if aux.kind != "G1":
        raise ValueError("prime_orientation_count needs a G1 auxiliary graph")
    n = aux.n
    if not is_prime(p) or p != n:
        raise ValueError(f"needs p = n prime, got p={p}, n={n}")
    beta = as_exponent(n, beta)
    units = _identifier_units(aux)
    need = list(beta)
    signs: set[int] = set()
    count = 0

    def dfs(idx, mult, parity):
        nonlocal count
        if idx == len(units):
            if not any(need):
                count += mult
                signs.add(-1 if parity % 2 else 1)
            return
        u, v, m = units[idx]
        for a in range(m + 1):
            if a > need[u] or m - a > need[v]:
                continue
            need[u] -= a
            need[v] -= m - a
            dfs(idx + 1, mult * comb(m, a), parity + (m - a))
            need[u] += a
            need[v] += m - a

    dfs(0, 1, 0)
    return count, len(signs) <= 1, count % p != 0

"""Proper colorings: the brute-force oracle, decoding from polynomial points,
non-vanishing search, and extension over stripped degree-1 vertices."""

from __future__ import annotations

import json

from .auxgraph import AuxGraph
from .families import default_field, flatten_point, make_evaluator, poly_kind
from .hypergraph import HypergraphError, LinearHypergraph

__all__ = [
    "ColoringRejected",
    "verify_coloring",
    "brute_force_coloring",
    "coloring_from_point",
    "nonvanishing_search",
    "extend_coloring",
    "coloring_to_json",
    "coloring_from_json",
]

Coloring = dict[str, int]


class ColoringRejected(ValueError):
    """A grid point that does not encode a proper coloring; ``prop`` is "P1" or "P2"."""

    def __init__(self, prop: str, detail: str):
        self.prop = prop
        super().__init__(f"({prop}) {detail}")


def verify_coloring(H: LinearHypergraph, c: Coloring) -> bool:
    missing = [v for v in H.vertices if v not in c]
    if missing:
        raise ValueError(f"coloring is partial, missing {missing[:5]}")
    for e in H.edges:
        colors = [c[H.vertices[v]] for v in e]
        if len(set(colors)) != len(colors):
            return False
    return True


def brute_force_coloring(H: LinearHypergraph, k: int) -> Coloring | None:
    """First proper k-coloring in (vertex order, ascending color) backtracking, or None."""
    nv = len(H.vertices)
    nbrs = [set() for _ in range(nv)]
    for e in H.edges:
        for v in e:
            nbrs[v].update(w for w in e if w != v)
    # only earlier vertices constrain the current choice
    before = [sorted(w for w in nbrs[v] if w < v) for v in range(nv)]
    color = [-1] * nv
    v = 0
    while 0 <= v < nv:
        c = color[v] + 1
        used = {color[w] for w in before[v]}
        while c < k and c in used:
            c += 1
        if c < k:
            color[v] = c
            v += 1
        else:
            color[v] = -1
            v -= 1
    if v < 0:
        return None
    return dict(zip(H.vertices, color))


def _decode(aux: AuxGraph, x, H: LinearHypergraph | None) -> Coloring:
    n = aux.n
    out: dict[int, int] = {}
    for i in range(n):
        for j in range(n):
            out.setdefault(aux.labels[i][j], int(x[i * n + j]))
    if H is not None:
        return {H.vertices[v]: c for v, c in sorted(out.items())}
    return {str(v): c for v, c in sorted(out.items())}


def coloring_from_point(aux: AuxGraph, point, kind: str, H: LinearHypergraph | None = None) -> Coloring:
    """Decode a nonvanishing grid point into a coloring of the hypergraph.

    Keys are vertex names when ``H`` is given, otherwise vertex indices as
    strings.  Raises :class:`ColoringRejected` naming the violated property
    when P vanishes at the point.
    """
    n = aux.n
    field = default_field(kind, n)
    x = tuple(field(v) for v in flatten_point(n, point))
    value = make_evaluator(kind, aux, field)(x)
    if value == 0:
        for i in range(n):
            row = x[i * n:(i + 1) * n]
            if len(set(row)) != n:
                raise ColoringRejected("P1", f"clique {i} repeats a color")
        # cliques are rainbow, so a vanishing cross factor means a mismatched copy
        for (i, j), (k, l) in aux.tree_edges:
            if x[i * n + j] != x[k * n + l]:
                raise ColoringRejected("P2", f"copies ({i},{j}) and ({k},{l}) differ")
        raise ColoringRejected("P2", "polynomial vanishes")
    return _decode(aux, x, H)


def nonvanishing_search(aux: AuxGraph, kind: str, target=None) -> tuple | None:
    """Find a point of {0..n-1}^(n*n) where P does not vanish.

    Backtracks over variables in row-major order, pruning on repeated values
    inside a clique only.  ``target`` documents the monomial whose nonzero
    coefficient guarantees success; it does not steer the search.
    """
    kind = poly_kind(kind)
    n = aux.n
    field = default_field(kind, n)
    evaluate = make_evaluator(kind, aux, field)
    x = [0] * (n * n)
    values = [field(c) for c in range(n)]

    def rec(k):
        if k == n * n:
            pt = tuple(x)
            return pt if evaluate(pt) != 0 else None
        i, j = divmod(k, n)
        taken = set(x[i * n:i * n + j])
        for c in values:
            if c in taken:
                continue
            x[k] = c
            found = rec(k + 1)
            if found is not None:
                return found
        return None

    return rec(0)


def extend_coloring(H: LinearHypergraph, derived: LinearHypergraph, c: Coloring, n: int) -> Coloring:
    """Color the vertices stripped from H greedily with the smallest color free in their edge."""
    if any(len(e) > n for e in H.edges):
        raise HypergraphError(f"some edge of H is larger than n={n}")
    if any(not 0 <= c[v] < n for v in derived.vertices):
        raise ValueError("derived coloring uses colors outside 0..n-1")
    if not verify_coloring(derived, c):
        raise ValueError("coloring of the derived hypergraph is not proper")
    out = dict(c)
    for e in H.edges:
        for v in e:
            name = H.vertices[v]
            if name in out:
                continue
            used = {out[H.vertices[w]] for w in e if H.vertices[w] in out}
            free = next((k for k in range(n) if k not in used), None)
            if free is None:
                raise HypergraphError(f"no free color for {name!r}")
            out[name] = free
    return {v: out[v] for v in H.vertices}


def coloring_to_json(c: Coloring, verified: bool) -> dict:
    return {"coloring": {v: str(k) for v, k in c.items()}, "verified": verified}


def coloring_from_json(data: dict | str) -> Coloring:
    if isinstance(data, str):
        data = json.loads(data)
    return {v: int(k) for v, k in data["coloring"].items()}

"""Orientations of auxiliary graphs and the constructive orientation algorithms.

An edge instance is ``(u, v, copy)`` with ``u < v``; an orientation maps
instances to their head.  The sign counts instances whose head is the larger
endpoint: the later position inside a clique, or the higher clique across
cliques.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from itertools import permutations

from .auxgraph import AuxGraph, CliqueVertex, build_aux, default_spanning_trees
from .hypergraph import LinearHypergraph

__all__ = [
    "OrientationError",
    "Orientation",
    "s_offset",
    "orient_tree_multigraph",
    "g1_targets",
    "orient_G1",
    "orient_G2_pathlike",
    "is_vandermonde_completable",
    "completable_by_permutation",
    "complete_orientation",
    "sign_of",
    "clique_completable",
]

Instance = tuple[CliqueVertex, CliqueVertex, int]


class OrientationError(ValueError):
    pass


@dataclass
class Orientation:
    aux: AuxGraph
    heads: dict[Instance, CliqueVertex] = field(default_factory=dict)

    def in_degrees(self) -> list[list[int]]:
        n = self.aux.n
        deg = [[0] * n for _ in range(n)]
        for (u, v, _), h in self.heads.items():
            if h != u and h != v:
                raise OrientationError(f"head {h} is not an endpoint of {u}-{v}")
            deg[h[0]][h[1]] += 1
        return deg

    def to_json(self) -> list[dict]:
        return [
            {"u": list(u), "v": list(v), "copy": c, "head": list(h)}
            for (u, v, c), h in sorted(self.heads.items())
        ]

    @classmethod
    def from_json(cls, aux: AuxGraph, data: list[dict]) -> "Orientation":
        heads = {
            (tuple(d["u"]), tuple(d["v"]), int(d["copy"])): tuple(d["head"]) for d in data
        }
        return cls(aux, heads)


def s_offset(a: int, b: int, n: int) -> int:
    """Cyclic offset of clique a behind clique b; 1-based indices, result in [1, n-1]."""
    if a == b:
        raise ValueError("s_offset needs distinct cliques")
    if not (1 <= a <= n and 1 <= b <= n):
        raise ValueError(f"clique indices must lie in 1..{n}")
    return a - b if a > b else n + a - b


def orient_tree_multigraph(tree, alphas: dict, n: int) -> dict:
    """Orient n-1 parallel copies of each tree edge so node v gets in-degree ``alphas[v]``.

    Returns ``{(u, w): a}`` with a the number of copies headed at u, for every
    tree edge ``(u, w)`` exactly as given.  Leaves are peeled smallest first.
    """
    tree = [tuple(e) for e in tree]
    nodes = set(alphas)
    k = len(nodes)
    for u, w in tree:
        if u not in nodes or w not in nodes:
            raise OrientationError(f"tree edge {u}-{w} leaves the node set")
    if len(tree) != max(k - 1, 0):
        raise OrientationError(f"{len(tree)} edges on {k} nodes is not a tree")
    if any(a > n - 1 for a in alphas.values()):
        raise OrientationError(f"some target exceeds n-1={n - 1}")
    need = (k - 1) * (n - 1) if k else 0
    if sum(alphas.values()) != need:
        raise OrientationError(f"targets sum to {sum(alphas.values())}, need {need}")

    adj: dict = {v: set() for v in nodes}
    for u, w in tree:
        adj[u].add(w)
        adj[w].add(u)
    edge_set = set(tree)
    remaining = dict(alphas)
    out = {}
    alive = set(nodes)
    while len(alive) > 1:
        leaves = sorted(v for v in alive if len(adj[v]) == 1)
        if not leaves:
            raise OrientationError("edge list is not a tree")
        w = leaves[0]
        (u,) = adj[w]
        aw = remaining[w]
        if aw < 0:
            raise OrientationError("targets cannot be met")
        key = (u, w) if (u, w) in edge_set else (w, u)
        out[key] = aw if key[0] == w else n - 1 - aw
        remaining[u] -= n - 1 - aw
        adj[u].discard(w)
        alive.discard(w)
    if alive and remaining[next(iter(alive))] != 0:
        raise OrientationError("targets cannot be met")
    return out


def g1_targets(n: int, cliques: list[int]) -> list[int]:
    """In-degree targets for the copies of one vertex lying in increasing ``cliques`` (0-based).

    The cyclic offsets s(i_{j-1}, i_j) overshoot the required total by k-1,
    which is taken off the first k-1 targets.
    """
    k = len(cliques)
    raw = [s_offset(cliques[j - 1] + 1, cliques[j] + 1, n) for j in range(k)]
    return [t - 1 if j < k - 1 else t for j, t in enumerate(raw)]


def _expand_bundles(aux: AuxGraph, splits: dict) -> dict[Instance, CliqueVertex]:
    """Turn per-edge split counts into heads: the first ``a`` copies go to u."""
    heads = {}
    mult = {(u, v): m for u, v, m in aux.identifier_edges}
    for (u, v), a in splits.items():
        for c in range(mult[(u, v)]):
            heads[(u, v, c)] = u if c < a else v
    return heads


def orient_G1(aux: AuxGraph) -> Orientation:
    """Vandermonde-completable orientation of the identifier edges of G1."""
    if aux.kind != "G1":
        raise OrientationError("orient_G1 needs a G1 auxiliary graph")
    n = aux.n
    groups: dict[int, list[CliqueVertex]] = {}
    for i, row in enumerate(aux.labels):
        for j, v in enumerate(row):
            groups.setdefault(v, []).append((i, j))
    by_label: dict[int, list] = {}
    for u, w in aux.tree_edges:
        by_label.setdefault(aux.label(u), []).append((u, w))
    splits = {}
    for v, edges in sorted(by_label.items()):
        cs = sorted(groups[v])
        alphas = dict(zip(cs, g1_targets(n, [c[0] for c in cs])))
        splits.update(orient_tree_multigraph(edges, alphas, n))
    return Orientation(aux, _expand_bundles(aux, splits))


def _private_vertex(members: list[int], H: LinearHypergraph, edge: int, current: list[int]) -> int:
    """Largest position in ``members`` whose vertex lies in no other current edge."""
    for j in reversed(members):
        v = H.edges[edge][j]
        if not any(v in H.edges[k] for k in current if k != edge):
            return j
    raise OrientationError(f"edge {edge} has no private vertex")


def orient_G2_pathlike(H: LinearHypergraph) -> tuple[AuxGraph, Orientation]:
    """Build the path-like G2 and orient its identifier edges level by level.

    At level L the first remaining edge plays the role of F_0, every later
    edge drops one private vertex into S, and stars are oriented by the
    source / S rule; the remaining stars belong to the next level.
    """
    aux = build_aux(H, default_spanning_trees(H), "G2")
    n = aux.n
    # a source is the lower endpoint of a tree edge
    sources = {u for u, _ in aux.tree_edges}
    remaining = {i: list(range(n)) for i in range(n)}
    heads: dict[Instance, CliqueVertex] = {}
    star_edges = {(u, v): (u, v, 0) for u, v, _ in aux.identifier_edges}
    for level in range(n):
        current = list(range(level, n))
        private = {}
        for i in current[1:]:
            j = _private_vertex(remaining[i], H, i, current)
            private[i] = (i, j)
        s_set = set(private.values())
        for (u, v), inst in star_edges.items():
            if inst in heads:
                continue
            if u[0] == level:
                if v[1] not in remaining[v[0]]:
                    continue
                heads[inst] = u if (v in sources or v in s_set) else v
            elif v in s_set and u[0] > level:
                heads[inst] = u
        for i, (_, j) in private.items():
            remaining[i].remove(j)
    if len(heads) != len(star_edges):
        raise OrientationError("path-like construction left identifier edges unoriented")
    return aux, Orientation(aux, heads)


def clique_completable(beta, n: int) -> bool:
    # largest in-degree gets tournament in-degree 0, next gets 1, ...
    return all(b + r <= n - 1 for r, b in enumerate(sorted(beta, reverse=True)))


def is_vandermonde_completable(aux: AuxGraph, o: Orientation) -> bool:
    """Per clique: at most j vertices have identifier in-degree >= n-j, for 0 <= j <= n."""
    return all(clique_completable(row, aux.n) for row in o.in_degrees())


def completable_by_permutation(beta: list[int], n: int) -> bool:
    """Brute-force oracle: some permutation sigma of 0..n-1 keeps beta + sigma <= n-1."""
    return any(all(b + s <= n - 1 for b, s in zip(beta, p)) for p in permutations(range(n)))


def _tournament_ranks(beta: list[int]) -> list[int]:
    order = sorted(range(len(beta)), key=lambda j: (-beta[j], j))
    ranks = [0] * len(beta)
    for r, j in enumerate(order):
        ranks[j] = r
    return ranks


def complete_orientation(aux: AuxGraph, o: Orientation) -> Orientation:
    """Add a transitive tournament to every clique keeping all in-degrees <= n-1."""
    if not is_vandermonde_completable(aux, o):
        raise OrientationError("identifier orientation is not Vandermonde-completable")
    heads = dict(o.heads)
    for i, row in enumerate(o.in_degrees()):
        ranks = _tournament_ranks(row)
        for (a, b) in (e for e in aux.clique_edges() if e[0][0] == i):
            # the higher-ranked endpoint receives the edge
            heads[(a, b, 0)] = a if ranks[a[1]] > ranks[b[1]] else b
    return Orientation(aux, heads)


def sign_of(aux: AuxGraph, o: Orientation) -> int:
    t = sum(1 for (u, v, _), h in o.heads.items() if h == v)
    return -1 if t % 2 else 1

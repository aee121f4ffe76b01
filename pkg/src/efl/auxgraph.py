"""Auxiliary graphs G1(H) and G2(H) of a standard-form linear hypergraph.

Clique vertices are ``(i, j)`` pairs, 0-based: clique i is edge i of the
hypergraph and position j is the j-th vertex of that edge.  Every tree edge
and identifier edge is stored with its lower-clique endpoint first.
"""

from __future__ import annotations

import json
from dataclasses import dataclass
from itertools import combinations, islice, product
from math import comb
from typing import Iterator

from .hypergraph import HypergraphError, LinearHypergraph, validate

__all__ = [
    "CliqueVertex",
    "TreeEdge",
    "AuxGraph",
    "IdentifierTreeSet",
    "copies",
    "default_spanning_trees",
    "enumerate_spanning_tree_choices",
    "prufer_trees",
    "build_aux",
    "expected_total_degree",
]

CliqueVertex = tuple[int, int]
TreeEdge = tuple[CliqueVertex, CliqueVertex]
# hypergraph vertex index -> tree edges over that vertex's copies
IdentifierTreeSet = dict[int, tuple[TreeEdge, ...]]


def _require_standard(H: LinearHypergraph):
    if not validate(H).is_standard_form:
        raise HypergraphError("auxiliary graphs need a standard-form linear hypergraph")


def copies(H: LinearHypergraph) -> dict[int, list[CliqueVertex]]:
    """Clique vertices labelled by each hypergraph vertex, in clique order."""
    out: dict[int, list[CliqueVertex]] = {v: [] for v in range(len(H.vertices))}
    for i, e in enumerate(H.edges):
        for j, v in enumerate(e):
            out[v].append((i, j))
    return out


def _edge(a: CliqueVertex, b: CliqueVertex) -> TreeEdge:
    return (a, b) if a < b else (b, a)


def default_spanning_trees(H: LinearHypergraph) -> IdentifierTreeSet:
    """Path-like trees: copies of each vertex joined in increasing clique order."""
    _require_standard(H)
    return {
        v: tuple(zip(cs, cs[1:]))
        for v, cs in copies(H).items()
        if len(cs) >= 2
    }


def prufer_trees(nodes: list) -> Iterator[tuple]:
    """All labelled trees on ``nodes``, in lexicographic Prüfer-sequence order."""
    k = len(nodes)
    if k <= 1:
        yield ()
        return
    if k == 2:
        yield (_edge(nodes[0], nodes[1]),)
        return
    for seq in product(range(k), repeat=k - 2):
        degree = [1] * k
        for x in seq:
            degree[x] += 1
        edges = []
        for x in seq:
            leaf = degree.index(1)
            edges.append(_edge(nodes[leaf], nodes[x]))
            degree[leaf] -= 1
            degree[x] -= 1
        u, w = (i for i in range(k) if degree[i] == 1)
        edges.append(_edge(nodes[u], nodes[w]))
        yield tuple(sorted(edges))


def enumerate_spanning_tree_choices(H: LinearHypergraph, limit: int | None = None) -> Iterator[IdentifierTreeSet]:
    """Every choice of identifier spanning trees, truncated at ``limit``.

    The product runs over vertices in global order, with the last vertex
    varying fastest.
    """
    _require_standard(H)
    multi = [(v, cs) for v, cs in copies(H).items() if len(cs) >= 2]
    per_vertex = [list(prufer_trees(cs)) for _, cs in multi]
    choices = (
        {v: trees for (v, _), trees in zip(multi, combo)}
        for combo in product(*per_vertex)
    )
    return islice(choices, limit) if limit is not None else choices


def expected_total_degree(H: LinearHypergraph) -> int:
    _require_standard(H)
    n = H.n
    return n * comb(n, 2) + sum((d - 1) * (n - 1) for d in H.degrees())


@dataclass(frozen=True)
class AuxGraph:
    """Base cliques plus identifier edges.

    ``identifier_edges`` holds ``(u, v, mult)`` with u in the lower clique.
    In G1 each tree edge is one entry of multiplicity n-1; in G2 each tree
    edge ``(v_ij, v_kl)`` contributes the star ``v_ij v_kt``, t != l.
    """

    kind: str
    n: int
    labels: tuple[tuple[int, ...], ...]
    tree_edges: tuple[TreeEdge, ...]
    identifier_edges: tuple[tuple[CliqueVertex, CliqueVertex, int], ...]

    @property
    def nvars(self) -> int:
        return self.n * self.n

    def label(self, v: CliqueVertex) -> int:
        return self.labels[v[0]][v[1]]

    def clique_edges(self) -> list[TreeEdge]:
        n = self.n
        return [((i, j), (i, k)) for i in range(n) for j, k in combinations(range(n), 2)]

    def identifier_instances(self) -> list[tuple[CliqueVertex, CliqueVertex, int]]:
        """Identifier edges expanded by multiplicity, as ``(u, v, copy)``."""
        return [(u, v, c) for u, v, m in self.identifier_edges for c in range(m)]

    def instances(self) -> list[tuple[CliqueVertex, CliqueVertex, int]]:
        return [(u, v, 0) for u, v in self.clique_edges()] + self.identifier_instances()

    def edge_count(self) -> int:
        n = self.n
        return n * comb(n, 2) + sum(m for _, _, m in self.identifier_edges)

    def tree_pairs(self) -> dict[tuple[int, int], TreeEdge]:
        """Map clique pair ``(i, k)``, i < k, to the unique tree edge joining them."""
        out = {}
        for u, v in self.tree_edges:
            key = (u[0], v[0])
            if key in out:
                raise HypergraphError(f"two tree edges join cliques {key}")
            out[key] = (u, v)
        return out

    def to_json(self) -> dict:
        return {
            "kind": self.kind,
            "n": self.n,
            "labels": [list(r) for r in self.labels],
            "tree_edges": [[list(u), list(v)] for u, v in self.tree_edges],
            "identifier_edges": [
                {"u": list(u), "v": list(v), "mult": m} for u, v, m in self.identifier_edges
            ],
        }

    @classmethod
    def from_json(cls, data: dict | str) -> "AuxGraph":
        if isinstance(data, str):
            data = json.loads(data)
        return cls(
            kind=data["kind"],
            n=int(data["n"]),
            labels=tuple(tuple(r) for r in data["labels"]),
            tree_edges=tuple((tuple(u), tuple(v)) for u, v in data["tree_edges"]),
            identifier_edges=tuple(
                (tuple(e["u"]), tuple(e["v"]), int(e["mult"])) for e in data["identifier_edges"]
            ),
        )


def _check_trees(H: LinearHypergraph, trees: IdentifierTreeSet):
    cps = copies(H)
    for v, cs in cps.items():
        edges = trees.get(v, ())
        if len(cs) < 2:
            if edges:
                raise HypergraphError(f"vertex {H.vertices[v]!r} has degree 1 but a tree")
            continue
        nodes = set(cs)
        if len(edges) != len(cs) - 1:
            raise HypergraphError(f"tree for {H.vertices[v]!r} has {len(edges)} edges, need {len(cs) - 1}")
        parent = {x: x for x in cs}

        def find(x):
            while parent[x] != x:
                parent[x] = parent[parent[x]]
                x = parent[x]
            return x

        for a, b in edges:
            if a not in nodes or b not in nodes:
                raise HypergraphError(f"tree for {H.vertices[v]!r} leaves the copies of the vertex")
            ra, rb = find(a), find(b)
            if ra == rb:
                raise HypergraphError(f"tree for {H.vertices[v]!r} has a cycle")
            parent[ra] = rb
    extra = set(trees) - set(cps)
    if extra:
        raise HypergraphError(f"trees given for unknown vertices {sorted(extra)}")


def build_aux(H: LinearHypergraph, trees: IdentifierTreeSet | None = None, kind: str = "G1") -> AuxGraph:
    _require_standard(H)
    kind = kind.upper()
    if kind not in ("G1", "G2"):
        raise ValueError(f"kind must be G1 or G2, got {kind!r}")
    if trees is None:
        trees = default_spanning_trees(H)
    _check_trees(H, trees)
    n = H.n
    tree_edges = sorted(_edge(a, b) for v in sorted(trees) for a, b in trees[v])
    ident = []
    for u, w in tree_edges:
        if kind == "G1":
            ident.append((u, w, n - 1))
        else:
            k, l = w
            ident.extend((u, (k, t), 1) for t in range(n) if t != l)
    return AuxGraph(kind, n, H.edges, tuple(tree_edges), tuple(ident))

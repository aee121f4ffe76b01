"""Linear hypergraphs: parsing, validation, and the standard transformations.

Vertices are opaque string tokens kept in first-appearance order; an edge is
stored as a sorted tuple of vertex indices, so the j-th entry of edge i is the
vertex that occupies position j of base clique i in the auxiliary graphs.
"""

from __future__ import annotations

import json
import random
import re
from dataclasses import dataclass, field
from itertools import combinations

__all__ = [
    "HypergraphError",
    "ParseError",
    "LinearHypergraph",
    "ValidationReport",
    "parse_hypergraph",
    "format_hypergraph",
    "validate",
    "degree_profile",
    "dualize",
    "strip_degree_one",
    "uniformize",
    "generate",
    "near_pencil",
    "projective_plane",
    "random_linear",
    "tri3",
]

TOKEN_RE = re.compile(r"^[A-Za-z0-9_.-]+$")
HEADER_RE = re.compile(r"^n\s*=\s*(\S+)$")
PAD_RE = re.compile(r"^_p(\d+)$")

MAX_REJECTIONS = 10_000


class HypergraphError(ValueError):
    pass


class ParseError(HypergraphError):
    def __init__(self, message: str, line: int | None = None):
        self.line = line
        if line is not None:
            message = f"line {line}: {message}"
        super().__init__(message)


@dataclass(frozen=True)
class LinearHypergraph:
    """A hypergraph with named vertices and an ordered edge list.

    ``edges[i]`` holds vertex indices in increasing order.  ``n`` is the
    declared uniformity / edge-count parameter; linearity is *not* enforced
    here, see :func:`validate`.
    """

    vertices: tuple[str, ...]
    edges: tuple[tuple[int, ...], ...]
    n: int

    def __post_init__(self):
        if self.n < 1:
            raise HypergraphError(f"n must be positive, got {self.n}")
        nv = len(self.vertices)
        if len(set(self.vertices)) != nv:
            raise HypergraphError("duplicate vertex names")
        seen = set()
        for k, e in enumerate(self.edges):
            if len(set(e)) != len(e):
                raise HypergraphError(f"edge {k} repeats a vertex")
            if any(not 0 <= v < nv for v in e):
                raise HypergraphError(f"edge {k} refers to an unknown vertex")
            if list(e) != sorted(e):
                raise HypergraphError(f"edge {k} is not sorted")
            seen.update(e)
        if len(seen) != nv:
            raise HypergraphError("every vertex must lie in at least one edge")

    @property
    def m(self) -> int:
        return len(self.edges)

    def edge_names(self, i: int) -> list[str]:
        return [self.vertices[v] for v in self.edges[i]]

    def incidence(self) -> list[list[int]]:
        """For every vertex, the increasing list of edges containing it."""
        inc: list[list[int]] = [[] for _ in self.vertices]
        for i, e in enumerate(self.edges):
            for v in e:
                inc[v].append(i)
        return inc

    def degrees(self) -> list[int]:
        return [len(x) for x in self.incidence()]

    def is_standard_form(self) -> bool:
        return validate(self).is_standard_form

    def to_json(self) -> dict:
        return {
            "n": self.n,
            "vertices": list(self.vertices),
            "edges": [list(e) for e in self.edges],
        }

    @classmethod
    def from_json(cls, data: dict | str) -> "LinearHypergraph":
        if isinstance(data, str):
            data = json.loads(data)
        return cls(
            vertices=tuple(data["vertices"]),
            edges=tuple(tuple(sorted(e)) for e in data["edges"]),
            n=int(data["n"]),
        )

    @classmethod
    def from_edges(cls, edges, n: int | None = None) -> "LinearHypergraph":
        """Build from an iterable of vertex-name iterables.

        Vertex order is first appearance; within an edge, names are reordered
        by that global order.
        """
        order: dict[str, int] = {}
        raw = []
        for e in edges:
            e = list(e)
            if len(set(e)) != len(e):
                raise HypergraphError(f"duplicate vertex in edge {e}")
            for v in e:
                order.setdefault(v, len(order))
            raw.append(tuple(sorted(order[v] for v in e)))
        return cls(tuple(order), tuple(raw), len(raw) if n is None else n)


@dataclass(frozen=True)
class ValidationReport:
    is_linear: bool
    is_uniform: bool
    is_standard_form: bool
    violations: tuple[tuple[tuple[int, ...], str], ...] = field(default=())

    def to_json(self) -> dict:
        return {
            "is_linear": self.is_linear,
            "is_uniform": self.is_uniform,
            "is_standard_form": self.is_standard_form,
            "violations": [{"edges": list(e), "reason": r} for e, r in self.violations],
        }


def parse_hypergraph(text: str | bytes) -> LinearHypergraph:
    """Parse the line-oriented hypergraph format.

    ``#`` starts a comment line, ``n=<int>`` overrides the edge-count
    default, every other non-blank line is one edge.
    """
    if isinstance(text, bytes):
        try:
            text = text.decode("utf-8")
        except UnicodeDecodeError as exc:
            raise ParseError(f"not UTF-8: {exc}") from None
    edges = []
    n_override = None
    for lineno, line in enumerate(text.splitlines(), start=1):
        line = line.strip()
        if not line or line.startswith("#"):
            continue
        header = HEADER_RE.match(line)
        if header:
            if n_override is not None:
                raise ParseError("repeated n= header", lineno)
            try:
                n_override = int(header.group(1))
            except ValueError:
                raise ParseError(f"bad n value {header.group(1)!r}", lineno) from None
            if n_override < 1:
                raise ParseError("n must be positive", lineno)
            continue
        tokens = line.split()
        for tok in tokens:
            if not TOKEN_RE.match(tok):
                raise ParseError(f"invalid vertex token {tok!r}", lineno)
        if len(set(tokens)) != len(tokens):
            dup = next(t for t in tokens if tokens.count(t) > 1)
            raise ParseError(f"duplicate vertex {dup!r} in edge", lineno)
        edges.append(tokens)
    if not edges:
        raise ParseError("no edges")
    return LinearHypergraph.from_edges(edges, n_override)


def format_hypergraph(H: LinearHypergraph) -> str:
    lines = [f"n={H.n}"] if H.n != H.m else []
    lines += [" ".join(H.edge_names(i)) for i in range(H.m)]
    return "\n".join(lines) + "\n"


def validate(H: LinearHypergraph) -> ValidationReport:
    violations = []
    linear = True
    for i, k in combinations(range(H.m), 2):
        common = set(H.edges[i]) & set(H.edges[k])
        if len(common) > 1:
            linear = False
            violations.append(((i, k), f"edges share {len(common)} vertices"))
    sizes = {len(e) for e in H.edges}
    uniform = len(sizes) == 1
    if not uniform:
        violations.append(((), f"edge sizes {sorted(sizes)}"))
    standard = linear and uniform and H.m == H.n and sizes == {H.n}
    if linear and uniform and not standard:
        if H.m != H.n:
            violations.append(((), f"{H.m} edges but n={H.n}"))
        else:
            violations.append(((), f"edges have size {sizes.pop()} but n={H.n}"))
    return ValidationReport(linear, uniform, standard, tuple(violations))


def degree_profile(H: LinearHypergraph) -> dict[str, int]:
    return dict(zip(H.vertices, H.degrees()))


def _require_linear(H: LinearHypergraph, what: str):
    if not validate(H).is_linear:
        raise HypergraphError(f"{what} requires a linear hypergraph")


def dualize(H: LinearHypergraph) -> LinearHypergraph:
    """Incidence transpose: dual vertex ``str(i+1)`` for edge i, one dual edge per vertex."""
    _require_linear(H, "dualize")
    names = tuple(str(i + 1) for i in range(H.m))
    return LinearHypergraph(names, tuple(tuple(x) for x in H.incidence()), H.m)


def strip_degree_one(H: LinearHypergraph) -> tuple[LinearHypergraph, list[str]]:
    """Delete every degree-1 vertex in a single pass.

    Edge order is kept; edges may shrink or become empty.
    """
    deg = H.degrees()
    keep = [v for v in range(len(H.vertices)) if deg[v] != 1]
    removed = [H.vertices[v] for v in range(len(H.vertices)) if deg[v] == 1]
    remap = {v: k for k, v in enumerate(keep)}
    edges = tuple(tuple(remap[v] for v in e if v in remap) for e in H.edges)
    derived = LinearHypergraph(tuple(H.vertices[v] for v in keep), edges, H.n)
    return derived, removed


class _FreshNames:
    """Issues ``_p<k>`` names that do not clash with the given hypergraph."""

    def __init__(self, taken):
        used = [int(m.group(1)) for m in map(PAD_RE.match, taken) if m]
        self.k = max(used, default=-1) + 1

    def __call__(self) -> str:
        name = f"_p{self.k}"
        self.k += 1
        return name


def uniformize(H: LinearHypergraph, n: int) -> LinearHypergraph:
    """Pad to standard form: n edges, each of size n, using fresh degree-1 vertices."""
    if n < 1:
        raise HypergraphError("n must be positive")
    _require_linear(H, "uniformize")
    if H.m > n:
        raise HypergraphError(f"{H.m} edges exceed n={n}")
    if any(len(e) > n for e in H.edges):
        raise HypergraphError(f"an edge is larger than n={n}")
    if H.m == n and all(len(e) == n for e in H.edges):
        return H if H.n == n else LinearHypergraph(H.vertices, H.edges, n)
    fresh = _FreshNames(H.vertices)
    edges = [H.edge_names(i) for i in range(H.m)]
    for e in edges:
        e.extend(fresh() for _ in range(n - len(e)))
    for _ in range(n - H.m):
        edges.append([fresh() for _ in range(n)])
    return LinearHypergraph.from_edges(edges, n)


def near_pencil(n: int) -> LinearHypergraph:
    """n edges through one common vertex ``p``, otherwise disjoint."""
    if n < 1:
        raise HypergraphError("near_pencil needs n >= 1")
    edges = [["p"] + [f"x{i}.{j}" for j in range(1, n)] for i in range(n)]
    return LinearHypergraph.from_edges(edges, n)


def _is_prime(q: int) -> bool:
    return q >= 2 and all(q % d for d in range(2, int(q**0.5) + 1))


def projective_plane(q: int) -> list[list[str]]:
    """Lines of PG(2, q) for prime q, each as a list of point names."""
    if not _is_prime(q):
        raise HypergraphError(f"projective plane needs a prime order, got {q}")
    points = []
    for x in range(q):
        for y in range(q):
            points.append((x, y, 1))
    points += [(x, 1, 0) for x in range(q)] + [(1, 0, 0)]
    # lines are the same normalized triples, acting by the dot product
    lines = []
    for a in points:
        line = [p for p in points if sum(s * t for s, t in zip(a, p)) % q == 0]
        lines.append([f"P{x}.{y}.{z}" for x, y, z in line])
    return lines


def random_linear(n: int, rng: random.Random) -> LinearHypergraph:
    """Random n-uniform linear hypergraph with n edges drawn from a pool of n**2 vertices."""
    if n < 1:
        raise HypergraphError("random generation needs n >= 1")
    pool = range(n * n)
    edges: list[set[int]] = []
    for _ in range(n):
        for _attempt in range(MAX_REJECTIONS):
            cand = set(rng.sample(pool, n))
            if all(len(cand & e) <= 1 for e in edges):
                edges.append(cand)
                break
        else:
            raise HypergraphError(
                f"random generation failed after {MAX_REJECTIONS} rejections"
            )
    return LinearHypergraph.from_edges(
        [[f"v{x}" for x in sorted(e)] for e in edges], n
    )


def generate(family: str, seed: int = 0, n: int | None = None, q: int | None = None) -> LinearHypergraph:
    """Generate a standard-form linear hypergraph from a named family.

    ``random`` and ``near_pencil`` take ``n``; ``truncated_projective_plane``
    takes a prime ``q`` and pads the q**2+q+1 lines of PG(2, q) to
    n = q**2+q+1.  Output is deterministic in ``seed``.
    """
    if family == "random":
        if n is None:
            raise HypergraphError("random family needs n")
        H = random_linear(n, random.Random(seed))
    elif family == "near_pencil":
        if n is None:
            raise HypergraphError("near_pencil family needs n")
        H = near_pencil(n)
    elif family == "truncated_projective_plane":
        if q is None:
            raise HypergraphError("truncated_projective_plane needs q")
        lines = projective_plane(q)
        H = LinearHypergraph.from_edges(lines)
    else:
        raise HypergraphError(f"unknown family {family!r}")
    return uniformize(H, H.m)


def tri3() -> LinearHypergraph:
    """The 3-edge triangle {abc, ade, bdf} used throughout the tests."""
    return parse_hypergraph("a b c\na d e\nb d f\n")

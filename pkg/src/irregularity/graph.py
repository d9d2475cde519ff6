"""Immutable simple graphs, DIMACS-style I/O and conflict bookkeeping.

Vertices are dense integers ``0..n-1``.  Edges are stored as ``(u, v)`` pairs
with ``u < v`` in a sorted tuple; an edge identifier is its position in that
tuple.  Files use the 1-indexed ``p edge N M`` / ``e u v`` convention.
"""

from __future__ import annotations

import math
from collections import deque
from dataclasses import dataclass, field
from typing import Iterable, Iterator, Sequence

INF = math.inf


class GraphError(ValueError):
    """Invalid graph construction or invalid vertex/edge identifier."""


class GraphParseError(GraphError):
    def __init__(self, lineno: int, message: str):
        super().__init__(f"line {lineno}: {message}")
        self.lineno = lineno


@dataclass(frozen=True)
class EdgeSet:
    """Canonical (sorted, duplicate-free) set of edge identifiers."""

    members: tuple[int, ...] = ()

    def __post_init__(self):
        members = tuple(sorted(self.members))
        if len(set(members)) != len(members):
            raise GraphError("duplicate edge identifier in edge set")
        object.__setattr__(self, "members", members)

    @classmethod
    def of(cls, ids: Iterable[int]) -> "EdgeSet":
        return cls(tuple(ids))

    def __len__(self) -> int:
        return len(self.members)

    def __iter__(self) -> Iterator[int]:
        return iter(self.members)

    def __contains__(self, eid: object) -> bool:
        return eid in set(self.members)

    def union(self, other: Iterable[int]) -> "EdgeSet":
        return EdgeSet(tuple(set(self.members) | set(other)))


@dataclass(frozen=True)
class ConflictReport:
    conflict_edges: EdgeSet
    count: int


@dataclass(frozen=True, eq=False)
class Graph:
    """Simple undirected graph; build with :meth:`from_edges`."""

    n: int
    edges: tuple[tuple[int, int], ...]
    adjacency: tuple[tuple[int, ...], ...]
    labels: tuple[str, ...] | None = None
    _index: dict = field(default_factory=dict, repr=False, compare=False)

    @classmethod
    def from_edges(
        cls,
        n: int,
        edges: Iterable[tuple[int, int]],
        labels: Sequence[str] | None = None,
    ) -> "Graph":
        if n < 0:
            raise GraphError("vertex count must be non-negative")
        norm = []
        for u, v in edges:
            if not (0 <= u < n and 0 <= v < n):
                raise GraphError(f"vertex out of range in edge ({u}, {v})")
            if u == v:
                raise GraphError(f"self-loop at vertex {u}")
            norm.append((u, v) if u < v else (v, u))
        norm.sort()
        for a, b in zip(norm, norm[1:]):
            if a == b:
                raise GraphError(f"duplicate edge {a}")
        adj: list[list[int]] = [[] for _ in range(n)]
        for u, v in norm:
            adj[u].append(v)
            adj[v].append(u)
        if labels is not None:
            labels = tuple(labels)
            if len(labels) != n:
                raise GraphError("labels must have one entry per vertex")
        index = {e: i for i, e in enumerate(norm)}
        return cls(
            n=n,
            edges=tuple(norm),
            adjacency=tuple(tuple(sorted(a)) for a in adj),
            labels=labels,
            _index=index,
        )

    @property
    def m(self) -> int:
        return len(self.edges)

    @property
    def degrees(self) -> list[int]:
        return [len(a) for a in self.adjacency]

    @property
    def max_degree(self) -> int:
        return max((len(a) for a in self.adjacency), default=0)

    def edge_id(self, u: int, v: int) -> int:
        key = (u, v) if u < v else (v, u)
        try:
            return self._index[key]
        except KeyError:
            raise GraphError(f"no edge between {u} and {v}") from None

    def has_edge(self, u: int, v: int) -> bool:
        return ((u, v) if u < v else (v, u)) in self._index

    def incident_edges(self, v: int) -> list[int]:
        return [self.edge_id(v, w) for w in self.adjacency[v]]

    def check_vertex(self, v: int) -> None:
        if not (isinstance(v, int) and 0 <= v < self.n):
            raise GraphError(f"invalid vertex id {v!r}")

    def check_edge(self, e: int) -> None:
        if not (isinstance(e, int) and 0 <= e < len(self.edges)):
            raise GraphError(f"invalid edge id {e!r}")

    def edge_set(self, ids: Iterable[int]) -> EdgeSet:
        s = ids if isinstance(ids, EdgeSet) else EdgeSet.of(ids)
        for e in s:
            self.check_edge(e)
        return s

    def edge_set_from_pairs(self, pairs: Iterable[tuple[int, int]]) -> EdgeSet:
        return EdgeSet.of(self.edge_id(u, v) for u, v in pairs)

    def pairs(self, s: Iterable[int]) -> list[tuple[int, int]]:
        return [self.edges[e] for e in s]

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, Graph):
            return NotImplemented
        return self.n == other.n and self.edges == other.edges

    def __hash__(self) -> int:
        return hash((self.n, self.edges))

    def __repr__(self) -> str:
        return f"Graph(n={self.n}, m={self.m})"


# --- I/O ------------------------------------------------------------------


def parse_graph(text: str | bytes) -> Graph:
    if isinstance(text, bytes):
        text = text.decode("utf-8")
    n = m = None
    edges: list[tuple[int, int]] = []
    seen: set[tuple[int, int]] = set()
    for lineno, raw in enumerate(text.splitlines(), start=1):
        parts = raw.split()
        if not parts or parts[0] == "c":
            continue
        tag = parts[0]
        if tag == "p":
            if n is not None:
                raise GraphParseError(lineno, "duplicate header")
            if len(parts) != 4 or parts[1] != "edge":
                raise GraphParseError(lineno, "malformed header, expected 'p edge N M'")
            try:
                n, m = int(parts[2]), int(parts[3])
            except ValueError:
                raise GraphParseError(lineno, "malformed header, expected 'p edge N M'") from None
            if n < 0 or m < 0:
                raise GraphParseError(lineno, "malformed header, negative counts")
        elif tag == "e":
            if n is None:
                raise GraphParseError(lineno, "edge line before header")
            if len(parts) != 3:
                raise GraphParseError(lineno, "malformed edge line")
            try:
                u, v = int(parts[1]), int(parts[2])
            except ValueError:
                raise GraphParseError(lineno, "malformed edge line") from None
            if not (1 <= u <= n and 1 <= v <= n):
                raise GraphParseError(lineno, "vertex out of range")
            if u == v:
                raise GraphParseError(lineno, "self-loop")
            key = (u - 1, v - 1) if u < v else (v - 1, u - 1)
            if key in seen:
                raise GraphParseError(lineno, "duplicate edge")
            seen.add(key)
            edges.append(key)
        else:
            raise GraphParseError(lineno, f"unknown line type {tag!r}")
    if n is None:
        raise GraphParseError(0, "missing 'p edge N M' header")
    if len(edges) != m:
        raise GraphParseError(0, f"header declares {m} edges, found {len(edges)}")
    return Graph.from_edges(n, edges)


def emit_graph(g: Graph, comments: Sequence[str] = ()) -> str:
    lines = [f"c {c}" for c in comments]
    lines.append(f"p edge {g.n} {g.m}")
    lines.extend(f"e {u + 1} {v + 1}" for u, v in g.edges)
    return "\n".join(lines) + "\n"


def read_graph(path) -> Graph:
    with open(path, "rb") as fh:
        return parse_graph(fh.read())


def write_graph(g: Graph, path, comments: Sequence[str] = ()) -> None:
    with open(path, "w", encoding="utf-8", newline="\n") as fh:
        fh.write(emit_graph(g, comments))


# --- degrees and conflicts ------------------------------------------------


def degree(g: Graph, v: int) -> int:
    g.check_vertex(v)
    return len(g.adjacency[v])


def conflict_report(g: Graph) -> ConflictReport:
    deg = g.degrees
    ids = [i for i, (u, v) in enumerate(g.edges) if deg[u] == deg[v]]
    return ConflictReport(EdgeSet(tuple(ids)), len(ids))


def is_locally_irregular(g: Graph) -> bool:
    deg = g.degrees
    return all(deg[u] != deg[v] for u, v in g.edges)


def first_conflict(
    g: Graph, removed: Iterable[int] = ()
) -> tuple[int, int, int] | None:
    """Return ``(u, v, degree)`` for the first conflict of ``g - removed``."""
    gone = set(removed)
    deg = g.degrees
    for e in gone:
        u, v = g.edges[e]
        deg[u] -= 1
        deg[v] -= 1
    for i, (u, v) in enumerate(g.edges):
        if i not in gone and deg[u] == deg[v]:
            return u, v, deg[u]
    return None


def delete_edges(g: Graph, s: Iterable[int]) -> Graph:
    s = g.edge_set(s)
    gone = set(s)
    kept = [e for i, e in enumerate(g.edges) if i not in gone]
    return Graph.from_edges(g.n, kept, g.labels)


# --- connectivity and distances -------------------------------------------


def connected_components(g: Graph) -> list[list[int]]:
    seen = [False] * g.n
    comps = []
    for s in range(g.n):
        if seen[s]:
            continue
        seen[s] = True
        comp = [s]
        queue = deque([s])
        while queue:
            u = queue.popleft()
            for w in g.adjacency[u]:
                if not seen[w]:
                    seen[w] = True
                    comp.append(w)
                    queue.append(w)
        comps.append(sorted(comp))
    return comps


def is_connected(g: Graph) -> bool:
    return g.n <= 1 or len(connected_components(g)) == 1


def bfs_distances(g: Graph, sources: Iterable[int], limit: float = INF) -> dict[int, int]:
    """Multi-source BFS; vertices farther than ``limit`` are omitted."""
    dist: dict[int, int] = {}
    queue: deque[int] = deque()
    for s in sources:
        if s not in dist:
            dist[s] = 0
            queue.append(s)
    while queue:
        u = queue.popleft()
        du = dist[u]
        if du >= limit:
            continue
        for w in g.adjacency[u]:
            if w not in dist:
                dist[w] = du + 1
                queue.append(w)
    return dist


def edge_distance(g: Graph, e: int, f: int) -> float:
    g.check_edge(e)
    g.check_edge(f)
    dist = bfs_distances(g, g.edges[e])
    a, b = g.edges[f]
    return min(dist.get(a, INF), dist.get(b, INF))


def ball_vertices(g: Graph, e: int, r: int) -> set[int]:
    g.check_edge(e)
    if r < 0:
        raise GraphError("radius must be non-negative")
    return set(bfs_distances(g, g.edges[e], limit=r))


def bipartition(g: Graph) -> list[int] | None:
    """2-colouring as a list of 0/1 sides, or None if ``g`` has an odd cycle."""
    side = [-1] * g.n
    for s in range(g.n):
        if side[s] != -1:
            continue
        side[s] = 0
        queue = deque([s])
        while queue:
            u = queue.popleft()
            for w in g.adjacency[u]:
                if side[w] == -1:
                    side[w] = 1 - side[u]
                    queue.append(w)
                elif side[w] == side[u]:
                    return None
    return side


def induced_subgraph(g: Graph, vertices: Iterable[int]) -> tuple[Graph, list[int]]:
    """Subgraph induced on ``vertices``, relabelled in increasing order.

    Returns the subgraph and the list mapping new ids to original ids.
    """
    keep = sorted(set(vertices))
    pos = {v: i for i, v in enumerate(keep)}
    edges = [
        (pos[u], pos[v]) for u, v in g.edges if u in pos and v in pos
    ]
    labels = [g.labels[v] for v in keep] if g.labels is not None else None
    return Graph.from_edges(len(keep), edges, labels), keep


def relabel(g: Graph, mapping: Sequence[int]) -> Graph:
    """Rename vertex ``v`` to ``mapping[v]`` (a permutation of ``0..n-1``)."""
    if sorted(mapping) != list(range(g.n)):
        raise GraphError("mapping must be a permutation of the vertex set")
    return Graph.from_edges(g.n, [(mapping[u], mapping[v]) for u, v in g.edges])

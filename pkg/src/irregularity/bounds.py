"""Lower bounds and constructive upper bounds on the irregulator size."""

from __future__ import annotations

from collections import deque
from dataclasses import dataclass, field

from .graph import (
    EdgeSet,
    Graph,
    GraphError,
    bipartition,
    conflict_report,
    connected_components,
    delete_edges,
    induced_subgraph,
    is_connected,
    is_locally_irregular,
)
from .oracle import IrregulatorResult


class PreconditionError(GraphError):
    pass


@dataclass(frozen=True)
class BoundReport:
    lower: int
    lower_sources: tuple[str, ...]
    upper: int
    upper_source: str
    certificate: EdgeSet
    candidates: dict[str, int] = field(default_factory=dict)

    @property
    def gap(self) -> int:
        return self.upper - self.lower


def conflict_lower_bound(g: Graph) -> int:
    conf = conflict_report(g).count
    if conf == 0:
        return 0
    span = 2 * g.max_degree - 1
    return -(-conf // span)


def bipartite_deg1_irregulator(g: Graph) -> EdgeSet:
    """Parity construction for connected bipartite graphs with a pendant vertex.

    Rooted at the lowest pendant vertex; vertices are fixed layer by layer from
    the farthest inwards so that layer ``i`` ends with degree of parity ``i``.
    """
    if g.n < 2 or not is_connected(g):
        raise PreconditionError("graph must be connected with at least one edge")
    if bipartition(g) is None:
        raise PreconditionError("graph must be bipartite")
    deg = g.degrees
    pendant = [v for v in range(g.n) if deg[v] == 1]
    if not pendant:
        raise PreconditionError("graph must have a vertex of degree 1")
    r = pendant[0]
    layer = {r: 0}
    queue = deque([r])
    while queue:
        u = queue.popleft()
        for w in g.adjacency[u]:
            if w not in layer:
                layer[w] = layer[u] + 1
                queue.append(w)
    order = sorted((v for v in range(g.n) if v != r), key=lambda v: (-layer[v], v))
    chosen: list[int] = []
    for u in order:
        i = layer[u]
        if deg[u] % 2 != i % 2:
            w = min(x for x in g.adjacency[u] if layer[x] == i - 1)
            chosen.append(g.edge_id(u, w))
            deg[u] -= 1
            deg[w] -= 1
    w = g.adjacency[r][0]
    rw = g.edge_id(r, w)
    if rw not in chosen and deg[r] == deg[w] == 1:
        chosen.append(rw)
    s = EdgeSet(tuple(chosen))
    if not is_locally_irregular(delete_edges(g, s)):
        raise AssertionError("parity construction produced a non-irregulator")
    return s


def local_max_cut(g: Graph) -> list[int]:
    """Side (0/1) per vertex such that no single move enlarges the cut."""
    side = [0] * g.n
    moved = True
    while moved:
        moved = False
        for v in range(g.n):
            same = sum(1 for w in g.adjacency[v] if side[w] == side[v])
            if same > len(g.adjacency[v]) - same:
                side[v] = 1 - side[v]
                moved = True
                break
    return side


class _UnionFind:
    def __init__(self, n: int):
        self.parent = list(range(n))

    def find(self, x: int) -> int:
        while self.parent[x] != x:
            self.parent[x] = self.parent[self.parent[x]]
            x = self.parent[x]
        return x

    def union(self, a: int, b: int) -> bool:
        ra, rb = self.find(a), self.find(b)
        if ra == rb:
            return False
        self.parent[max(ra, rb)] = min(ra, rb)
        return True


def maxcut_irregulator(g: Graph) -> EdgeSet:
    """Irregulator of size at most floor(m/2) + n + Delta - 2.

    Same-side edges of a locally maximal cut are deleted (after re-adding
    just enough of them to reconnect the cut graph), all but one edge of a
    non-cut vertex are deleted, and the parity construction finishes the
    resulting bipartite graph with a pendant vertex.
    """
    if g.n < 2 or not is_connected(g):
        raise PreconditionError("graph must be connected with at least two vertices")
    side = local_max_cut(g)
    cross = [i for i, (u, v) in enumerate(g.edges) if side[u] != side[v]]
    uf = _UnionFind(g.n)
    for i in cross:
        uf.union(*g.edges[i])
    kept = set(cross)
    for i, (u, v) in enumerate(g.edges):
        if i not in kept and uf.union(u, v):
            kept.add(i)
    same = [i for i in range(g.m) if i not in kept]
    h = Graph.from_edges(g.n, [g.edges[i] for i in sorted(kept)])

    seen = {0}
    queue = deque([0])
    last = 0
    while queue:
        last = queue.popleft()
        for w in h.adjacency[last]:
            if w not in seen:
                seen.add(w)
                queue.append(w)
    r = last
    keep_nb = h.adjacency[r][0]
    x = [g.edge_id(r, w) for w in h.adjacency[r] if w != keep_nb]
    h2 = Graph.from_edges(g.n, [e for e in h.edges if r not in e or keep_nb in e])
    rest = [g.edge_id(*h2.edges[i]) for i in bipartite_deg1_irregulator(h2)]
    s = EdgeSet(tuple(same + x + rest))
    if not is_locally_irregular(delete_edges(g, s)):
        raise AssertionError("max-cut construction produced a non-irregulator")
    return s


def maxcut_bound(g: Graph) -> int:
    return g.m // 2 + g.n + g.max_degree - 2


def component_graphs(g: Graph, s: EdgeSet = EdgeSet()) -> list[tuple[Graph, list[int]]]:
    """Components of ``g - s`` that still have an edge, with vertex maps."""
    rest = delete_edges(g, s) if len(s) else g
    out = []
    for comp in connected_components(rest):
        if len(comp) > 1:
            out.append(induced_subgraph(rest, comp))
    return out


def combine_components(
    g: Graph, s: EdgeSet, results: list[IrregulatorResult]
) -> IrregulatorResult:
    """Upper bound |s| + sum of the component values, with a merged certificate.

    ``results`` must follow the order of :func:`component_graphs` and use
    edge ids local to each component.
    """
    s = g.edge_set(s)
    parts = component_graphs(g, s)
    if len(parts) != len(results):
        raise PreconditionError(
            f"{len(parts)} non-trivial components but {len(results)} results"
        )
    ids = set(s)
    total = len(s)
    for (comp, vmap), res in zip(parts, results):
        if res.value is None:
            raise PreconditionError("component result has no exact value")
        for e in comp.edge_set(res.certificate):
            a, b = comp.edges[e]
            ids.add(g.edge_id(vmap[a], vmap[b]))
        total += res.value
    cert = EdgeSet(tuple(ids))
    if len(cert) != total:
        raise PreconditionError("component certificates overlap the split set")
    if not is_locally_irregular(delete_edges(g, cert)):
        raise PreconditionError("merged certificate does not verify")
    return IrregulatorResult(total, cert, "constructive")


def _component_upper(comp: Graph) -> tuple[int, EdgeSet, str]:
    options = [(comp.m, EdgeSet(tuple(range(comp.m))), "all-edges")]
    if is_locally_irregular(comp):
        options.append((0, EdgeSet(), "irregular"))
    s = maxcut_irregulator(comp)
    options.append((len(s), s, "maxcut"))
    if bipartition(comp) is not None and 1 in comp.degrees:
        s = bipartite_deg1_irregulator(comp)
        options.append((len(s), s, "bipartite-deg1"))
    return min(options, key=lambda o: (o[0], o[2]))


def bound_report(g: Graph) -> BoundReport:
    lowers = {"conflict": conflict_lower_bound(g)}
    parts = component_graphs(g)
    lowers["conflict-per-component"] = sum(conflict_lower_bound(c) for c, _ in parts)
    lower = max(lowers.values())
    ids: set[int] = set()
    sources = set()
    for comp, vmap in parts:
        _, cert, src = _component_upper(comp)
        sources.add(src)
        for e in cert:
            a, b = comp.edges[e]
            ids.add(g.edge_id(vmap[a], vmap[b]))
    cert = EdgeSet(tuple(ids))
    if not is_locally_irregular(delete_edges(g, cert)):
        raise AssertionError("upper-bound certificate does not verify")
    return BoundReport(
        lower=lower,
        lower_sources=tuple(k for k, v in lowers.items() if v == lower),
        upper=len(cert),
        upper_source="+".join(sorted(sources)) or "irregular",
        certificate=cert,
        candidates=dict(lowers),
    )

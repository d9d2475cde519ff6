"""Exact irregulator parameterized by the vertex cover number.

The independent side ``I`` of a minimum cover ``C`` is split in two: ``I1``
collects the ``I``-neighbours of cover vertices with few ``I``-neighbours
(at most ``5 * vc``); the remaining ``I2`` vertices only see high-degree
cover vertices.  Deletions inside ``G[C + I1]`` are enumerated outright,
while deletions towards ``I2`` only need a count per cover vertex: which
particular ``I2`` edges go is irrelevant, so the lowest-id ones are taken.
"""

from __future__ import annotations

import itertools
import time
from dataclasses import dataclass

from .graph import EdgeSet, Graph, delete_edges, is_locally_irregular
from .oracle import IrregulatorResult, SearchCapExceeded

DEFAULT_VC_CAP = 24


# --- minimum vertex cover ---------------------------------------------------


def _cover_within(adj: list[set[int]], budget: int) -> bool:
    """Whether the graph given by mutable ``adj`` has a cover of size <= budget."""
    best_v, best_d = -1, 0
    edges = 0
    for v, nb in enumerate(adj):
        d = len(nb)
        edges += d
        if d > best_d:
            best_v, best_d = v, d
    edges //= 2
    if edges == 0:
        return True
    if budget <= 0:
        return False
    # each chosen vertex covers at most best_d edges
    if edges > budget * best_d:
        return False
    if best_d <= 2:
        return _max_deg2_cover(adj) <= budget
    v = best_v
    nbrs = list(adj[v])
    # branch 1: take v
    for w in nbrs:
        adj[w].discard(v)
    adj[v] = set()
    ok = _cover_within(adj, budget - 1)
    adj[v] = set(nbrs)
    for w in nbrs:
        adj[w].add(v)
    if ok:
        return True
    # branch 2: take all neighbours of v
    if len(nbrs) > budget:
        return False
    removed = []
    for w in nbrs:
        removed.append((w, set(adj[w])))
        for x in adj[w]:
            adj[x].discard(w)
        adj[w] = set()
    ok = _cover_within(adj, budget - len(nbrs))
    for w, nb in reversed(removed):
        adj[w] = nb
        for x in nb:
            adj[x].add(w)
    return ok


def _max_deg2_cover(adj: list[set[int]]) -> int:
    """Exact cover size of a graph of maximum degree 2 (paths and cycles)."""
    seen = set()
    total = 0
    for s in range(len(adj)):
        if s in seen or not adj[s]:
            continue
        comp = []
        stack = [s]
        seen.add(s)
        while stack:
            u = stack.pop()
            comp.append(u)
            for w in adj[u]:
                if w not in seen:
                    seen.add(w)
                    stack.append(w)
        edges = sum(len(adj[u]) for u in comp) // 2
        if edges == len(comp):  # cycle
            total += (len(comp) + 1) // 2
        else:  # path with len(comp) vertices
            total += len(comp) // 2
    return total


def _forced_adj(g: Graph, take: set[int], avoid: set[int]) -> tuple[list[set[int]], int] | None:
    """Residual graph after fixing choices; None if ``avoid`` is contradictory."""
    take = set(take)
    for v in avoid:
        for w in g.adjacency[v]:
            if w in avoid:
                return None
            take.add(w)
    adj = [set(nb) for nb in g.adjacency]
    for v in take | avoid:
        for w in adj[v]:
            adj[w].discard(v)
        adj[v] = set()
    return adj, len(take)


def min_vertex_cover(g: Graph) -> tuple[int, ...]:
    """Lexicographically smallest minimum vertex cover."""
    adj = [set(nb) for nb in g.adjacency]
    size = 0
    while not _cover_within(adj, size):
        size += 1
    take: set[int] = set()
    avoid: set[int] = set()
    for v in range(g.n):
        forced = _forced_adj(g, take | {v}, avoid)
        if forced is not None:
            adj, used = forced
            if used <= size and _cover_within(adj, size - used):
                take.add(v)
                continue
        avoid.add(v)
    cover = tuple(sorted(take))
    assert len(cover) == size
    return cover


# --- decomposition ------------------------------------------------------------


@dataclass(frozen=True)
class VcDecomposition:
    cover: tuple[int, ...]
    independent: tuple[int, ...]
    i1: tuple[int, ...]
    i2: tuple[int, ...]
    e1: tuple[int, ...]
    e2: tuple[int, ...]

    @property
    def vc(self) -> int:
        return len(self.cover)


def decompose(g: Graph, cover: tuple[int, ...] | None = None) -> VcDecomposition:
    if cover is None:
        cover = min_vertex_cover(g)
    in_cover = set(cover)
    for u, v in g.edges:
        if u not in in_cover and v not in in_cover:
            raise ValueError(f"({u}, {v}) is not covered")
    vc = len(cover)
    independent = tuple(v for v in range(g.n) if v not in in_cover)
    for v in independent:
        assert len(g.adjacency[v]) <= vc, "independent vertex with too many neighbours"
    i1: set[int] = set()
    for u in cover:
        nb_i = [w for w in g.adjacency[u] if w not in in_cover]
        if len(nb_i) <= 5 * vc:
            i1.update(nb_i)
    i2 = tuple(v for v in independent if v not in i1)
    side1 = in_cover | i1
    e1, e2 = [], []
    for i, (u, v) in enumerate(g.edges):
        if u in side1 and v in side1:
            e1.append(i)
        else:
            e2.append(i)
    return VcDecomposition(
        cover=tuple(cover),
        independent=independent,
        i1=tuple(sorted(i1)),
        i2=i2,
        e1=tuple(e1),
        e2=tuple(e2),
    )


def _e2_edges_by_cover(g: Graph, dec: VcDecomposition) -> list[list[int]]:
    """For each cover vertex, its E2 edges ordered by the I2 endpoint id."""
    i2 = set(dec.i2)
    return [
        [g.edge_id(u, w) for w in g.adjacency[u] if w in i2]
        for u in dec.cover
    ]


def _tuples(limits: list[int], total: int):
    """All tuples with 0 <= t_i <= limits[i] and sum exactly ``total``."""
    if not limits:
        if total == 0:
            yield ()
        return
    head, rest = limits[0], limits[1:]
    cap = sum(rest)
    for x in range(min(head, total), -1, -1):
        if total - x > cap:
            break
        for tail in _tuples(rest, total - x):
            yield (x,) + tail


def modifier_tuples(limits: list[int], max_total: int):
    """Tuples in increasing order of their sum, then lexicographically."""
    for total in range(0, min(max_total, sum(limits)) + 1):
        yield from sorted(_tuples(limits, total))


def apply_modifiers(e2_by_cover: list[list[int]], ks: tuple[int, ...]) -> list[int]:
    out = []
    for edges, k in zip(e2_by_cover, ks):
        out.extend(edges[:k])
    return out


def ie_vc_fpt(g: Graph, cap: int = DEFAULT_VC_CAP, cover=None) -> IrregulatorResult:
    start = time.perf_counter()
    dec = decompose(g, cover)
    if len(dec.e1) > cap:
        raise SearchCapExceeded(f"|E1| = {len(dec.e1)} exceeds the cap {cap}", g.m)
    vc = dec.vc
    e2_by = _e2_edges_by_cover(g, dec)
    limits = [len(x) for x in e2_by]
    deg0 = g.degrees
    edges = g.edges

    def verifies(s: list[int]) -> bool:
        deg = list(deg0)
        gone = set(s)
        for e in gone:
            a, b = edges[e]
            deg[a] -= 1
            deg[b] -= 1
        return all(deg[a] != deg[b] for i, (a, b) in enumerate(edges) if i not in gone)

    all_ks = list(modifier_tuples(limits, vc * vc))
    best: tuple[int, ...] | None = None
    for size1 in range(0, len(dec.e1) + 1):
        if best is not None and size1 > len(best):
            break
        for s1 in itertools.combinations(dec.e1, size1):
            for ks in all_ks:
                total = size1 + sum(ks)
                if best is not None and total > len(best):
                    break
                cand = tuple(sorted(s1 + tuple(apply_modifiers(e2_by, ks))))
                if verifies(list(cand)) and (
                    best is None or (len(cand), cand) < (len(best), best)
                ):
                    best = cand
    if best is None:
        raise AssertionError("no candidate verified; the full edge set always does")
    cert = EdgeSet(best)
    assert len(set(cert) & set(dec.e2)) <= vc * vc
    assert is_locally_irregular(delete_edges(g, cert))
    return IrregulatorResult(len(cert), cert, "vc-fpt", time.perf_counter() - start)

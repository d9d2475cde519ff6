"""Exact irregulator search by pruned subset enumeration.

Every other solver is checked against this one.  Subsets are enumerated by
size and, within a size, lexicographically by edge id, so the certificate of
:func:`solve_exact` is the lexicographically smallest optimum.

Only edges close to an original conflict are considered: an optimal
irregulator of size ``s`` lies within edge distance ``2s - 1`` of the
conflicts, hence within ``2k - 1`` whenever ``s <= k``.
"""

from __future__ import annotations

import time
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass

from .graph import EdgeSet, Graph, bfs_distances, conflict_report, is_locally_irregular

DEFAULT_MAX_CANDIDATES = 40
DEFAULT_MAX_K = 12
DEFAULT_MAX_NODES = 5_000_000


class SearchCapExceeded(RuntimeError):
    """Raised when the exhaustive search would exceed its configured limits."""

    def __init__(self, message: str, upper_bound: int):
        super().__init__(f"{message} (best upper bound {upper_bound})")
        self.upper_bound = upper_bound


@dataclass(frozen=True)
class IrregulatorResult:
    """Outcome of a solver.

    ``value`` is None only when a solver could bracket the optimum without
    pinning it; then ``lower``/``upper`` hold the range and ``certificate``
    witnesses ``upper``.
    """

    value: int | None
    certificate: EdgeSet
    method: str
    elapsed: float = 0.0
    lower: int | None = None
    upper: int | None = None

    @property
    def exact(self) -> bool:
        return self.value is not None


@dataclass(frozen=True)
class SearchLimits:
    max_candidates: int = DEFAULT_MAX_CANDIDATES
    max_k: int = DEFAULT_MAX_K
    max_nodes: int = DEFAULT_MAX_NODES
    jobs: int = 1


def candidate_edges(g: Graph, k: int) -> EdgeSet:
    if k < 1:
        raise ValueError("budget must be at least 1")
    conflicts = conflict_report(g).conflict_edges
    if not len(conflicts):
        return EdgeSet()
    sources = {x for e in conflicts for x in g.edges[e]}
    radius = 2 * k - 1
    dist = bfs_distances(g, sources, limit=radius)
    ids = [
        i
        for i, (u, v) in enumerate(g.edges)
        if min(dist.get(u, radius + 1), dist.get(v, radius + 1)) <= radius
    ]
    return EdgeSet(tuple(ids))


class _Search:
    """Depth-first enumeration of fixed-size subsets of a candidate list."""

    def __init__(self, g: Graph, cand: tuple[int, ...], max_nodes: int):
        self.g = g
        self.cand = cand
        self.ends = [g.edges[e] for e in cand]
        self.deg = g.degrees
        self.touch = [0] * g.n
        self.deleted = set()
        self.nodes = 0
        self.max_nodes = max_nodes
        conf = conflict_report(g).conflict_edges
        self.conflicts = [g.edges[e] for e in conf]
        # last candidate position able to resolve each conflict
        self.last_hit = []
        for u, v in self.conflicts:
            last = -1
            for pos, (a, b) in enumerate(self.ends):
                if a in (u, v) or b in (u, v):
                    last = pos
            self.last_hit.append(last)

    def _push(self, pos: int) -> None:
        u, v = self.ends[pos]
        self.deg[u] -= 1
        self.deg[v] -= 1
        self.touch[u] += 1
        self.touch[v] += 1
        self.deleted.add(self.cand[pos])

    def _pop(self, pos: int) -> None:
        u, v = self.ends[pos]
        self.deg[u] += 1
        self.deg[v] += 1
        self.touch[u] -= 1
        self.touch[v] -= 1
        self.deleted.discard(self.cand[pos])

    def _feasible_from(self, pos: int) -> bool:
        touch = self.touch
        for (u, v), last in zip(self.conflicts, self.last_hit):
            if not touch[u] and not touch[v] and last < pos:
                return False
        return True

    def _irregular(self) -> bool:
        g, deg, touch, deleted = self.g, self.deg, self.touch, self.deleted
        for u, v in self.conflicts:
            if not touch[u] and not touch[v]:
                return False
        for x in {x for pos_e in deleted for x in g.edges[pos_e]}:
            dx = deg[x]
            for y in g.adjacency[x]:
                if deg[y] == dx and g.edge_id(x, y) not in deleted:
                    return False
        return True

    def run(self, size: int, first: int | None = None) -> tuple[int, ...] | None:
        """Lexicographically first subset of ``size`` candidates that works.

        With ``first`` given, only subsets whose smallest position is
        ``first`` are searched.
        """
        if size == 0:
            return () if self._irregular() else None
        chosen: list[int] = []
        if first is not None:
            if first > len(self.cand) - size:
                return None
            self._push(first)
            chosen.append(first)
            found = self._dfs(first + 1, size - 1, chosen)
            self._pop(first)
        else:
            found = self._dfs(0, size, chosen)
        if found is None:
            return None
        return tuple(self.cand[p] for p in found)

    def _dfs(self, start: int, remaining: int, chosen: list[int]) -> list[int] | None:
        self.nodes += 1
        if self.nodes > self.max_nodes:
            raise SearchCapExceeded(
                f"enumeration exceeded {self.max_nodes} nodes", self.g.m
            )
        if remaining == 0:
            return list(chosen) if self._irregular() else None
        if not self._feasible_from(start):
            return None
        for pos in range(start, len(self.cand) - remaining + 1):
            self._push(pos)
            chosen.append(pos)
            found = self._dfs(pos + 1, remaining - 1, chosen)
            chosen.pop()
            self._pop(pos)
            if found is not None:
                return found
        return None


def _search_task(args):
    g, cand, size, first, max_nodes = args
    return _Search(g, cand, max_nodes).run(size, first)


def _search_size(g: Graph, cand: tuple[int, ...], size: int, limits: SearchLimits):
    if limits.jobs <= 1 or size == 0 or len(cand) <= size:
        return _Search(g, cand, limits.max_nodes).run(size)
    firsts = range(len(cand) - size + 1)
    tasks = [(g, cand, size, f, limits.max_nodes) for f in firsts]
    with ProcessPoolExecutor(max_workers=limits.jobs) as pool:
        for found in pool.map(_search_task, tasks):
            # map preserves order, so the first hit is the lexicographic minimum
            if found is not None:
                return found
    return None


def _check_caps(g: Graph, cand: EdgeSet, k: int, limits: SearchLimits) -> None:
    if k > limits.max_k:
        raise SearchCapExceeded(f"budget {k} exceeds max-k {limits.max_k}", g.m)
    if len(cand) > limits.max_candidates:
        raise SearchCapExceeded(
            f"{len(cand)} candidate edges exceed max-candidates {limits.max_candidates}",
            g.m,
        )


def decide(
    g: Graph,
    k: int,
    limits: SearchLimits = SearchLimits(),
    prune: bool = True,
) -> bool:
    """Whether ``g`` has an edge-irregulator of at most ``k`` edges."""
    if k < 0:
        raise ValueError("budget must be non-negative")
    if k == 0:
        return is_locally_irregular(g)
    if k >= g.m:
        return True
    return find_irregulator(g, k, limits, prune) is not None


def find_irregulator(
    g: Graph,
    k: int,
    limits: SearchLimits = SearchLimits(),
    prune: bool = True,
) -> tuple[int, ...] | None:
    """Smallest, then lexicographically first, irregulator of size <= k."""
    if is_locally_irregular(g):
        return ()
    if k < 1:
        return None
    cand = candidate_edges(g, k) if prune else EdgeSet(tuple(range(g.m)))
    if prune:
        _check_caps(g, cand, k, limits)
    for size in range(1, min(k, len(cand)) + 1):
        found = _search_size(g, cand.members, size, limits)
        if found is not None:
            return found
    return None


def solve_exact(g: Graph, limits: SearchLimits = SearchLimits()) -> IrregulatorResult:
    start = time.perf_counter()
    if is_locally_irregular(g):
        return IrregulatorResult(0, EdgeSet(), "oracle", time.perf_counter() - start)
    for k in range(1, g.m):
        cand = candidate_edges(g, k)
        if k > len(cand):
            continue
        _check_caps(g, cand, k, limits)
        found = _search_size(g, cand.members, k, limits)
        if found is not None:
            return IrregulatorResult(
                k, EdgeSet(found), "oracle", time.perf_counter() - start
            )
    # every smaller size failed: only the full edge set remains
    return IrregulatorResult(
        g.m, EdgeSet(tuple(range(g.m))), "oracle", time.perf_counter() - start
    )

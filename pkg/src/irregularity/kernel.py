"""Kernel for the decision problem parameterized by budget plus max degree.

The kernel keeps every vertex within distance ``2k + 1`` of a conflict and
pads degree deficits on the border with fresh leaves, so that the reduced
instance has the same answer for budget ``k``.
"""

from __future__ import annotations

import enum
from dataclasses import dataclass, field

from .graph import Graph, bfs_distances, conflict_report
from .generators import path


class KernelStatus(enum.Enum):
    ALREADY_IRREGULAR = "already-irregular"
    NO_INSTANCE = "no-instance"
    KERNEL = "kernel"


LEAF_LABEL = "L"


@dataclass(frozen=True)
class KernelResult:
    status: KernelStatus
    k: int
    kernel: Graph | None = None
    added_leaves: int = 0
    # kernel vertex i < len(origin) stands for original vertex origin[i]
    origin: tuple[int, ...] = ()
    stats: dict[str, int] = field(default_factory=dict)


def kernel_vertex_bound(k: int, max_degree: int) -> int:
    return 2 * k * (2 * max_degree + 1) * max_degree ** (2 * k + 1)


def no_instance_artifact() -> tuple[Graph, int]:
    """The trivial no-instance (K_2, 0)."""
    return path(2), 0


def kernelize(g: Graph, k: int) -> KernelResult:
    if k < 1:
        raise ValueError("budget must be at least 1")
    report = conflict_report(g)
    delta = g.max_degree
    stats = {"conflicts": report.count, "max_degree": delta}
    if report.count == 0:
        return KernelResult(KernelStatus.ALREADY_IRREGULAR, k, stats=stats)
    # one deletion resolves at most 2*delta - 1 conflicts
    if report.count > k * (2 * delta - 1):
        return KernelResult(KernelStatus.NO_INSTANCE, k, stats=stats)

    sources = {x for e in report.conflict_edges for x in g.edges[e]}
    assert sources, "conflict edges always have endpoints"
    dist = bfs_distances(g, sources, limit=2 * k + 1)
    keep = sorted(dist)
    pos = {v: i for i, v in enumerate(keep)}
    edges = [(pos[u], pos[v]) for u, v in g.edges if u in pos and v in pos]
    inner_deg = [0] * len(keep)
    for a, b in edges:
        inner_deg[a] += 1
        inner_deg[b] += 1
    nxt = len(keep)
    for i, v in enumerate(keep):
        for _ in range(len(g.adjacency[v]) - inner_deg[i]):
            edges.append((i, nxt))
            nxt += 1
    labels = [str(v) for v in keep] + [LEAF_LABEL] * (nxt - len(keep))
    h = Graph.from_edges(nxt, edges, labels)
    bound = kernel_vertex_bound(k, delta)
    stats.update(kernel_vertices=h.n, kernel_edges=h.m, vertex_bound=bound)
    if h.n > bound:
        raise AssertionError(f"kernel has {h.n} vertices, above the bound {bound}")
    return KernelResult(
        KernelStatus.KERNEL,
        k,
        kernel=h,
        added_leaves=nxt - len(keep),
        origin=tuple(keep),
        stats=stats,
    )

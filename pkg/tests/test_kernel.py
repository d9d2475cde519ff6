import pytest

from helpers import random_bounded_connected
from irregularity.generators import cycle, figure1, path, star_subdivision
from irregularity.graph import Graph, conflict_report, edge_distance
from irregularity.kernel import (
    LEAF_LABEL,
    KernelStatus,
    kernel_vertex_bound,
    kernelize,
    no_instance_artifact,
)
from irregularity.oracle import SearchLimits, decide


def leaves_of(h):
    return {v for v in range(h.n) if h.labels[v] == LEAF_LABEL}


def test_irregular_input():
    assert kernelize(path(3), 1).status is KernelStatus.ALREADY_IRREGULAR
    assert kernelize(star_subdivision([1, 1, 1]), 4).status is KernelStatus.ALREADY_IRREGULAR


def test_c6_no_instance():
    res = kernelize(cycle(6), 1)
    assert res.status is KernelStatus.NO_INSTANCE
    assert res.kernel is None
    assert not decide(cycle(6), 1)


def test_p4_kernel_is_p4():
    res = kernelize(path(4), 1)
    assert res.status is KernelStatus.KERNEL
    assert res.kernel == path(4)
    assert res.added_leaves == 0
    assert decide(res.kernel, 1) and decide(path(4), 1)


def test_budget_must_be_positive():
    with pytest.raises(ValueError):
        kernelize(path(4), 0)


def test_artifact():
    g, k = no_instance_artifact()
    assert g == path(2) and k == 0
    assert not decide(g, k)


def caterpillar_with_tail(spine=10):
    """Spine of alternating degree 3/4 with leaves, plus a tail s0-a-b-c.

    The only conflict is the tail edge ab.
    """
    edges = [(i, i + 1) for i in range(spine - 1)]
    nxt = spine
    for i in range(spine):
        inner = (i > 0) + (i < spine - 1) + (i == 0)
        for _ in range((3 if i % 2 == 0 else 4) - inner):
            edges.append((i, nxt))
            nxt += 1
    a, b, c = nxt, nxt + 1, nxt + 2
    edges += [(0, a), (a, b), (b, c)]
    return Graph.from_edges(nxt + 3, edges), (a, b)


def test_caterpillar_is_cut_and_padded():
    g, conflict = caterpillar_with_tail()
    assert g.pairs(conflict_report(g).conflict_edges) == [conflict]
    res = kernelize(g, 1)
    h = res.kernel
    assert res.status is KernelStatus.KERNEL
    assert {0, 1, 2} <= set(res.origin) and 3 not in res.origin
    # spine vertex 2 is at distance 3: its neighbour 3 and its own leaf are cut
    assert res.added_leaves == 2
    assert decide(h, 1) and decide(g, 1)
    assert h.n < g.n


def test_stats_and_bound():
    res = kernelize(figure1(), 1)
    assert res.stats["conflicts"] == 1
    assert res.stats["vertex_bound"] == kernel_vertex_bound(1, 5) == 2 * 11 * 5**3
    assert res.kernel.n <= res.stats["vertex_bound"]


def check_kernel(g, k):
    res = kernelize(g, k)
    if res.status is not KernelStatus.KERNEL:
        return res
    h = res.kernel
    leaves = leaves_of(h)
    assert len(leaves) == res.added_leaves
    assert all(len(h.adjacency[v]) == 1 for v in leaves)
    for e in conflict_report(h).conflict_edges:
        assert not set(h.edges[e]) & leaves
    for i, v in enumerate(res.origin):
        assert len(h.adjacency[i]) == len(g.adjacency[v])
    assert h.n <= kernel_vertex_bound(k, g.max_degree)
    return res


def test_equivalence_random(rng):
    limits = SearchLimits(max_candidates=200)
    checked = 0
    while checked < 120:
        g = random_bounded_connected(rng, rng.randint(2, 12), rng.uniform(0.0, 0.4), 4)
        for k in (1, 2):
            res = check_kernel(g, k)
            if res.status is KernelStatus.KERNEL:
                assert decide(res.kernel, k, limits) == decide(g, k, limits), (g.edges, k)
            elif res.status is KernelStatus.NO_INSTANCE:
                assert not decide(g, k, limits)
            else:
                assert decide(g, 0)
        checked += 1


def test_kernel_on_long_sparse_graphs(rng):
    for _ in range(20):
        g = random_bounded_connected(rng, rng.randint(30, 60), 0.05, 3)
        for k in (1, 2):
            res = check_kernel(g, k)
            if res.status is KernelStatus.KERNEL:
                conflicts = conflict_report(g).conflict_edges
                kept = set(res.origin)
                for v in range(g.n):
                    near = any(
                        min(edge_distance(g, c, f) for f in range(g.m) if v in g.edges[f]) <= 2 * k + 1
                        for c in conflicts
                    ) if g.adjacency[v] else False
                    assert (v in kept) == near

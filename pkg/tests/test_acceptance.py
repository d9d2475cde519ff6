"""End-to-end acceptance criteria, one test per criterion.

Each test prints a single ``PASS`` or ``FAIL`` line with its wall time.
"""

import itertools
import random
import time
from fractions import Fraction

import pytest

from helpers import random_bounded_connected
from irregularity.bounds import (
    bipartite_deg1_irregulator,
    conflict_lower_bound,
    maxcut_bound,
    maxcut_irregulator,
)
from irregularity.closed_forms import build_T_k, ie_cycle, ie_path, triangular_decomposition
from irregularity.generators import (
    all_trees,
    complete,
    complete_bipartite,
    cycle,
    double_subdivision,
    figure1,
    is_path_graph,
    path,
    random_tree,
)
from irregularity.graph import Graph, bipartition, delete_edges, is_connected, is_locally_irregular
from irregularity.harness import conjecture_sweep, standard_suite
from irregularity.kernel import KernelStatus, kernel_vertex_bound, kernelize
from irregularity.oracle import SearchLimits, decide, solve_exact
from irregularity.tree_dp import ie_tree
from irregularity.vertex_cover import decompose, ie_vc_fpt

pytestmark = pytest.mark.acceptance

WIDE = SearchLimits(max_k=40, max_candidates=200)


@pytest.fixture
def criterion(capsys):
    """Run a criterion body under a time limit and print one verdict line."""

    def run(number, title, limit, body):
        start = time.perf_counter()
        error = None
        try:
            body()
        except AssertionError as exc:
            error = exc
        elapsed = time.perf_counter() - start
        if error is None and elapsed > limit:
            error = AssertionError(f"took {elapsed:.1f}s, limit {limit}s")
        verdict = "PASS" if error is None else "FAIL"
        with capsys.disabled():
            print(f"\n[criterion {number:2d}] {verdict} {title} ({elapsed:.2f}s)")
        if error is not None:
            raise error

    return run


def _irregular_after(g, s):
    return is_locally_irregular(delete_edges(g, s))


def _tree_corpus():
    rng = random.Random(4)
    trees = [t for n in range(1, 10) for t in all_trees(n)]
    trees += [random_tree(rng.randint(10, 14), seed=rng.randrange(10**9)) for _ in range(200)]
    return trees


def test_c01_path_and_cycle_formulas(criterion):
    def body():
        for n in range(2, 13):
            assert ie_path(n) == solve_exact(path(n), WIDE).value, f"P{n}"
        for n in range(3, 13):
            assert ie_cycle(n) == solve_exact(cycle(n), WIDE).value, f"C{n}"

    criterion(1, "path and cycle formulas equal the exact search", 30, body)


def test_c02_named_values(criterion):
    def body():
        named = [
            ("K2", path(2), 1),
            ("C4", cycle(4), 2),
            ("P3", path(3), 0),
            ("K2,3", complete_bipartite(2, 3), 0),
            ("K3", complete(3), 1),
            ("K6", complete(6), 4),
            ("figure1", figure1(), 1),
        ]
        named += [(f"K{n},{n}", complete_bipartite(n, n), n) for n in range(1, 5)]
        for name, g, value in named:
            res = solve_exact(g, WIDE)
            assert res.value == value, name
            assert _irregular_after(g, res.certificate), name
        assert conflict_lower_bound(figure1()) == 1

    criterion(2, "named values reproduced by the exact search", 60, body)


def test_c03_layered_construction(criterion):
    def body():
        for k in range(1, 31):
            t = build_T_k(k)
            assert is_locally_irregular(t), k
            assert t.m == triangular_decomposition(k).m_k == k * (k + 1) * (k - 1) * (3 * k + 2) // 24
        k6 = complete(6)
        assert not any(_irregular_after(k6, s) for s in itertools.combinations(range(15), 3))
        assert any(_irregular_after(k6, s) for s in itertools.combinations(range(15), 4))
        assert not decide(k6, 3) and decide(k6, 4)

    criterion(3, "layered T_k graphs and K6 needs exactly 4", 60, body)


def test_c04_tree_dp_exact(criterion):
    def body():
        trees = _tree_corpus()
        assert sum(1 for t in trees if t.n >= 10) >= 200
        for t in trees:
            res = ie_tree(t)
            assert res.value == solve_exact(t, WIDE).value, t.edges
            assert _irregular_after(t, res.certificate)
        rng = random.Random(8)
        for i in range(50):
            t = random_tree(rng.randint(5, 30), seed=i)
            assert len({ie_tree(t, root=r).value for r in range(t.n)}) == 1

    criterion(4, "tree DP equals the exact search and is root invariant", 300, body)


def test_c05_non_path_trees_within_third(criterion):
    def body():
        bad = [
            t.edges
            for t in _tree_corpus()
            if t.m and not is_path_graph(t) and Fraction(ie_tree(t).value) > Fraction(t.m, 3)
        ]
        assert not bad, bad[:3]

    criterion(5, "non-path trees need at most m/3 deletions", 60, body)


def test_c06_kernel_equivalence(criterion):
    def body():
        rng = random.Random(6)
        graphs = 0
        kernels = 0
        while graphs < 120:
            g = random_bounded_connected(rng, rng.randint(2, 12), rng.uniform(0.0, 0.4), 4)
            assert is_connected(g) and g.max_degree <= 4
            graphs += 1
            for k in (1, 2):
                kr = kernelize(g, k)
                truth = decide(g, k, WIDE)
                if kr.status is KernelStatus.KERNEL:
                    kernels += 1
                    assert kr.kernel.n <= kernel_vertex_bound(k, g.max_degree)
                    assert decide(kr.kernel, k, WIDE) == truth, (g.edges, k)
                elif kr.status is KernelStatus.NO_INSTANCE:
                    assert not truth
                else:
                    assert truth
        assert kernels >= 100

    criterion(6, "kernel preserves the answer and respects its size bound", 300, body)


def _planted_cover_graph(rng):
    n, c = rng.randint(2, 12), rng.randint(1, 3)
    while True:
        edges = [(u, v) for u in range(c) for v in range(u + 1, n) if rng.random() < 0.5]
        g = Graph.from_edges(n, edges)
        if is_connected(g):
            return g


def test_c07_vertex_cover_fpt(criterion):
    def body():
        rng = random.Random(7)
        done = 0
        while done < 100:
            g = _planted_cover_graph(rng)
            dec = decompose(g)
            if dec.vc > 3 or len(dec.e1) > 18:
                continue
            res = ie_vc_fpt(g)
            assert res.value == solve_exact(g, WIDE).value, g.edges
            assert len(set(res.certificate) & set(dec.e2)) <= dec.vc**2
            done += 1

    criterion(7, "vertex-cover algorithm equals the exact search", 600, body)


def _pendant_bipartite(rng):
    while True:
        n = rng.randint(2, 40)
        t = random_tree(n, seed=rng.randrange(10**9))
        side = bipartition(t)
        extra = [
            (u, v)
            for u in range(n)
            for v in range(u + 1, n)
            if side[u] != side[v] and not t.has_edge(u, v) and rng.random() < 0.08
        ]
        g = Graph.from_edges(n, list(t.edges) + extra)
        if 1 in g.degrees:
            return g


def test_c08_constructive_bounds(criterion):
    def body():
        rng = random.Random(8)
        for _ in range(50):
            g = _pendant_bipartite(rng)
            s = bipartite_deg1_irregulator(g)
            assert len(s) <= g.n - 1 and _irregular_after(g, s)
        for _ in range(50):
            g = random_bounded_connected(rng, rng.randint(2, 50), rng.uniform(0.0, 0.3), 8)
            s = maxcut_irregulator(g)
            assert len(s) <= maxcut_bound(g) and _irregular_after(g, s)

    criterion(8, "constructive irregulators verify within their bounds", 60, body)


def test_c09_double_subdivision(criterion):
    def body():
        h3 = double_subdivision(complete(3))
        assert solve_exact(h3, WIDE).value == 3 == h3.m // 3
        h4 = double_subdivision(complete(4))
        assert solve_exact(h4, WIDE).value >= 6

    criterion(9, "double subdivisions of K3 and K4", 120, body)


def test_c10_conjecture_sweep(criterion):
    def body():
        sweep = conjecture_sweep(standard_suite(), deterministic=True)
        assert not sweep.skipped, sweep.skipped
        assert sweep.max_excess == Fraction(4, 3)
        assert sweep.witness == "cycle(n=5)"
        assert all(r.excess <= 2 for r in sweep.instances)
        cycles = {r.n: r.excess for r in sweep.instances if r.family == "cycle"}
        for n, excess in cycles.items():
            if n % 3 == 2:
                assert excess == Fraction(4, 3), n
        at_max = {r.params for r in sweep.instances if r.excess == sweep.max_excess}
        assert {f"cycle(n={n})" for n in cycles if n % 3 == 2} <= at_max

    criterion(10, "sweep maximum excess is 4/3, first at C5, never above 2", 600, body)

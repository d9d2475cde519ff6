import csv
import json
from fractions import Fraction

import pytest

from helpers import random_graph
from irregularity.generators import (
    FamilySpec,
    complete,
    complete_bipartite,
    cycle,
    double_subdivision,
    figure1,
    path,
    random_tree,
)
from irregularity.graph import Graph, delete_edges, is_locally_irregular, relabel
from irregularity.harness import (
    METHODS,
    closed_form,
    conjecture_sweep,
    instance_report,
    kernel_solve,
    solve_auto,
    standard_suite,
    verify,
    write_csv,
    write_jsonl,
)
from irregularity.oracle import SearchLimits, solve_exact


def shuffled(g, rng):
    perm = list(range(g.n))
    rng.shuffle(perm)
    return relabel(g, perm)


def test_long_path_uses_formula():
    res = solve_auto(path(100))
    assert res.value == 33 and res.method == "formula"


def test_large_random_tree_uses_dp():
    res = solve_auto(random_tree(5000, 1))
    assert res.method == "tree-dp"
    assert res.value is not None


def test_k6_by_triangular_formula():
    res = solve_auto(complete(6))
    assert res.value == 4 and res.method == "formula"


@pytest.mark.parametrize("g", [path(7), cycle(8), complete_bipartite(3, 4), complete_bipartite(3, 3), complete(6)])
def test_recognition_survives_relabelling(g, rng):
    h = shuffled(g, rng)
    res = closed_form(h)
    assert res is not None
    assert res.value == solve_exact(g, SearchLimits(max_k=20)).value
    assert is_locally_irregular(delete_edges(h, res.certificate))


def test_recognition_rejects_near_misses():
    assert closed_form(complete(4)) is None  # 4 is not triangular
    k33_minus = delete_edges(complete_bipartite(3, 3), [0])
    assert closed_form(k33_minus) is None
    assert closed_form(figure1()) is None
    assert closed_form(Graph.from_edges(4, [(0, 1), (2, 3)])) is None


def test_kernel_route(rng):
    for _ in range(30):
        g = random_graph(rng, rng.randint(2, 9), rng.uniform(0.2, 0.7))
        res = kernel_solve(g)
        assert res.value == solve_exact(g, SearchLimits(max_k=40)).value
        assert is_locally_irregular(delete_edges(g, res.certificate))


def test_auto_agrees_with_exact(rng):
    for _ in range(80):
        g = shuffled(random_graph(rng, rng.randint(1, 9), rng.uniform(0.1, 0.8)), rng)
        res = solve_auto(g)
        assert res.value == solve_exact(g, SearchLimits(max_k=40)).value
        assert is_locally_irregular(delete_edges(g, res.certificate))


@pytest.mark.parametrize("method", METHODS)
def test_every_method_on_p4(method):
    res = solve_auto(path(4), method=method)
    assert res.value == 1


def test_unknown_method():
    with pytest.raises(ValueError):
        solve_auto(path(4), method="magic")


def test_disconnected_instances_are_summed():
    g = Graph.from_edges(7, [(0, 1), (2, 3), (3, 4), (4, 5), (5, 6), (2, 6)])
    res = solve_auto(g)
    assert res.value == 1 + 3


def test_capped_instance_degrades_to_range():
    g = complete(9)
    res = solve_auto(g, SearchLimits(max_candidates=5, max_k=2), vc_cap=3)
    assert res.value is None
    assert res.lower <= res.upper
    assert is_locally_irregular(delete_edges(g, res.certificate))


def test_verify_examples():
    c4 = cycle(4)
    opposite = [c4.edge_id(0, 1), c4.edge_id(2, 3)]
    bad = verify(c4, opposite)
    assert not bad.ok
    u, v, d = bad.witness
    assert d == 1
    assert verify(c4, [c4.edge_id(0, 1), c4.edge_id(1, 2)]).ok
    g = complete(5)
    assert verify(g, range(g.m)).ok


def test_sweep_c5_and_k2():
    sweep = conjecture_sweep([FamilySpec("cycle", {"n": 5}), FamilySpec("path", {"n": 2})])
    assert [r.excess for r in sweep.instances] == [Fraction(4, 3), Fraction(2, 3)]
    assert sweep.max_excess == Fraction(4, 3)
    assert sweep.witness == "cycle(n=5)"
    assert sweep.positive == 2


def test_sweep_non_path_trees_have_no_excess():
    specs = [s for s in standard_suite(random_trees=0) if s.family == "tree"]
    sweep = conjecture_sweep(specs)
    for r in sweep.instances:
        if r.max_degree > 2:
            assert r.excess <= 0


def test_instance_report_fields():
    r = instance_report(FamilySpec("complete", {"n": 6}), deterministic=True, certificates=True)
    d = r.to_dict()
    assert d["schema"] == 1
    assert (d["n"], d["m"], d["max_degree"], d["conf"], d["ie"]) == (6, 15, 5, 15, 4)
    assert d["excess"] == "-1"
    assert d["elapsed"] is None
    assert len(d["certificate"]) == 4
    assert d["lower"] <= 4 <= d["upper"]


def test_jsonl_deterministic_and_append(tmp_path):
    specs = standard_suite(random_trees=5, seed=9)[:40]
    a, b = tmp_path / "a.jsonl", tmp_path / "b.jsonl"
    write_jsonl(conjecture_sweep(specs, deterministic=True).instances, a)
    write_jsonl(conjecture_sweep(specs, deterministic=True, jobs=2).instances, b)
    assert a.read_bytes() == b.read_bytes()
    write_jsonl(conjecture_sweep(specs[:3], deterministic=True).instances, a)
    lines = a.read_text().splitlines()
    assert len(lines) == 43
    assert all(json.loads(x)["schema"] == 1 for x in lines)


def test_csv_mirrors_jsonl(tmp_path):
    reports = conjecture_sweep(
        [FamilySpec("cycle", {"n": 5}), FamilySpec("figure1")], deterministic=True, certificates=True
    ).instances
    write_csv(reports, tmp_path / "r.csv")
    write_jsonl(reports, tmp_path / "r.jsonl")
    rows = list(csv.DictReader(open(tmp_path / "r.csv")))
    objs = [json.loads(x) for x in open(tmp_path / "r.jsonl")]
    assert list(rows[0]) == list(reports[0].FIELDS)
    for row, obj in zip(rows, objs):
        assert row["params"] == obj["params"]
        assert row["excess"] == obj["excess"]
        assert int(row["ie"]) == obj["ie"]
    assert len(rows[0]["certificate"].split()) == 3
    assert len(rows[1]["certificate"].split()) == 1


def test_double_subdivisions():
    assert solve_auto(double_subdivision(complete(3))).value == 3
    assert solve_auto(double_subdivision(complete(4))).value >= 6

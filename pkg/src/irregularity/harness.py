"""Solver dispatch, certificate verification and the m/3 + c sweep."""

from __future__ import annotations

import csv
import json
import logging
import time
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Any, Iterable, Sequence

from . import closed_forms as cf
from .bounds import bound_report, combine_components, component_graphs
from .generators import FamilySpec, all_trees, gen, is_path_graph
from .graph import (
    EdgeSet,
    Graph,
    bipartition,
    conflict_report,
    delete_edges,
    first_conflict,
    is_connected,
    is_locally_irregular,
)
from .kernel import KernelStatus, LEAF_LABEL, kernelize
from .oracle import IrregulatorResult, SearchCapExceeded, SearchLimits, find_irregulator, solve_exact
from .tree_dp import ie_tree
from .vertex_cover import DEFAULT_VC_CAP, ie_vc_fpt

log = logging.getLogger(__name__)

SCHEMA = 1
METHODS = ("auto", "formula", "tree-dp", "kernel", "oracle", "vc-fpt", "constructive")
VC_MAX_ORDER = 60


@dataclass(frozen=True)
class VerifyResult:
    ok: bool
    witness: tuple[int, int, int] | None = None


def verify(g: Graph, s: Iterable[int]) -> VerifyResult:
    """Check that ``g - s`` is locally irregular; report one conflict if not."""
    s = g.edge_set(s)
    bad = first_conflict(g, s)
    return VerifyResult(bad is None, bad)


# --- structural recognition ---------------------------------------------------


def _walk(g: Graph, start: int) -> list[int]:
    order = [start]
    prev = -1
    while True:
        nxt = [w for w in g.adjacency[order[-1]] if w != prev and w != order[0]]
        if not nxt:
            return order
        prev = order[-1]
        order.append(min(nxt))


def _mapped(g: Graph, canon: Graph, cert: EdgeSet, mapping: Sequence[int]) -> EdgeSet:
    return EdgeSet.of(
        g.edge_id(mapping[a], mapping[b]) for a, b in canon.pairs(cert)
    )


def closed_form(g: Graph) -> IrregulatorResult | None:
    """Exact result for a connected path, cycle, K_{a,b} or triangular K_n."""
    from .generators import complete_bipartite, cycle, path

    start = time.perf_counter()
    n, m = g.n, g.m
    if n < 2 or not is_connected(g):
        return None
    deg = g.degrees
    res = None
    if is_path_graph(g):
        order = _walk(g, min(v for v in range(n) if deg[v] == 1))
        res = cf.ie_path(n), _mapped(g, path(n), cf.path_certificate(n), order)
    elif n >= 3 and all(d == 2 for d in deg):
        order = _walk(g, 0)
        res = cf.ie_cycle(n), _mapped(g, cycle(n), cf.cycle_certificate(n), order)
    elif (side := bipartition(g)) is not None:
        first = [v for v in range(n) if side[v] == side[0]]
        second = [v for v in range(n) if side[v] != side[0]]
        if m == len(first) * len(second):
            a, b = len(first), len(second)
            value, cert = cf.ie_complete_bipartite(a, b)
            res = value, _mapped(g, complete_bipartite(a, b), cert, first + second)
    elif m == n * (n - 1) // 2 and cf.triangular_index(n) is not None:
        res = cf.ie_complete_triangular(n)
    if res is None:
        return None
    value, cert = res
    if len(cert) != value or not is_locally_irregular(delete_edges(g, cert)):
        raise AssertionError("closed-form certificate failed verification")
    return IrregulatorResult(value, cert, "formula", time.perf_counter() - start)


def is_forest(g: Graph) -> bool:
    from .graph import connected_components

    return g.m == g.n - len(connected_components(g))


# --- dispatch -----------------------------------------------------------------


def kernel_solve(g: Graph, limits: SearchLimits = SearchLimits()) -> IrregulatorResult:
    """Smallest k whose kernel is a yes-instance, with a certificate on ``g``."""
    from .bounds import conflict_lower_bound

    start = time.perf_counter()
    if is_locally_irregular(g):
        return IrregulatorResult(0, EdgeSet(), "kernel", 0.0)
    for k in range(max(1, conflict_lower_bound(g)), g.m + 1):
        if k > limits.max_k:
            raise SearchCapExceeded(f"budget {k} exceeds max-k {limits.max_k}", g.m)
        kr = kernelize(g, k)
        if kr.status is KernelStatus.NO_INSTANCE:
            continue
        h = kr.kernel
        found = find_irregulator(h, k, limits)
        if found is None:
            continue
        # smaller budgets were all refuted, so any witness has size exactly k
        pairs = h.pairs(found)
        cert = None
        if all(LEAF_LABEL not in (h.labels[a], h.labels[b]) for a, b in pairs):
            cert = EdgeSet.of(g.edge_id(kr.origin[a], kr.origin[b]) for a, b in pairs)
        if cert is None or len(cert) != k or not is_locally_irregular(delete_edges(g, cert)):
            log.warning("kernel witness did not lift; solving the full instance")
            res = solve_exact(g, limits)
            if res.value != k:
                raise AssertionError("kernel answer disagrees with the exact search")
            cert = res.certificate
        return IrregulatorResult(k, cert, "kernel", time.perf_counter() - start)
    return IrregulatorResult(g.m, EdgeSet(tuple(range(g.m))), "kernel", time.perf_counter() - start)


def _solve_connected(g: Graph, limits: SearchLimits, vc_cap: int) -> IrregulatorResult:
    res = closed_form(g)
    if res is not None:
        return res
    if is_forest(g):
        return ie_tree(g)
    try:
        return kernel_solve(g, limits)
    except SearchCapExceeded as exc:
        log.info("kernel search gave up: %s", exc)
    if g.n <= VC_MAX_ORDER:
        try:
            return ie_vc_fpt(g, cap=vc_cap)
        except SearchCapExceeded as exc:
            log.info("vertex-cover search gave up: %s", exc)
    return constructive_range(g)


def constructive_range(g: Graph) -> IrregulatorResult:
    start = time.perf_counter()
    rep = bound_report(g)
    value = rep.lower if rep.lower == rep.upper else None
    return IrregulatorResult(
        value, rep.certificate, "constructive", time.perf_counter() - start,
        lower=rep.lower, upper=rep.upper,
    )


def solve_auto(
    g: Graph,
    limits: SearchLimits = SearchLimits(),
    vc_cap: int = DEFAULT_VC_CAP,
    method: str = "auto",
) -> IrregulatorResult:
    """Exact value when some exact route fits its caps, else a bound range."""
    start = time.perf_counter()
    if method == "oracle":
        return solve_exact(g, limits)
    if method == "tree-dp":
        return ie_tree(g)
    if method == "vc-fpt":
        return ie_vc_fpt(g, cap=vc_cap)
    if method == "kernel":
        return kernel_solve(g, limits)
    if method == "constructive":
        return constructive_range(g)
    if method == "formula":
        res = closed_form(g)
        if res is None:
            raise ValueError("graph is not a path, cycle, K_{a,b} or triangular K_n")
        return res
    if method != "auto":
        raise ValueError(f"unknown method {method!r}")

    if is_locally_irregular(g):
        return IrregulatorResult(0, EdgeSet(), "formula", time.perf_counter() - start)
    parts = component_graphs(g)
    if len(parts) == 1 and parts[0][0].n == g.n:
        return _solve_connected(g, limits, vc_cap)
    results = [_solve_connected(c, limits, vc_cap) for c, _ in parts]
    methods = "+".join(sorted({r.method for r in results}))
    if all(r.exact for r in results):
        merged = combine_components(g, EdgeSet(), results)
        return IrregulatorResult(merged.value, merged.certificate, methods, time.perf_counter() - start)
    rep = constructive_range(g)
    lower = sum(r.value if r.exact else r.lower for r in results)
    upper = sum(r.value if r.exact else r.upper for r in results)
    return IrregulatorResult(
        None, rep.certificate, methods, time.perf_counter() - start,
        lower=max(lower, rep.lower), upper=min(upper, rep.upper),
    )


# --- reports ------------------------------------------------------------------


@dataclass
class InstanceReport:
    family: str
    params: str
    n: int
    m: int
    max_degree: int
    conf: int
    ie: int | None
    method: str
    lower: int | None
    upper: int | None
    excess: Fraction | None
    elapsed: float | None = None
    certificate: list[tuple[int, int]] | None = None
    note: str | None = None

    FIELDS = (
        "schema", "family", "params", "n", "m", "max_degree", "conf", "ie",
        "method", "lower", "upper", "excess", "elapsed", "certificate", "note",
    )

    def to_dict(self) -> dict[str, Any]:
        return {
            "schema": SCHEMA,
            "family": self.family,
            "params": self.params,
            "n": self.n,
            "m": self.m,
            "max_degree": self.max_degree,
            "conf": self.conf,
            "ie": self.ie,
            "method": self.method,
            "lower": self.lower,
            "upper": self.upper,
            "excess": None if self.excess is None else str(self.excess),
            "elapsed": self.elapsed,
            "certificate": None if self.certificate is None else [list(p) for p in self.certificate],
            "note": self.note,
        }


def instance_report(
    label: FamilySpec | tuple[str, str, Graph],
    limits: SearchLimits = SearchLimits(),
    vc_cap: int = DEFAULT_VC_CAP,
    deterministic: bool = False,
    certificates: bool = False,
) -> InstanceReport:
    if isinstance(label, FamilySpec):
        g = gen(label).graph
        family, params = label.family, label.describe()
    else:
        family, params, g = label
    start = time.perf_counter()
    rep = bound_report(g)
    note = None
    try:
        res = solve_auto(g, limits, vc_cap)
    except SearchCapExceeded as exc:
        res = IrregulatorResult(None, rep.certificate, "skipped", lower=rep.lower, upper=rep.upper)
        note = f"skipped: {exc}"
    ie = res.value
    if ie is None and note is None:
        note = "skipped: no exact solver within caps"
    lower, upper = rep.lower, rep.upper
    if ie is not None and not (lower <= ie <= upper):
        raise AssertionError(f"{params}: value {ie} outside bounds [{lower}, {upper}]")
    excess = None if ie is None else Fraction(ie) - Fraction(g.m, 3)
    cert = None
    if certificates and ie is not None:
        cert = [(u + 1, v + 1) for u, v in g.pairs(res.certificate)]
    return InstanceReport(
        family=family,
        params=params,
        n=g.n,
        m=g.m,
        max_degree=g.max_degree,
        conf=conflict_report(g).count,
        ie=ie,
        method=res.method,
        lower=lower,
        upper=upper,
        excess=excess,
        elapsed=None if deterministic else round(time.perf_counter() - start, 6),
        certificate=cert,
        note=note,
    )


@dataclass
class SweepReport:
    instances: list[InstanceReport]
    max_excess: Fraction | None
    witness: str | None
    positive: int
    skipped: list[str] = field(default_factory=list)

    def summary(self) -> dict[str, Any]:
        return {
            "schema": SCHEMA,
            "instances": len(self.instances),
            "max_excess": None if self.max_excess is None else str(self.max_excess),
            "witness": self.witness,
            "positive_excess": self.positive,
            "skipped": len(self.skipped),
        }


def _report_task(args):
    return instance_report(*args)


def conjecture_sweep(
    specs: Sequence[FamilySpec | tuple[str, str, Graph]],
    limits: SearchLimits = SearchLimits(),
    vc_cap: int = DEFAULT_VC_CAP,
    jobs: int = 1,
    deterministic: bool = False,
    certificates: bool = False,
) -> SweepReport:
    args = [(s, limits, vc_cap, deterministic, certificates) for s in specs]
    if jobs > 1:
        with ProcessPoolExecutor(max_workers=jobs) as pool:
            reports = list(pool.map(_report_task, args, chunksize=8))
    else:
        reports = [_report_task(a) for a in args]
    best = witness = None
    positive = 0
    skipped = []
    for r in reports:
        if r.excess is None:
            skipped.append(r.params)
            continue
        if r.excess > 0:
            positive += 1
        if best is None or r.excess > best:
            best, witness = r.excess, r.params
    return SweepReport(reports, best, witness, positive, skipped)


def standard_suite(random_trees: int = 200, seed: int = 0) -> list[FamilySpec]:
    """Families the m/3 + c sweep runs over by default."""
    specs: list[FamilySpec] = []
    specs += [FamilySpec("path", {"n": n}) for n in range(2, 31)]
    specs += [FamilySpec("cycle", {"n": n}) for n in range(3, 31)]
    specs += [
        FamilySpec("complete_bipartite", {"a": a, "b": b})
        for a in range(1, 6)
        for b in range(a, 6)
    ]
    specs += [FamilySpec("complete", {"n": n}) for n in (3, 6, 10)]
    for n in range(2, 10):
        count = sum(1 for _ in all_trees(n))
        specs += [FamilySpec("tree", {"n": n, "index": i}) for i in range(count)]
    specs += [
        FamilySpec("random_tree", {"n": 10 + i % 5}, seed=seed + i)
        for i in range(random_trees)
    ]
    specs += [
        FamilySpec("double_subdivision", {"base": FamilySpec("complete", {"n": n})})
        for n in (3, 4)
    ]
    specs.append(FamilySpec("figure1"))
    return specs


def write_jsonl(reports: Iterable[InstanceReport], path, append: bool = True) -> None:
    with open(path, "a" if append else "w", encoding="utf-8") as fh:
        for r in reports:
            fh.write(json.dumps(r.to_dict(), sort_keys=True) + "\n")


def write_csv(reports: Iterable[InstanceReport], path) -> None:
    with open(path, "w", encoding="utf-8", newline="") as fh:
        w = csv.DictWriter(fh, fieldnames=InstanceReport.FIELDS)
        w.writeheader()
        for r in reports:
            row = r.to_dict()
            if row["certificate"] is not None:
                row["certificate"] = " ".join(f"{u}-{v}" for u, v in row["certificate"])
            w.writerow(row)

"""Exact irregulator of a forest by bottom-up dynamic programming.

For every vertex ``u`` with ``k`` children two tables are kept:

* ``down[d]`` (``d`` in ``0..k``): fewest deletions inside the subtree of
  ``u`` when the edge to the parent is deleted and ``u`` ends with degree ``d``;
* ``up[d]`` (``d`` in ``1..k+1``): the same with the parent edge kept, ``d``
  counting that edge.

A child ``v`` whose edge to ``u`` is kept must end with a degree different
from ``u``'s, so it contributes ``min(up_v[x] for x != d)``; a deleted child
contributes ``min(down_v)`` plus the deleted edge itself.  Choosing which
children to keep is a selection of the smallest ``in - out`` differences.
"""

from __future__ import annotations

import math
import time
from dataclasses import dataclass

from .graph import EdgeSet, Graph, GraphError, connected_components, delete_edges, is_locally_irregular
from .oracle import IrregulatorResult

INF = math.inf


class NotAForestError(GraphError):
    pass


@dataclass
class DpTables:
    """``down[d]`` for d in 0..k and ``up[d - 1]`` for d in 1..k+1."""

    down: list[float]
    up: list[float]

    @classmethod
    def leaf(cls) -> "DpTables":
        return cls(down=[0], up=[0])

    def up_at(self, d: int) -> float:
        return self.up[d - 1] if 1 <= d <= len(self.up) else INF

    def best_down(self) -> float:
        return min(self.down)


def _summary(t: DpTables):
    """(min_up, argmin_up, second_min_up, min_down) of a child's tables."""
    best = second = INF
    arg = -1
    for i, val in enumerate(t.up):
        if val < best:
            second = best
            best, arg = val, i + 1
        elif val < second:
            second = val
    return best, arg, second, min(t.down)


def _selection(summaries, exclude: int):
    """Children ordered by in - out for a parent ending with degree ``exclude``.

    Returns the list of (diff, child index) for children with a finite
    ``in`` value, sorted with ties on the lowest index.
    """
    diffs = []
    for i, (best, arg, second, out) in enumerate(summaries):
        val = second if arg == exclude else best
        if val < INF:
            diffs.append((val - out, i))
    diffs.sort()
    return diffs


def combine(children: list[DpTables], k: int | None = None) -> DpTables:
    """Tables of a vertex from the tables of its ``k`` children."""
    if k is None:
        k = len(children)
    if k != len(children):
        raise ValueError("child count does not match the number of tables")
    if k == 0:
        return DpTables.leaf()
    summaries = [_summary(t) for t in children]
    out_total = sum(s[3] for s in summaries)
    down = [INF] * (k + 1)
    up = [INF] * (k + 1)
    for x in range(0, k + 2):
        diffs = _selection(summaries, x)
        prefix = [0]
        for dv, _ in diffs:
            prefix.append(prefix[-1] + dv)
        # parent edge deleted: x kept children, k - x deleted edges
        if x <= k and x < len(prefix):
            down[x] = (k - x) + out_total + prefix[x]
        # parent edge kept: x - 1 kept children
        if x >= 1 and x - 1 < len(prefix):
            up[x - 1] = (k - (x - 1)) + out_total + prefix[x - 1]
    return DpTables(down=down, up=up)


def _rooted_order(g: Graph, root: int):
    """Parent array and a preorder of the component containing ``root``."""
    parent = {root: -1}
    order = [root]
    i = 0
    while i < len(order):
        u = order[i]
        i += 1
        for w in g.adjacency[u]:
            if w != parent[u]:
                if w in parent:
                    raise NotAForestError("graph contains a cycle")
                parent[w] = u
                order.append(w)
    return parent, order


def tree_tables(g: Graph, root: int) -> tuple[dict[int, DpTables], dict[int, int], list[int]]:
    parent, order = _rooted_order(g, root)
    tables: dict[int, DpTables] = {}
    for u in reversed(order):
        kids = [w for w in g.adjacency[u] if w != parent[u]]
        tables[u] = combine([tables[w] for w in kids])
    return tables, parent, order


def _reconstruct(g: Graph, tables, parent, root: int, deleted: list[int]) -> None:
    root_t = tables[root]
    best = min(root_t.down)
    stack = [(root, "down", root_t.down.index(best))]
    while stack:
        u, kind, d = stack.pop()
        kids = [w for w in g.adjacency[u] if w != parent[u]]
        if not kids:
            continue
        summaries = [_summary(tables[w]) for w in kids]
        kept_count = d if kind == "down" else d - 1
        diffs = _selection(summaries, d)
        kept = {i for _, i in diffs[:kept_count]}
        for i, w in enumerate(kids):
            t = tables[w]
            if i in kept:
                target = summaries[i][2] if summaries[i][1] == d else summaries[i][0]
                dw = next(x for x in range(1, len(t.up) + 1) if x != d and t.up[x - 1] == target)
                stack.append((w, "up", dw))
            else:
                deleted.append(g.edge_id(u, w))
                stack.append((w, "down", t.down.index(min(t.down))))


def ie_tree(t: Graph, root: int | None = None) -> IrregulatorResult:
    """Exact value and certificate for a forest.

    ``root`` chooses the root of its own component; the other components
    are rooted at their lowest vertex.
    """
    start = time.perf_counter()
    comps = connected_components(t)
    if t.m != t.n - len(comps):
        raise NotAForestError("graph contains a cycle")
    total = 0
    deleted: list[int] = []
    for comp in comps:
        if len(comp) == 1:
            continue
        r = root if root is not None and root in comp else comp[0]
        tables, parent, _ = tree_tables(t, r)
        value = min(tables[r].down)
        total += int(value)
        _reconstruct(t, tables, parent, r, deleted)
    cert = EdgeSet(tuple(deleted))
    if len(cert) != total or not is_locally_irregular(delete_edges(t, cert)):
        raise AssertionError("tree DP certificate failed verification")
    return IrregulatorResult(total, cert, "tree-dp", time.perf_counter() - start)

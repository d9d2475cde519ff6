"""Exact values and certificates for paths, cycles, K_{a,b} and triangular K_n.

Certificates are edge-id sets of the canonical graphs built in
:mod:`irregularity.generators` (path ``0-1-...-(n-1)``, cycle closing with
edge ``(0, n-1)``, ``K_{a,b}`` with first side ``0..a-1``).
"""

from __future__ import annotations

from dataclasses import dataclass
from math import isqrt

from .graph import EdgeSet, Graph
from .generators import complete, complete_bipartite, cycle, path


class NotTriangularError(ValueError):
    pass


@dataclass(frozen=True)
class TriangularDecomposition:
    k: int
    t_k: int
    m_k: int


def ie_path(n: int) -> int:
    if n < 2:
        raise ValueError("path order must be at least 2")
    r = n % 3
    if r == 1:
        return (n - 1) // 3
    if r == 2:
        return -(-(n - 1) // 3)
    return (n - 1) // 3


def path_certificate(n: int) -> EdgeSet:
    """Edges e_3, e_6, ... of P_n (plus e_{n-1} when n-1 = 1 mod 3).

    Edge e_i joins vertices i-1 and i, which is edge id i-1.
    """
    if n < 2:
        raise ValueError("path order must be at least 2")
    picks = list(range(3, n, 3))
    if (n - 1) % 3 == 1:
        picks.append(n - 1)
    return EdgeSet(tuple(i - 1 for i in picks))


def ie_cycle(n: int) -> int:
    if n < 3:
        raise ValueError("cycle order must be at least 3")
    return ie_path(n) + 1


def cycle_certificate(n: int) -> EdgeSet:
    """Delete the closing edge (0, n-1), then apply the path certificate."""
    c = cycle(n)
    closing = c.edge_id(0, n - 1)
    p = path(n)
    rest = [c.edge_id(*p.edges[e]) for e in path_certificate(n)]
    return EdgeSet(tuple([closing] + rest))


def ie_complete_bipartite(a: int, b: int) -> tuple[int, EdgeSet]:
    if a < 1 or b < 1:
        raise ValueError("both sides must be at least 1")
    if a != b:
        return 0, EdgeSet()
    g = complete_bipartite(a, b)
    return a, EdgeSet(tuple(g.incident_edges(0)))


def triangular_index(n: int) -> int | None:
    if n < 1:
        return None
    k = (isqrt(8 * n + 1) - 1) // 2
    return k if k * (k + 1) // 2 == n else None


def triangular_decomposition(k: int) -> TriangularDecomposition:
    if k < 1:
        raise ValueError("index must be at least 1")
    num = k * (k + 1) * (k - 1) * (3 * k + 2)
    assert num % 24 == 0
    return TriangularDecomposition(k, k * (k + 1) // 2, num // 24)


def build_T_k(k: int) -> Graph:
    """Densest locally irregular graph on t_k vertices.

    Layer i (i = 1..k) takes the next i ids and is joined to every vertex of
    the earlier layers.
    """
    if k < 1:
        raise ValueError("index must be at least 1")
    edges = []
    placed = 0
    for i in range(1, k + 1):
        layer = range(placed, placed + i)
        edges += [(u, w) for w in layer for u in range(placed)]
        placed += i
    return Graph.from_edges(placed, edges)


def ie_complete_triangular(n: int) -> tuple[int, EdgeSet]:
    k = triangular_index(n)
    if k is None:
        raise NotTriangularError(
            f"K_{n}: order is not triangular; use the exact search instead"
        )
    dec = triangular_decomposition(k)
    kn = complete(n)
    kept = {kn.edge_id(u, v) for u, v in build_T_k(k).edges}
    cert = EdgeSet(tuple(i for i in range(kn.m) if i not in kept))
    value = n * (n - 1) // 2 - dec.m_k
    assert len(cert) == value
    return value, cert

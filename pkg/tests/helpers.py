import itertools
import random

from irregularity.graph import Graph, delete_edges, is_connected, is_locally_irregular


def brute_force_ie(g: Graph) -> int:
    """Smallest irregulator by plain enumeration of all edge subsets."""
    for k in range(g.m + 1):
        for s in itertools.combinations(range(g.m), k):
            if is_locally_irregular(delete_edges(g, s)):
                return k
    raise AssertionError("unreachable: deleting everything always works")


def random_graph(rng: random.Random, n: int, p: float) -> Graph:
    edges = [(u, v) for u in range(n) for v in range(u + 1, n) if rng.random() < p]
    return Graph.from_edges(n, edges)


def random_connected_graph(rng: random.Random, n: int, p: float, max_degree=None) -> Graph:
    while True:
        g = random_graph(rng, n, p)
        if is_connected(g) and (max_degree is None or g.max_degree <= max_degree):
            return g


def random_bounded_tree(rng: random.Random, n: int, max_degree: int) -> Graph:
    """Random recursive tree where no vertex exceeds ``max_degree``."""
    deg = [0] * n
    open_ = [0]
    edges = []
    for v in range(1, n):
        i = rng.randrange(len(open_))
        u = open_[i]
        edges.append((u, v))
        deg[u] += 1
        deg[v] = 1
        if deg[u] == max_degree:
            open_[i] = open_[-1]
            open_.pop()
        open_.append(v)
    return Graph.from_edges(n, edges)


def random_bounded_connected(rng: random.Random, n: int, p: float, max_degree: int) -> Graph:
    """Bounded-degree random tree plus chords kept while the degree cap allows."""
    t = random_bounded_tree(rng, n, max_degree)
    deg = t.degrees
    edges = list(t.edges)
    present = set(edges)
    for u in range(n):
        for v in range(u + 1, n):
            if (u, v) in present or deg[u] >= max_degree or deg[v] >= max_degree:
                continue
            if rng.random() < p / max(1, n // 10):
                edges.append((u, v))
                deg[u] += 1
                deg[v] += 1
    return Graph.from_edges(n, edges)

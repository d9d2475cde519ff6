"""Graph families used throughout the solvers, tests and conjecture sweep."""

from __future__ import annotations

import random
from dataclasses import dataclass, field
from typing import Any, Iterator

from .graph import Graph, is_connected

FAMILIES = (
    "path",
    "cycle",
    "complete",
    "complete_bipartite",
    "star_subdivision",
    "bistar_subdivision",
    "random_tree",
    "random_connected",
    "double_subdivision",
    "figure1",
    "t_k",
    "tree",
)


class GeneratorError(ValueError):
    pass


@dataclass(frozen=True)
class FamilySpec:
    family: str
    params: dict[str, Any] = field(default_factory=dict)
    seed: int | None = None

    def describe(self) -> str:
        parts = [f"{k}={v}" for k, v in sorted(self.params.items()) if k != "base"]
        if "base" in self.params:
            parts.insert(0, f"base={self.params['base'].describe()}")
        if self.seed is not None:
            parts.append(f"seed={self.seed}")
        return f"{self.family}({', '.join(parts)})"


@dataclass(frozen=True)
class Generated:
    graph: Graph
    spec: FamilySpec
    meta: dict[str, Any] = field(default_factory=dict)


def path(n: int) -> Graph:
    if n < 1:
        raise GeneratorError("path needs n >= 1")
    return Graph.from_edges(n, [(i, i + 1) for i in range(n - 1)])


def cycle(n: int) -> Graph:
    if n < 3:
        raise GeneratorError("cycle needs n >= 3")
    return Graph.from_edges(n, [(i, i + 1) for i in range(n - 1)] + [(0, n - 1)])


def complete(n: int) -> Graph:
    if n < 1:
        raise GeneratorError("complete graph needs n >= 1")
    return Graph.from_edges(n, [(u, v) for u in range(n) for v in range(u + 1, n)])


def complete_bipartite(a: int, b: int) -> Graph:
    """First side is ``0..a-1``, second side ``a..a+b-1``."""
    if a < 1 or b < 1:
        raise GeneratorError("complete bipartite graph needs both sides >= 1")
    return Graph.from_edges(a + b, [(u, a + v) for u in range(a) for v in range(b)])


def star_subdivision(legs: list[int]) -> Graph:
    """Centre 0 with one pendant path per entry of ``legs`` (its edge count)."""
    if not legs or any(x < 1 for x in legs):
        raise GeneratorError("legs must be positive lengths")
    edges = []
    nxt = 1
    for length in legs:
        prev = 0
        for _ in range(length):
            edges.append((prev, nxt))
            prev = nxt
            nxt += 1
    return Graph.from_edges(nxt, edges)


def bistar_subdivision(legs_u: list[int], legs_v: list[int]) -> Graph:
    """Adjacent centres 0 and 1, each with pendant paths (both degree >= 3)."""
    if len(legs_u) < 2 or len(legs_v) < 2:
        raise GeneratorError("each centre needs at least two legs")
    if any(x < 1 for x in legs_u + legs_v):
        raise GeneratorError("legs must be positive lengths")
    edges = [(0, 1)]
    nxt = 2
    for centre, legs in ((0, legs_u), (1, legs_v)):
        for length in legs:
            prev = centre
            for _ in range(length):
                edges.append((prev, nxt))
                prev = nxt
                nxt += 1
    return Graph.from_edges(nxt, edges)


def prufer_decode(seq: list[int], n: int) -> list[tuple[int, int]]:
    """Edges of the labelled tree on ``0..n-1`` with the given Prufer sequence."""
    if n < 2:
        return []
    if len(seq) != n - 2:
        raise GeneratorError("Prufer sequence must have length n - 2")
    count = [1] * n
    for x in seq:
        count[x] += 1
    edges = []
    ptr = 0
    while count[ptr] != 1:
        ptr += 1
    leaf = ptr
    for x in seq:
        edges.append((leaf, x))
        count[x] -= 1
        if x < ptr and count[x] == 1:
            leaf = x
        else:
            ptr += 1
            while count[ptr] != 1:
                ptr += 1
            leaf = ptr
    edges.append((leaf, n - 1))
    return edges


def random_tree(n: int, seed: int) -> Graph:
    if n < 1:
        raise GeneratorError("tree needs n >= 1")
    rng = random.Random(seed)
    seq = [rng.randrange(n) for _ in range(max(n - 2, 0))]
    return Graph.from_edges(n, prufer_decode(seq, n))


def random_connected(
    n: int,
    p: float,
    seed: int,
    max_degree: int | None = None,
    retries: int = 1000,
) -> Graph:
    """Binomial random graph conditioned on connectivity (and a degree cap)."""
    if n < 1 or not 0.0 <= p <= 1.0:
        raise GeneratorError("need n >= 1 and 0 <= p <= 1")
    rng = random.Random(seed)
    pairs = [(u, v) for u in range(n) for v in range(u + 1, n)]
    for _ in range(retries):
        edges = [e for e in pairs if rng.random() < p]
        g = Graph.from_edges(n, edges)
        if max_degree is not None and g.max_degree > max_degree:
            continue
        if is_connected(g):
            return g
    raise GeneratorError(f"no connected sample after {retries} draws")


def double_subdivision(base: Graph) -> Graph:
    """Replace each edge uv of ``base`` by the path u-a-b-v.

    Original vertices keep their ids; the pair (a, b) of base edge ``i`` is
    ``(n + 2i, n + 2i + 1)``, with ``a`` next to the smaller endpoint.
    """
    n = base.n
    edges = []
    for i, (u, v) in enumerate(base.edges):
        a, b = n + 2 * i, n + 2 * i + 1
        edges += [(u, a), (a, b), (b, v)]
    return Graph.from_edges(n + 2 * base.m, edges)


def figure1() -> Graph:
    """Two adjacent degree-4 centres whose other six neighbours carry four leaves.

    Vertex 0 is the centre with neighbours 1 (the other centre), 2, 3, 4;
    vertex 1 has neighbours 0, 5, 6, 7.  Vertices 2..7 each get four leaves.
    """
    edges = [(0, 1), (0, 2), (0, 3), (0, 4), (1, 5), (1, 6), (1, 7)]
    nxt = 8
    for mid in range(2, 8):
        for _ in range(4):
            edges.append((mid, nxt))
            nxt += 1
    return Graph.from_edges(nxt, edges)


def t_k(k: int) -> Graph:
    from .closed_forms import build_T_k

    return build_T_k(k)


def all_trees(n: int) -> Iterator[Graph]:
    """Every tree on ``n`` vertices up to isomorphism, in a fixed order."""
    import networkx as nx

    if n == 1:
        yield Graph.from_edges(1, [])
        return
    for t in nx.nonisomorphic_trees(n):
        yield Graph.from_edges(n, list(t.edges()))


def tree_catalog(n: int, index: int) -> Graph:
    """The ``index``-th tree of :func:`all_trees` for order ``n``."""
    for i, t in enumerate(all_trees(n)):
        if i == index:
            return t
    raise GeneratorError(f"there is no tree #{index} on {n} vertices")


def is_path_graph(g: Graph) -> bool:
    deg = g.degrees
    return g.n >= 2 and g.m == g.n - 1 and max(deg) <= 2 and is_connected(g)


def gen(spec: FamilySpec) -> Generated:
    p = dict(spec.params)
    fam = spec.family
    meta: dict[str, Any] = {}
    try:
        if fam == "path":
            g = path(int(p["n"]))
        elif fam == "cycle":
            g = cycle(int(p["n"]))
        elif fam == "complete":
            g = complete(int(p["n"]))
        elif fam == "complete_bipartite":
            g = complete_bipartite(int(p["a"]), int(p["b"]))
        elif fam == "star_subdivision":
            g = star_subdivision(_int_list(p["legs"]))
        elif fam == "bistar_subdivision":
            g = bistar_subdivision(_int_list(p["legs_u"]), _int_list(p["legs_v"]))
        elif fam == "random_tree":
            g = random_tree(int(p["n"]), _seed(spec))
        elif fam == "random_connected":
            md = p.get("max_degree")
            g = random_connected(
                int(p["n"]), float(p["p"]), _seed(spec), None if md is None else int(md)
            )
        elif fam == "double_subdivision":
            base = p["base"]
            base_graph = gen(base).graph if isinstance(base, FamilySpec) else base
            g = double_subdivision(base_graph)
            meta["double_subdivision_of_m"] = base_graph.m
        elif fam == "figure1":
            g = figure1()
        elif fam == "t_k":
            g = t_k(int(p["k"]))
        elif fam == "tree":
            g = tree_catalog(int(p["n"]), int(p["index"]))
        else:
            raise GeneratorError(f"unknown family {fam!r}")
    except KeyError as exc:
        raise GeneratorError(f"family {fam!r} is missing parameter {exc.args[0]!r}") from None
    return Generated(g, spec, meta)


def _int_list(value) -> list[int]:
    if isinstance(value, str):
        return [int(x) for x in value.replace(",", " ").split()]
    return [int(x) for x in value]


def _seed(spec: FamilySpec) -> int:
    if spec.seed is None:
        raise GeneratorError(f"family {spec.family!r} needs a seed")
    return spec.seed

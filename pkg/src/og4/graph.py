"""Simple graphs, bi-Cayley and coset-graph builders, exporters."""

from __future__ import annotations

import os
from dataclasses import dataclass, field
from typing import Sequence

import numpy as np

from .permgroup import Permutation, PermGroup, compose, inverse
from .zoo import ProductGroup

DEFAULT_VERTEX_BUDGET = 10**6
DEFAULT_COSET_BOUND = 10**5


class BudgetExceeded(RuntimeError):
    pass


def env_budget(name: str, default: int) -> int:
    raw = os.environ.get(f"OG4_BUDGET_{name.upper()}")
    if raw is None:
        return default
    value = int(raw)
    if value <= 0:
        raise ValueError(f"OG4_BUDGET_{name.upper()} must be positive")
    return value


@dataclass
class Graph:
    """Undirected simple graph with sorted neighbour lists."""

    n: int
    adjacency: list[list[int]]
    labels: list[str] | None = None

    def __post_init__(self):
        for v, nbrs in enumerate(self.adjacency):
            if v in nbrs:
                raise ValueError(f"loop at vertex {v}")
            if len(set(nbrs)) != len(nbrs):
                raise ValueError(f"repeated neighbour at vertex {v}")
        self.adjacency = [sorted(nbrs) for nbrs in self.adjacency]

    @classmethod
    def from_edges(cls, n: int, edges, labels=None) -> "Graph":
        adj: list[set] = [set() for _ in range(n)]
        for u, v in edges:
            if u == v:
                raise ValueError(f"loop at vertex {u}")
            adj[u].add(v)
            adj[v].add(u)
        return cls(n, [sorted(s) for s in adj], labels)

    @classmethod
    def from_array(cls, nbrs: np.ndarray, labels=None) -> "Graph":
        """From an ``n x d`` array of neighbours (possibly with repeats)."""
        edges = set()
        for u, row in enumerate(nbrs.tolist()):
            for v in row:
                if u != v:
                    edges.add((min(u, v), max(u, v)))
        return cls.from_edges(len(nbrs), sorted(edges), labels)

    def edges(self) -> list[tuple[int, int]]:
        return [(u, v) for u in range(self.n) for v in self.adjacency[u] if u < v]

    @property
    def edge_count(self) -> int:
        return sum(len(a) for a in self.adjacency) // 2

    def degrees(self) -> list[int]:
        return [len(a) for a in self.adjacency]

    def valency(self) -> int | None:
        d = set(self.degrees())
        return d.pop() if len(d) == 1 else None

    def is_connected(self) -> bool:
        if self.n == 0:
            return True
        seen = {0}
        stack = [0]
        while stack:
            u = stack.pop()
            for v in self.adjacency[u]:
                if v not in seen:
                    seen.add(v)
                    stack.append(v)
        return len(seen) == self.n

    def bipartition(self) -> tuple[list[int], list[int]] | None:
        colour = [-1] * self.n
        for s in range(self.n):
            if colour[s] >= 0:
                continue
            colour[s] = 0
            stack = [s]
            while stack:
                u = stack.pop()
                for v in self.adjacency[u]:
                    if colour[v] < 0:
                        colour[v] = 1 - colour[u]
                        stack.append(v)
                    elif colour[v] == colour[u]:
                        return None
        return ([v for v in range(self.n) if colour[v] == 0],
                [v for v in range(self.n) if colour[v] == 1])

    def adjacency_array(self) -> np.ndarray:
        d = self.valency()
        if d is None:
            raise ValueError("graph is not regular")
        return np.array(self.adjacency, dtype=np.intp).reshape(self.n, d)

    def is_automorphism(self, x: Permutation) -> bool:
        if x.degree != self.n:
            return False
        if self.valency() is not None and self.n:
            adj = self.adjacency_array()
            img = np.sort(x.array[adj], axis=1)
            return bool(np.array_equal(img, adj[x.array]))
        return all(sorted(x(v) for v in self.adjacency[u]) == self.adjacency[x(u)]
                   for u in range(self.n))

    def to_networkx(self):
        import networkx as nx
        g = nx.Graph()
        g.add_nodes_from(range(self.n))
        g.add_edges_from(self.edges())
        return g


# ---------------------------------------------------------------------------
# bi-Cayley graphs


@dataclass
class BiCayleySpec:
    """``BiCay(N, R, L, S)``; elements are indices into ``N``."""

    N: ProductGroup
    R: Sequence[int] = ()
    L: Sequence[int] = ()
    S: Sequence[int] = ()
    vertex_budget: int = field(default_factory=lambda: env_budget("vertices", DEFAULT_VERTEX_BUDGET))

    def check(self) -> None:
        e = self.N.identity
        for name, X in (("R", self.R), ("L", self.L)):
            xs = set(int(x) for x in X)
            if e in xs:
                raise ValueError(f"{name} contains the identity")
            if {int(self.N.inv(x)) for x in xs} != xs:
                raise ValueError(f"{name} is not inverse-closed")


def build_bicayley(spec: BiCayleySpec) -> Graph:
    """Vertices ``h_0 = h`` and ``h_1 = |N| + h``.

    Edges: ``{h_0, g_0}`` for ``g h^-1 in R``, ``{h_1, g_1}`` for
    ``g h^-1 in L`` and spokes ``{h_0, g_1}`` for ``g h^-1 in S``.
    """
    spec.check()
    N = spec.N
    m = N.order
    if 2 * m > spec.vertex_budget:
        raise BudgetExceeded(f"{2 * m} vertices exceed the budget {spec.vertex_budget}")
    h = np.arange(m)
    edges = set()

    def add(xs, off_u, off_v):
        for x in xs:
            g = N.mul(np.full(m, int(x)), h)
            for u, v in zip((h + off_u).tolist(), (g + off_v).tolist()):
                if u != v:
                    edges.add((min(u, v), max(u, v)))

    add(spec.R, 0, 0)
    add(spec.L, m, m)
    add(spec.S, 0, m)
    labels = [f"{N.label(x)}_{e}" for e in (0, 1) for x in range(m)]
    return Graph.from_edges(2 * m, sorted(edges), labels)


def right_multiplication(N: ProductGroup, n: int) -> Permutation:
    """Vertex permutation ``x_e -> (x n)_e`` of a bi-Cayley graph."""
    h = np.arange(N.order)
    img = N.mul(h, np.full(N.order, n))
    return Permutation(np.concatenate([img, img + N.order]))


def bicay_automorphism(N: ProductGroup, alpha, swap: bool) -> Permutation:
    """``sigma_alpha`` (``swap=False``) or ``delta_alpha`` (``swap=True``)."""
    m = N.order
    img = alpha.apply(N, np.arange(m))
    if swap:
        return Permutation(np.concatenate([img + m, img]))
    return Permutation(np.concatenate([img, img + m]))


# ---------------------------------------------------------------------------
# coset graphs


@dataclass
class CosetGraphSpec:
    """``Cos(G, S, g)``: right cosets of ``S`` in ``G``."""

    G: PermGroup
    S: PermGroup
    g: Permutation
    index_bound: int = field(default_factory=lambda: env_budget("cosets", DEFAULT_COSET_BOUND))
    max_subgroup_order: int = 8

    def s_elements(self) -> list[Permutation]:
        if self.S.order() > self.max_subgroup_order:
            raise ValueError(f"|S| = {self.S.order()} exceeds {self.max_subgroup_order}")
        return sorted(self.S.elements())


@dataclass
class CosetGraph:
    graph: Graph
    representatives: list[Permutation]
    keys: dict[bytes, int]
    s_elements: list[Permutation]

    def coset_key(self, x: Permutation) -> bytes:
        return coset_key(self.s_elements, x)

    def index(self, x: Permutation) -> int:
        return self.keys[self.coset_key(x)]

    def action(self, h: Permutation) -> Permutation:
        """Right multiplication by ``h`` on the cosets."""
        return Permutation([self.index(compose(r, h)) for r in self.representatives])


def coset_key(s_elements: Sequence[Permutation], x: Permutation) -> bytes:
    """Canonical key of ``Sx``: the smallest image array among its elements."""
    return min(compose(s, x).key() for s in s_elements)


def _coset_neighbour_steps(s_elements, g) -> list[Permutation]:
    """Elements ``t`` with neighbours of ``Sx`` equal to ``{S t x}``."""
    ginv = inverse(g)
    steps = {}
    for s in s_elements:
        for h in (g, ginv):
            t = compose(h, s)
            steps.setdefault(t.key(), t)
    return list(steps.values())


def build_coset_graph(spec: CosetGraphSpec) -> CosetGraph:
    """BFS over the cosets reachable from ``S``.

    ``Sx ~ Sy`` iff ``x y^-1 in SgS u Sg^-1S``, so the neighbours of ``Sx``
    are the cosets ``S g^{+-1} s x``.  Cosets not reachable from ``S`` are
    added afterwards by right multiplication with generators of ``G``.
    """
    s_el = spec.s_elements()
    steps = _coset_neighbour_steps(s_el, spec.g)
    deg = spec.G.degree
    reps: list[Permutation] = []
    keys: dict[bytes, int] = {}
    edges = set()

    def visit(x: Permutation) -> int:
        k = coset_key(s_el, x)
        if k not in keys:
            if len(reps) >= spec.index_bound:
                raise BudgetExceeded(f"more than {spec.index_bound} cosets")
            keys[k] = len(reps)
            reps.append(x)
        return keys[k]

    visit(Permutation.identity(deg))
    i = 0
    while True:
        while i < len(reps):
            x = reps[i]
            for t in steps:
                j = visit(compose(t, x))
                if j != i:
                    edges.add((min(i, j), max(i, j)))
            i += 1
        # cosets of other components
        before = len(reps)
        for r in list(reps):
            for h in spec.G.generators:
                visit(compose(r, h))
            if len(reps) > before:
                break
        if len(reps) == before:
            break
    graph = Graph.from_edges(len(reps), sorted(edges))
    return CosetGraph(graph, reps, keys, s_el)


@dataclass
class LocalNeighbourhood:
    graph: Graph
    root_degree: int
    inverse_in_double_coset: bool
    representatives: list[Permutation]


def local_coset_neighborhood(spec: CosetGraphSpec, radius: int) -> LocalNeighbourhood:
    """Ball of the given radius around the coset ``S`` (no global enumeration)."""
    if not 0 <= radius <= 4:
        raise ValueError("radius must be between 0 and 4")
    s_el = spec.s_elements()
    steps = _coset_neighbour_steps(s_el, spec.g)
    reps = [Permutation.identity(spec.G.degree)]
    keys = {coset_key(s_el, reps[0]): 0}
    dist = [0]
    edges = set()
    i = 0
    while i < len(reps):
        if dist[i] < radius:
            for t in steps:
                y = compose(t, reps[i])
                k = coset_key(s_el, y)
                if k not in keys:
                    keys[k] = len(reps)
                    reps.append(y)
                    dist.append(dist[i] + 1)
                j = keys[k]
                if j != i:
                    edges.add((min(i, j), max(i, j)))
        i += 1
    root_nbrs = {coset_key(s_el, compose(t, reps[0])) for t in steps}
    root_nbrs.discard(coset_key(s_el, reps[0]))
    ginv = inverse(spec.g)
    sgs = {compose(compose(s, spec.g), t).key() for s in s_el for t in s_el}
    graph = Graph.from_edges(len(reps), sorted(edges))
    return LocalNeighbourhood(graph, len(root_nbrs), ginv.key() in sgs, reps)


# ---------------------------------------------------------------------------
# export


def export(graph: Graph, fmt: str, orientation: Sequence[tuple[int, int]] | None = None) -> bytes:
    """Serialise as ``edge_list``, ``graph6`` or ``dot_oriented``."""
    if fmt == "edge_list":
        return "".join(f"{u} {v}\n" for u, v in graph.edges()).encode()
    if fmt == "graph6":
        import networkx as nx
        return nx.to_graph6_bytes(graph.to_networkx(), header=False)
    if fmt == "dot_oriented":
        if orientation is None:
            raise ValueError("dot_oriented needs an orientation")
        lines = ["digraph G {"]
        lines += [f"  {u} -> {v};" for u, v in sorted(orientation)]
        lines.append("}")
        return ("\n".join(lines) + "\n").encode()
    raise ValueError(f"unknown export format {fmt!r}")


def import_graph6(data: bytes) -> Graph:
    import networkx as nx
    g = nx.from_graph6_bytes(data.strip())
    return Graph.from_edges(g.number_of_nodes(), g.edges())

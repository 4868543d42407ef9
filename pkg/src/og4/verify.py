"""Checks for oriented 4-valent graph-group pairs.

Two kinds of pair are handled.  Explicit pairs carry the whole graph and
the group as vertex permutations; they may also carry a small faithful
model of the group (an :class:`~og4.permgroup.ActionMap`) so that group
theory runs on a few dozen points while orbit work runs on the vertices.
Coset-family data too large to build is handled by the certificate checks
at the bottom of the module.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from itertools import combinations
from typing import Sequence

import numpy as np
from scipy.sparse import coo_matrix
from scipy.sparse.csgraph import connected_components

from .graph import CosetGraphSpec, Graph, build_coset_graph
from .permgroup import (
    ActionMap,
    NotASubgroup,
    Permutation,
    PermGroup,
    compose,
    conjugate,
    inverse,
    is_core_free,
    normal_closure,
    orbits,
    restrict_to_blocks,
    wreath_parts,
)

DEFAULT_ORDER_BOUND = 20000


class VerifyError(ValueError):
    code = "verify-error"


class NotFourValent(VerifyError):
    code = "not-4-valent"


class NotConnected(VerifyError):
    code = "not-connected"


class NotOriented(VerifyError):
    code = "not-oriented"


class OrderBoundExceeded(VerifyError):
    code = "order-bound"


# ---------------------------------------------------------------------------
# pairs


@dataclass
class OrientedPair:
    """A graph with a group of automorphisms given on the vertices.

    ``model`` (optional) maps a compact faithful copy of the group onto the
    vertex action; its source generators correspond to ``generators``.
    """

    graph: Graph
    generators: list[Permutation]
    model: ActionMap | None = None
    base_vertex: int = 0
    orient_arc: tuple[int, int] | None = None
    name: str = ""

    def __post_init__(self):
        for i, x in enumerate(self.generators):
            if not self.graph.is_automorphism(x):
                raise VerifyError(f"generator {i} is not a graph automorphism")
        if self.model is not None and len(self.model.source.generators) != len(self.generators):
            raise VerifyError("model generators do not match vertex generators")
        self._group: PermGroup | None = None
        self._bip = None

    @property
    def group(self) -> PermGroup:
        """The group in its compact form (model if present, else vertex action)."""
        if self._group is None:
            self._group = self.model.source if self.model is not None else PermGroup(
                self.generators, self.graph.n)
        return self._group

    def order(self) -> int:
        return self.group.order()

    def to_vertices(self, x: Permutation) -> Permutation:
        return self.model(x) if self.model is not None else x

    def vertex_group_gens(self, sub: PermGroup) -> list[Permutation]:
        return [self.to_vertices(x) for x in sub.generators]

    @property
    def bipartition(self):
        if self._bip is None:
            self._bip = self.graph.bipartition()
        return self._bip

    def g_plus(self) -> PermGroup:
        """Index-two subgroup fixing both parts of the bipartition."""
        bip = self.bipartition
        if bip is None:
            raise VerifyError("graph is not bipartite")
        side = np.zeros(self.graph.n, dtype=bool)
        side[bip[1]] = True
        swaps = [bool(side[x(bip[0][0])]) for x in self.generators]
        return index_two_subgroup(self.group, swaps)


def index_two_subgroup(g: PermGroup, swaps: Sequence[bool]) -> PermGroup:
    """Kernel of the homomorphism to C2 given by the generator flags (Schreier's lemma)."""
    gens = g.generators
    t = next((x for x, s in zip(gens, swaps) if s), None)
    if t is None:
        return PermGroup(list(gens), g.degree)
    tinv = inverse(t)
    out = PermGroup([], g.degree)
    for x, s in zip(gens, swaps):
        # coset reps {1, t}
        if s:
            out.add_generator(compose(x, tinv))
            out.add_generator(compose(t, x))
        else:
            out.add_generator(x)
            out.add_generator(compose(compose(t, x), tinv))
    return out


# ---------------------------------------------------------------------------
# orientation


@dataclass
class OrientedResult:
    is_in_OG4: bool
    vertex_transitive: bool
    arc_orbit_count: int
    arc_orbit_sizes: list[int]
    edge_transitive: bool
    orientation: np.ndarray | None  # out-neighbours, shape (n, 2)
    vertex_stabilizer_orbits: list[list[int]]
    stabilizer_local_order: int

    def in_neighbours(self) -> list[list[int]]:
        n = len(self.orientation)
        ins: list[list[int]] = [[] for _ in range(n)]
        for u in range(n):
            for w in self.orientation[u].tolist():
                ins[w].append(u)
        return [sorted(x) for x in ins]

    def arcs(self) -> list[tuple[int, int]]:
        return [(u, int(w)) for u in range(len(self.orientation)) for w in self.orientation[u]]


def _arc_images(adj: np.ndarray, x: np.ndarray) -> np.ndarray:
    """Arc id ``4u + j`` of the image of every arc under ``x``."""
    n, d = adj.shape
    u = x[np.repeat(np.arange(n), d)]
    w = x[adj.reshape(-1)]
    hit = adj[u] == w[:, None]
    if not hit.any(axis=1).all():
        raise VerifyError("permutation is not an automorphism")
    return u * d + hit.argmax(axis=1)


def arc_orbits(graph: Graph, gens: Sequence[Permutation]) -> np.ndarray:
    """Label of the orbit of each arc ``4u + j`` (components of the arc action)."""
    adj = graph.adjacency_array()
    m = adj.size
    src = np.concatenate([np.arange(m)] * len(gens)) if gens else np.arange(0)
    dst = np.concatenate([_arc_images(adj, x.array) for x in gens]) if gens else np.arange(0)
    mat = coo_matrix((np.ones(len(src), dtype=np.int8), (src, dst)), shape=(m, m))
    _, labels = connected_components(mat, directed=True, connection="weak")
    return labels


def stabilizer_on_neighbourhood(graph: Graph, gens: Sequence[Permutation], v0: int) -> list[Permutation]:
    """Generators of the permutation group induced by ``G_{v0}`` on ``Gamma(v0)``.

    Schreier's lemma along a BFS tree of the vertex orbit; only the images
    of the neighbours of ``v0`` are tracked, so no group element is stored.
    Points of the returned permutations are positions in the sorted
    neighbour list of ``v0``.
    """
    adj = graph.adjacency_array()
    n, d = adj.shape
    nb = np.full((n, d), -1, dtype=np.intp)
    nb[v0] = adj[v0]
    arrays = [x.array for x in gens]
    queue = [v0]
    seen = np.zeros(n, dtype=bool)
    seen[v0] = True
    for x in queue:
        for g in arrays:
            y = int(g[x])
            if not seen[y]:
                seen[y] = True
                nb[y] = g[nb[x]]
                queue.append(y)
    reached = np.flatnonzero(seen)
    local = set()
    for g in arrays:
        a = g[nb[reached]]
        b = nb[g[reached]]
        pos = (a[:, :, None] == b[:, None, :]).argmax(axis=2)
        for row in np.unique(pos, axis=0):
            local.add(tuple(row.tolist()))
    return [Permutation(p) for p in sorted(local)]


def check_oriented(pair: OrientedPair) -> OrientedResult:
    """Decide membership of ``(Gamma, G)`` in OG(4)."""
    graph = pair.graph
    if graph.valency() != 4:
        raise NotFourValent("graph is not 4-valent")
    if not graph.is_connected():
        raise NotConnected("graph is not connected")
    v0 = pair.base_vertex
    adj = graph.adjacency_array()
    vorb = orbits(pair.generators, graph.n)
    labels = arc_orbits(graph, pair.generators)
    uniq, sizes = np.unique(labels, return_counts=True)
    rev = _reverse_arc_ids(adj)
    one_per_edge = bool(np.all(labels != labels[rev]))
    edge_transitive = len(uniq) <= 2 and (len(uniq) == 1 or one_per_edge)
    in_og4 = len(vorb) == 1 and len(uniq) == 2 and one_per_edge

    local = stabilizer_on_neighbourhood(graph, pair.generators, v0)
    lg = PermGroup(local, 4) if local else PermGroup.trivial(4)
    nbrs = adj[v0].tolist()
    stab_orbits = [sorted(nbrs[i] for i in o) for o in lg.orbits()]

    orientation = None
    if in_og4:
        if pair.orient_arc is not None:
            u, w = pair.orient_arc
        else:
            u, w = v0, nbrs[0]
        lab = labels[u * 4 + nbrs_index(adj, u, w)]
        chosen = (labels == lab).reshape(adj.shape)
        orientation = np.sort(np.where(chosen, adj, -1), axis=1)[:, 2:]
        if (orientation < 0).any():
            in_og4 = False
            orientation = None
    return OrientedResult(
        is_in_OG4=in_og4,
        vertex_transitive=len(vorb) == 1,
        arc_orbit_count=len(uniq),
        arc_orbit_sizes=sorted(sizes.tolist()),
        edge_transitive=edge_transitive,
        orientation=orientation,
        vertex_stabilizer_orbits=sorted(stab_orbits),
        stabilizer_local_order=lg.order(),
    )


def nbrs_index(adj: np.ndarray, u: int, w: int) -> int:
    hit = np.flatnonzero(adj[u] == w)
    if len(hit) != 1:
        raise VerifyError(f"{w} is not a neighbour of {u}")
    return int(hit[0])


def _reverse_arc_ids(adj: np.ndarray) -> np.ndarray:
    n, d = adj.shape
    w = adj.reshape(-1)
    u = np.repeat(np.arange(n), d)
    return w * d + (adj[w] == u[:, None]).argmax(axis=1)


# ---------------------------------------------------------------------------
# oriented s-arcs


@dataclass
class SArcReport:
    s: int
    group_order: int
    arc_counts: dict[int, int]
    orbit_sizes: dict[int, int]
    regular: bool
    stabilizer_chain: list[tuple[int, int]]  # (i, |G_{v0..v_{s-i}}|)

    @property
    def chain_is_two_power(self) -> bool:
        return all(order == 2 ** i for i, order in self.stabilizer_chain)


def _sarc_orbit_size(out: np.ndarray, gens: Sequence[np.ndarray], s: int) -> int:
    n = len(out)
    size = n << s
    seen = np.zeros(size, dtype=bool)

    def decode(codes):
        v = codes >> s
        verts = [v]
        for i in range(s):
            bit = (codes >> (s - 1 - i)) & 1
            v = out[v, bit]
            verts.append(v)
        return verts

    def encode(verts):
        code = verts[0].copy()
        for i in range(s):
            nxt = out[verts[i]]
            is1 = nxt[:, 1] == verts[i + 1]
            if not (is1 | (nxt[:, 0] == verts[i + 1])).all():
                raise NotOriented("a generator does not preserve the orientation")
            code = (code << 1) | is1
        return code

    start = encode(decode(np.array([0])))
    seen[start] = True
    frontier = start
    count = 1
    while len(frontier):
        verts = decode(frontier)
        new = []
        for g in gens:
            img = encode([g[v] for v in verts])
            img = np.unique(img[~seen[img]])
            seen[img] = True
            new.append(img)
        frontier = np.unique(np.concatenate(new)) if new else np.array([], dtype=np.intp)
        count += len(frontier)
    return count


def s_arc_report(pair: OrientedPair, oriented: OrientedResult) -> SArcReport:
    """Orbit sizes of G on oriented s-arcs for increasing s."""
    if not oriented.is_in_OG4 or oriented.orientation is None:
        raise NotOriented("pair is not in OG(4)")
    out = np.asarray(oriented.orientation)
    gens = [x.array for x in pair.generators]
    n = len(out)
    order = pair.order()
    counts, orbit = {}, {}
    s = 0
    while True:
        counts[s] = n << s
        orbit[s] = _sarc_orbit_size(out, gens, s)
        if orbit[s] != counts[s] or counts[s] > order:
            break
        s += 1
    s_max = s - 1
    chain = [(i, order // orbit[s_max - i]) for i in range(s_max + 1)]
    regular = orbit[s_max] == order == counts[s_max]
    return SArcReport(s_max, order, counts, orbit, regular, chain)


# ---------------------------------------------------------------------------
# normal subgroups and quotients


def _element_array(g: PermGroup) -> np.ndarray:
    return np.stack([x.array for x in g.elements()])


def minimal_normal_subgroups(g: PermGroup, order_bound: int = DEFAULT_ORDER_BOUND) -> list[PermGroup]:
    """Minimal normal subgroups of a small group by brute force.

    Every minimal normal subgroup is the normal closure of any of its
    elements of prime order, so it suffices to close one representative
    of each conjugacy class of prime-order elements and keep the
    inclusion-minimal results.
    """
    order = g.order()
    if order > order_bound:
        raise OrderBoundExceeded(f"|G| = {order} exceeds the bound {order_bound}")
    if order == 1:
        return []
    E = _element_array(g)
    m, deg = E.shape
    index = {row.tobytes(): i for i, row in enumerate(E)}
    ident = np.arange(deg)

    # prime order elements
    primes = [q for q in range(2, order + 1) if order % q == 0 and all(q % r for r in range(2, int(q ** 0.5) + 1))]
    prime_of = np.zeros(m, dtype=np.intp)
    is_id = (E == ident).all(axis=1)
    for q in primes:
        P = E.copy()
        for _ in range(q - 1):
            P = np.take_along_axis(E, P, axis=1)  # apply P then E
        prime_of[((P == ident).all(axis=1)) & ~is_id] = q

    # conjugacy classes via the conjugation action of the generators
    src, dst = [], []
    for h in g.generators:
        ha, hinv = h.array, inverse(h).array
        C = ha[E[:, hinv]]
        dst.extend(index[row.tobytes()] for row in C)
        src.extend(range(m))
    mat = coo_matrix((np.ones(len(src), dtype=np.int8), (src, dst)), shape=(m, m))
    _, cls = connected_components(mat, directed=True, connection="weak")

    reps: dict[int, int] = {}
    for i in np.flatnonzero(prime_of).tolist():
        reps.setdefault(int(cls[i]), i)
    candidates: list[PermGroup] = []
    for i in sorted(reps.values()):
        cand = normal_closure(g, [Permutation(E[i])])
        if not any(c.order() == cand.order() and c.is_subgroup_of(cand) for c in candidates):
            candidates.append(cand)
    minimal = [c for c in candidates
               if not any(d.order() < c.order() and d.is_subgroup_of(c) for d in candidates)]
    return sorted(minimal, key=lambda c: (c.order(), [x.images for x in c.generators]))


def normal_quotient(pair: OrientedPair, n: PermGroup) -> tuple[Graph, list[Permutation], list[list[int]]]:
    """Quotient graph on the N-orbits and the induced action of G on it.

    ``n`` lives in the same representation as ``pair.group``.
    """
    if n.is_trivial():
        raise VerifyError("normal subgroup is trivial")
    if not n.is_normal_in(pair.group):
        raise VerifyError("subgroup is not normal")
    vgens = pair.vertex_group_gens(n)
    orbs = orbits(vgens, pair.graph.n)
    block = np.empty(pair.graph.n, dtype=np.intp)
    for i, o in enumerate(orbs):
        block[o] = i
    edges = {(min(int(block[u]), int(block[v])), max(int(block[u]), int(block[v])))
             for u, v in pair.graph.edges() if block[u] != block[v]}
    q = Graph.from_edges(len(orbs), sorted(edges))
    induced = [Permutation([int(block[x(o[0])]) for o in orbs]) for x in pair.generators]
    return q, induced, orbs


def classify_quotient(q: Graph) -> str:
    if q.n == 1:
        return "K1"
    if q.n == 2 and q.edge_count == 1:
        return "K2"
    val = q.valency()
    if val == 2 and q.is_connected() and q.n >= 3:
        return f"Cycle({q.n})"
    if val == 4:
        return "OG4-candidate"
    return "other"


@dataclass
class BasicTypeResult:
    type: str
    minimal_normal: list[dict]


def basic_type(pair: OrientedPair, order_bound: int = DEFAULT_ORDER_BOUND,
               minimal: list[PermGroup] | None = None) -> BasicTypeResult:
    """Basic type read off the minimal normal subgroups.

    Every nontrivial normal subgroup contains a minimal one, and its orbits
    are unions of that one's orbits, so orbit counts of the minimal normal
    subgroups bound those of all normal subgroups.
    """
    if minimal is None:
        minimal = minimal_normal_subgroups(pair.group, order_bound)
    info = []
    for m in minimal:
        q, _, orbs = normal_quotient(pair, m)
        info.append({"order": m.order(), "orbits": len(orbs), "quotient": classify_quotient(q)})
    kinds = [d["quotient"] for d in info]
    if any(k in ("OG4-candidate", "other") for k in kinds):
        t = "not-basic"
    elif all(d["orbits"] == 1 for d in info):
        t = "quasiprimitive"
    elif all(d["orbits"] <= 2 for d in info):
        t = "biquasiprimitive"
    else:
        t = "cycle"
    return BasicTypeResult(t, info)


@dataclass
class SocleCase:
    case: str
    k: int
    T: str
    socle_order: int
    note: str = ""


def _prime_power(n: int) -> tuple[int, int] | None:
    for q in range(2, n + 1):
        if n % q == 0:
            e = 0
            while n % q == 0:
                n //= q
                e += 1
            return (q, e) if n == 1 else None
    return None


def classify_socle_case(pair: OrientedPair, order_bound: int = DEFAULT_ORDER_BOUND,
                        minimal: list[PermGroup] | None = None) -> SocleCase:
    """Case (a/b/c) and k from the socle of G and the minimal normal subgroups of G+."""
    if minimal is None:
        minimal = minimal_normal_subgroups(pair.group, order_bound)
    bt = basic_type(pair, order_bound, minimal)
    if bt.type != "biquasiprimitive":
        raise VerifyError(f"pair is {bt.type}, not biquasiprimitive")
    if len(minimal) != 1:
        raise VerifyError("biquasiprimitive pair with more than one minimal normal subgroup")
    N = minimal[0]
    if N.is_abelian():
        pk = _prime_power(N.order())
        if pk is None:
            raise VerifyError("abelian minimal normal subgroup of non prime-power order")
        return SocleCase("a", pk[1], f"Z{pk[0]}", N.order(),
                         note="composition structure of M in the abelian case is not decided")
    return _nonabelian_case(pair, N, minimal_normal_subgroups(pair.g_plus(), order_bound), order_bound)


def _nonabelian_case(pair: OrientedPair, N: PermGroup, gp_min: list[PermGroup],
                     order_bound: int) -> SocleCase:
    factors = minimal_normal_subgroups(N, order_bound)
    k = len(factors)
    t_order = factors[0].order()
    if t_order ** k != N.order():
        raise VerifyError("socle is not a direct power of its minimal normal subgroups")
    gp_min = [m for m in gp_min if not m.is_abelian()]
    if len(gp_min) == 1:
        case = "b"
    elif len(gp_min) == 2:
        case = "c"
    else:
        raise VerifyError(f"G+ has {len(gp_min)} nonabelian minimal normal subgroups")
    return SocleCase(case, k, f"simple group of order {t_order}", N.order())


def nonabelian_socle_case(pair: OrientedPair, order_bound: int = DEFAULT_ORDER_BOUND,
                          minimal: list[PermGroup] | None = None) -> SocleCase:
    """Case and k read from the nonabelian minimal normal subgroups only.

    Diagnostic for pairs that fail to be basic: abelian minimal normal
    subgroups of G and G+ are ignored, and G must have exactly one
    nonabelian one.
    """
    if minimal is None:
        minimal = minimal_normal_subgroups(pair.group, order_bound)
    nonab = [m for m in minimal if not m.is_abelian()]
    if len(nonab) != 1:
        raise VerifyError(f"G has {len(nonab)} nonabelian minimal normal subgroups")
    return _nonabelian_case(pair, nonab[0], minimal_normal_subgroups(pair.g_plus(), order_bound), order_bound)


# ---------------------------------------------------------------------------
# coset-graph conditions


def _elements(g: PermGroup, limit: int = 64) -> list[Permutation]:
    if g.order() > limit:
        raise VerifyError(f"subgroup of order {g.order()} exceeds {limit}")
    return sorted(g.elements())


def check_condition1(spec: CosetGraphSpec) -> dict:
    """The four clauses for ``Cos(G, S, g)`` to lie in OG(4)."""
    S = _elements(spec.S)
    G, g = spec.G, spec.g
    ginv = inverse(g)
    sgs = {compose(compose(s, g), t) for s in S for t in S}
    Sg = {conjugate(s, g) for s in S}
    inter = [s for s in S if s in Sg]
    gen = PermGroup(list(spec.S.generators) + [g], G.degree)
    return {
        "core_free": is_core_free(G, spec.S),
        "g_inverse_not_in_SgS": ginv not in sgs,
        "index_S_cap_Sg_is_2": len(S) == 2 * len(inter),
        "generates_G": gen.order() == G.order(),
        "evidence": {"|S|": len(S), "|S cap S^g|": len(inter), "|<S,g>|": gen.order(),
                     "|G|": G.order(), "|SgS|": len(sgs)},
    }


def check_condition2(H: PermGroup, V: PermGroup, y: Permutation, phi: Permutation) -> dict:
    """The four clauses of the sufficient condition on ``(H, V, y, phi)``."""
    for x in H.generators:
        if not H.contains(conjugate(x, phi)):
            raise VerifyError("phi~ does not normalise H")
    Vel = _elements(V)
    Vphi = [conjugate(v, phi) for v in Vel]
    Vphi_set = set(Vphi)
    products = {compose(v, w) for v in Vel for w in Vphi}
    inter = [v for v in Vel if v in Vphi_set]
    Vy = {conjugate(v, y) for v in Vel}
    gen = PermGroup(list(V.generators) + [y], H.degree)
    return {
        "core_free": is_core_free(H, V),
        "y_not_in_VVphi": y not in products,
        "index_V_cap_Vphi_is_2": len(Vel) == 2 * len(inter),
        "generates_H": gen.order() == H.order(),
        "evidence": {
            "|V|": len(Vel),
            "V cap V^phi": [str(v) for v in inter if not v.is_identity()],
            "V cap V^phi elements": inter,
            "|V cap V^y|": sum(1 for v in Vel if v in Vy),
            "|<V,y>|": gen.order(),
            "|H|": H.order(),
        },
    }


@dataclass
class SubdirectResult:
    full: bool
    single_orders: list[int]
    pair_orders: dict[tuple[int, int], int]


def subdirect_full(sub: PermGroup, k: int, t_order: int) -> SubdirectResult:
    """Whether a subgroup of ``T^k`` (block-fixing) is all of ``T^k``.

    For nonabelian simple ``T`` a subdirect subgroup of ``T^k`` is a product
    of diagonals, so it is everything iff every projection onto two blocks
    has order ``|T|^2``.
    """
    d = sub.degree // k
    if d * k != sub.degree:
        raise VerifyError("degree is not a multiple of the block count")
    for x in sub.generators:
        _, top = wreath_parts(x, k)
        if not top.is_identity():
            raise VerifyError("subgroup does not fix every block")
    single = [PermGroup([restrict_to_blocks(x, [i], d) for x in sub.generators], d).order()
              for i in range(k)]
    pairs = {}
    for i, j in combinations(range(k), 2):
        pg = PermGroup([restrict_to_blocks(x, [i, j], d) for x in sub.generators], 2 * d)
        pairs[(i, j)] = pg.order()
    full = all(o == t_order for o in single) and all(o == t_order ** 2 for o in pairs.values())
    return SubdirectResult(full, single, pairs)


@dataclass
class DiagData:
    """``G = <Diag_phi(H x H), g>`` on two copies of H's points."""

    n: int
    G: PermGroup
    G_plus: PermGroup
    S: PermGroup
    g: Permutation
    H: PermGroup
    V: PermGroup
    y: Permutation
    phi: Permutation

    def pair_element(self, h: Permutation) -> Permutation:
        return _diag(h, self.phi)

    def coset_spec(self, **kw) -> CosetGraphSpec:
        return CosetGraphSpec(self.G, self.S, self.g, **kw)


def _diag(h: Permutation, phi: Permutation) -> Permutation:
    n = h.degree
    return Permutation(np.concatenate([h.array, conjugate(h, phi).array + n]))


def diag_subgroup(H: PermGroup, phi: Permutation, y: Permutation, V: PermGroup,
                  check_order: bool = True) -> DiagData:
    """Realise the coset construction from ``(H, V, y, phi~)`` on ``2n`` points."""
    n = H.degree
    if y.is_identity():
        raise VerifyError("y must not be the identity")
    phi2 = compose(phi, phi)
    for h in H.generators:
        if not H.contains(conjugate(h, phi)):
            raise VerifyError("phi~ does not normalise H")
        if conjugate(h, phi2) != conjugate(h, y):
            raise VerifyError("phi^2 is not conjugation by y")
    if not H.contains(y):
        raise VerifyError("y is not in H")
    gp = PermGroup([_diag(h, phi) for h in H.generators], 2 * n)
    S = PermGroup([_diag(v, phi) for v in V.generators], 2 * n)
    g = Permutation(np.concatenate([y.array + n, np.arange(n)]))
    G = PermGroup(list(gp.generators) + [g], 2 * n)
    yy = Permutation(np.concatenate([y.array, y.array + n]))
    if compose(g, g) != yy:
        raise VerifyError("g^2 != (y, y)")
    if check_order and G.order() != 2 * H.order():
        raise VerifyError(f"|G| = {G.order()} but 2|H| = {2 * H.order()}")
    return DiagData(n, G, gp, S, g, H, V, y, phi)


@dataclass
class NeighbourCheck:
    holds: bool
    u: int
    z: Permutation
    computed: dict[str, list[int]]
    predicted: dict[str, list[int]]


def coset_pair_on_points(diag: DiagData, u: int) -> tuple[OrientedPair, dict]:
    """Build ``Cos(G, S, g)`` explicitly and relabel cosets ``Sx -> u_0^x``."""
    cg = build_coset_graph(diag.coset_spec())
    n2 = 2 * diag.n
    for s in cg.s_elements:
        if s(u) != u:
            raise VerifyError("S does not fix the base point")
    label = [r(u) for r in cg.representatives]
    if sorted(label) != list(range(n2)):
        raise VerifyError("cosets of S do not match the points")
    relabel = np.empty(n2, dtype=np.intp)
    relabel[np.arange(len(label))] = label
    edges = [(int(relabel[a]), int(relabel[b])) for a, b in cg.graph.edges()]
    graph = Graph.from_edges(n2, edges)
    alpha = u
    beta = diag.g(alpha)
    pair = OrientedPair(graph, list(diag.G.generators), base_vertex=alpha,
                        orient_arc=(beta, alpha), name="coset")
    return pair, {"cosets": len(label)}


def verify_neighbour_sets(diag: DiagData, u: int, z: Permutation | None = None,
                          reverse: bool = False) -> NeighbourCheck:
    """Compare computed in/out-neighbours of ``u_0`` and ``u_1`` with the formulas.

    The orientation is the arc orbit containing ``(u_0^g, u_0)``; with
    ``reverse=True`` the other orbit is used instead.
    """
    n = diag.n
    pair, _ = coset_pair_on_points(diag, u)
    res = check_oriented(pair)
    if not res.is_in_OG4:
        raise NotOriented("coset pair is not in OG(4)")
    out = res.orientation
    ins = res.in_neighbours()
    out_l = [sorted(out[v].tolist()) for v in range(2 * n)]
    if reverse:
        out_l, ins = ins, out_l
    alpha, gamma = u, n + u
    nbrs = pair.graph.adjacency[alpha]

    def fpf(x: Permutation) -> bool:
        return all(x(w) != w for w in nbrs)

    if z is None:
        cands = [s for s in sorted(diag.S.elements()) if fpf(s)]
        if not cands:
            raise NotOriented("no element of G_alpha is fixed-point-free on Gamma(alpha)")
        s = cands[0]
    else:
        s = _diag(conjugate(z, inverse(diag.phi)), diag.phi)
        if not diag.S.contains(s):
            raise VerifyError("(z^phi^-1, z) is not in G_alpha")
        if not fpf(s):
            raise VerifyError("z is not fixed-point-free on Gamma(alpha)")
    zz = Permutation(s.array[n:] - n)
    y, yi = diag.y, inverse(diag.y)

    def img(*ws):
        x = u
        for w in ws:
            x = w(x)
        return x

    predicted = {
        "in(u_0)": sorted([n + img(y), n + img(y, zz)]),
        "out(u_0)": sorted([n + u, n + img(zz)]),
        "in(u_1)": sorted([u, img(y, zz, yi)]),
        "out(u_1)": sorted([img(yi), img(zz, yi)]),
    }
    computed = {
        "in(u_0)": ins[alpha],
        "out(u_0)": out_l[alpha],
        "in(u_1)": ins[gamma],
        "out(u_1)": out_l[gamma],
    }
    return NeighbourCheck(predicted == computed, u, zz, computed, predicted)


# ---------------------------------------------------------------------------
# small exhaustive searches


def search_condition1(G: PermGroup, S: PermGroup) -> list[Permutation]:
    """Every g in G for which (G, S, g) passes all four clauses of check_condition1."""
    found = []
    for g in sorted(G.elements()):
        c = check_condition1(CosetGraphSpec(G, S, g, index_bound=G.order()))
        if all(c[k] for k in ("core_free", "g_inverse_not_in_SgS", "index_S_cap_Sg_is_2", "generates_G")):
            found.append(g)
    return found


@dataclass
class CosetInstance:
    name: str
    H: PermGroup
    phi: Permutation
    y: Permutation
    u: int
    diag: DiagData
    neighbours: NeighbourCheck


def search_coset_instances(groups: Sequence[tuple[str, PermGroup]], max_order: int = 200,
                           first_only: bool = True) -> list[CosetInstance]:
    """Find (H, phi~, y = phi~^2, V = H_u) passing check_condition2 whose coset graph is in OG(4).

    phi~ runs over Sym(n) in lexicographic order, so the search is only
    practical for small degrees.
    """
    from itertools import permutations

    out = []
    for name, H in groups:
        if H.order() > max_order or not H.is_transitive():
            continue
        n = H.degree
        for images in permutations(range(n)):
            phi = Permutation(images)
            y = compose(phi, phi)
            if y.is_identity() or not H.contains(y):
                continue
            if not all(H.contains(conjugate(h, phi)) for h in H.generators):
                continue
            u = 0
            V = H.stabilizer(u)
            c2 = check_condition2(H, V, y, phi)
            if not all(c2[k] for k in ("core_free", "y_not_in_VVphi", "index_V_cap_Vphi_is_2", "generates_H")):
                continue
            try:
                diag = diag_subgroup(H, phi, y, V)
                nc = verify_neighbour_sets(diag, u)
            except VerifyError:
                continue
            out.append(CosetInstance(name, H, phi, y, u, diag, nc))
            if first_only:
                return out
    return out


# ---------------------------------------------------------------------------
# certificate checks for the wreath families


def block_orbits(tops: Sequence[Permutation], k: int) -> list[list[int]]:
    return orbits(tops, k) if tops else [[i] for i in range(k)]


def biquasiprimitive_certificate(data) -> dict:
    """Hypotheses that make the coset pair biquasiprimitive, with the case.

    ``data`` is a :class:`~og4.zoo.CosetFamilyData`.  The checks:
    ``H = T^k V`` with ``V`` meeting ``T^k`` trivially; the block action of
    ``<H, phi~>`` is transitive (so ``soc(G+)`` is minimal normal in ``G``);
    and the H-orbits on blocks decide case (b) or (c).
    """
    k = data.k
    H, V = data.H, data.V
    t_order = data.pair.group.order()
    tops = [wreath_parts(x, k)[1] for x in H.generators]
    v_tops = {wreath_parts(v, k)[1].key() for v in V.elements()}
    phi_top = wreath_parts(data.phi, k)[1]
    h_orbits = block_orbits(tops, k)
    g_orbits = block_orbits(tops + [phi_top], k)
    checks = {
        "H_is_T^k_V": H.order() == t_order ** k * V.order(),
        "V_meets_T^k_trivially": len(v_tops) == V.order(),
        "G_transitive_on_simple_factors": len(g_orbits) == 1,
    }
    if len(h_orbits) == 1:
        case, ell = "b", None
        checks["H_transitive_on_blocks"] = True
    elif len(h_orbits) == 2:
        case = "c"
        ell = len(h_orbits[0])
        swapped = sorted(phi_top(i) for i in h_orbits[0]) == h_orbits[1]
        checks["two_block_orbits_swapped_by_phi"] = (
            len(h_orbits[1]) == ell and swapped)
    else:
        case, ell = "?", None
        checks["block_orbit_structure"] = False
    return {
        "checks": checks,
        "case": case,
        "k": k,
        "ell": ell,
        "H_block_orbits": [[i + 1 for i in o] for o in h_orbits],
        "T": f"PSL(2,{data.p})",
    }

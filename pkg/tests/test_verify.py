import numpy as np
import pytest

from og4 import verify as V
from og4 import zoo
from og4.graph import CosetGraphSpec, Graph, build_coset_graph
from og4.permgroup import Permutation, PermGroup, compose, normal_closure, wreath_element

from oracles import closure_order, instance


def cycle_graph(n):
    return Graph.from_edges(n, [(i, (i + 1) % n) for i in range(n)])


# --- orientation ----------------------------------------------------------------

def test_arc_orbits_paired():
    pair = instance("A1", "p", 5).pair
    res = V.check_oriented(pair)
    assert res.is_in_OG4 and res.arc_orbit_count == 2
    arcs = set(res.arcs())
    # one orientation per edge, reverse arcs form the other orbit
    assert len(arcs) == pair.graph.edge_count
    assert all((v, u) not in arcs for u, v in arcs)
    assert {frozenset(a) for a in arcs} == {frozenset(e) for e in pair.graph.edges()}
    assert all(len(res.orientation[v]) == 2 for v in range(pair.graph.n))


def test_arc_transitive_group_is_rejected():
    pair = instance("A1", "p", 5).pair
    n = pair.graph.n // 2
    # the side swap x_e -> x_(1-e) together with G reverses edges
    swap = Permutation(np.concatenate([np.arange(n) + n, np.arange(n)]))
    bigger = V.OrientedPair(pair.graph, list(pair.generators) + [swap])
    res = V.check_oriented(bigger)
    assert not res.is_in_OG4
    assert res.arc_orbit_count == 1


def test_non_automorphism_rejected():
    pair = instance("A1", "p", 5).pair
    bad = Permutation.from_cycles([[0, 1]], pair.graph.n)
    with pytest.raises(V.VerifyError):
        V.OrientedPair(pair.graph, [bad])


def test_wrong_valency():
    g = cycle_graph(6)
    rot = Permutation([(i + 1) % 6 for i in range(6)])
    with pytest.raises(V.NotFourValent):
        V.check_oriented(V.OrientedPair(g, [rot]))


def test_stabilizer_orbits_independent():
    """The stabiliser's neighbourhood orbits agree with a brute-force scan of G."""
    pair = instance("A2", "p", 3).pair
    res = V.check_oriented(pair)
    v0 = pair.base_vertex
    nbrs = pair.graph.adjacency[v0]
    stab = [x for x in pair.group.elements() if pair.to_vertices(x)(v0) == v0]
    orbit_of = {}
    for w in nbrs:
        orbit_of[int(w)] = tuple(sorted({pair.to_vertices(x)(int(w)) for x in stab}))
    assert sorted(set(orbit_of.values())) == sorted(tuple(o) for o in res.vertex_stabilizer_orbits)


def test_s_arc_report():
    pair = instance("A1", "p", 13).pair
    rep = V.s_arc_report(pair, V.check_oriented(pair))
    assert rep.s == 1
    assert rep.arc_counts[1] == pair.order() == 52
    assert rep.chain_is_two_power


# --- normal subgroups and quotients ---------------------------------------------

def test_minimal_normal_known_groups():
    s4 = zoo.symmetric_group(4)
    mins = V.minimal_normal_subgroups(s4)
    assert [m.order() for m in mins] == [4]
    assert [m.order() for m in V.minimal_normal_subgroups(zoo.alternating_group(5))] == [60]
    assert sorted(m.order() for m in V.minimal_normal_subgroups(zoo.cyclic_group(6))) == [2, 3]
    assert [m.order() for m in V.minimal_normal_subgroups(zoo.dihedral_group(4))] == [2]


def test_minimal_normal_order_bound():
    with pytest.raises(V.OrderBoundExceeded):
        V.minimal_normal_subgroups(zoo.symmetric_group(6), order_bound=100)


def test_minimal_normal_brute_force():
    """Every normal closure of a single element contains one of the minimal ones."""
    g = zoo.affine_group(7)
    mins = V.minimal_normal_subgroups(g)
    for x in g.elements():
        if x.is_identity():
            continue
        nc = normal_closure(g, [x])
        assert any(m.is_subgroup_of(nc) for m in mins)
    assert [m.order() for m in mins] == [7]


@pytest.mark.parametrize("fid,key,value,orders", [("A1", "p", 5, [5]), ("A2", "p", 3, [9])])
def test_minimal_normal_of_abelian_families(fid, key, value, orders):
    pair = instance(fid, key, value).pair
    mins = V.minimal_normal_subgroups(pair.group)
    assert [m.order() for m in mins] == orders
    assert all(m.is_abelian() for m in mins)


def test_classify_quotient():
    assert V.classify_quotient(Graph.from_edges(1, [])) == "K1"
    assert V.classify_quotient(Graph.from_edges(2, [(0, 1)])) == "K2"
    assert V.classify_quotient(cycle_graph(5)) == "Cycle(5)"
    assert V.classify_quotient(instance("A1", "p", 5).pair.graph) == "OG4-candidate"


def test_normal_quotient_of_A1():
    pair = instance("A1", "p", 5).pair
    (n,) = V.minimal_normal_subgroups(pair.group)
    q, induced, orbs = V.normal_quotient(pair, n)
    assert len(orbs) == 2 and V.classify_quotient(q) == "K2"
    with pytest.raises(V.VerifyError):
        V.normal_quotient(pair, PermGroup.trivial(pair.group.degree))


@pytest.mark.parametrize("fid,key,value,expected", [
    ("A1", "p", 5, ("a", 1)), ("A1", "p", 13, ("a", 1)),
    ("A2", "p", 3, ("a", 2)), ("A2", "p", 7, ("a", 2)),
])
def test_basic_and_socle_case(fid, key, value, expected):
    pair = instance(fid, key, value).pair
    assert V.basic_type(pair).type == "biquasiprimitive"
    sc = V.classify_socle_case(pair)
    assert (sc.case, sc.k) == expected


@pytest.mark.parametrize("fid,expected", [("B1", ("b", 1)), ("B2", ("b", 2)), ("C1", ("c", 2))])
def test_nonabelian_part_of_non_basic_pairs(fid, expected):
    pair = instance(fid, "n", 5).pair
    assert V.basic_type(pair).type == "not-basic"
    with pytest.raises(V.VerifyError):
        V.classify_socle_case(pair)
    sc = V.nonabelian_socle_case(pair)
    assert (sc.case, sc.k) == expected


def test_g_plus_index_two():
    pair = instance("A2", "p", 7).pair
    gp = pair.g_plus()
    assert gp.order() * 2 == pair.order()
    part = set(pair.bipartition[0])
    for x in pair.vertex_group_gens(gp):
        assert {x(v) for v in part} == part


# --- coset conditions -----------------------------------------------------------

def test_condition1_clauses():
    G = zoo.symmetric_group(4)
    S = PermGroup([Permutation.parse("(0 1)", 4)], 4)
    g = V.search_condition1(G, S)[0]
    c = V.check_condition1(CosetGraphSpec(G, S, g, index_bound=100))
    assert c["core_free"] and c["g_inverse_not_in_SgS"]
    assert c["index_S_cap_Sg_is_2"] and c["generates_G"]
    # S = G: generation holds, the index clause fails
    c = V.check_condition1(CosetGraphSpec(G, G, g, index_bound=100))
    assert c["generates_G"] and not c["index_S_cap_Sg_is_2"] and not c["core_free"]


def test_condition1_search_matches_coset_graph_oracle():
    """check_condition1 passes exactly when the coset graph is a connected 4-valent oriented graph."""
    G = zoo.symmetric_group(4)
    S = PermGroup([Permutation.parse("(0 1)", 4)], 4)
    good = set(V.search_condition1(G, S))
    for g in G.elements():
        cg = build_coset_graph(CosetGraphSpec(G, S, g, index_bound=100))
        graph = cg.graph
        ok = graph.valency() == 4 and graph.is_connected()
        if ok:
            pair = V.OrientedPair(graph, [cg.action(h) for h in G.generators])
            ok = V.check_oriented(pair).is_in_OG4
        assert ok == (g in good)


def test_condition2_failures():
    h = zoo.dihedral_group(5)
    phi = Permutation([(2 * x) % 5 for x in range(5)])
    y = phi ** 2
    c = V.check_condition2(h, h, y, phi)
    assert not c["core_free"]


def test_subdirect_diagonal_is_not_full():
    t = zoo.alternating_group(5)
    diag = PermGroup([wreath_element([x, x]) for x in t.generators], 10)
    res = V.subdirect_full(diag, 2, 60)
    assert not res.full
    assert set(res.pair_orders.values()) == {60}
    full = PermGroup([wreath_element([x, Permutation.identity(5)]) for x in t.generators]
                     + [wreath_element([Permutation.identity(5), x]) for x in t.generators], 10)
    res = V.subdirect_full(full, 2, 60)
    assert res.full and res.pair_orders[(0, 1)] == closure_order(full.generators, 10)


def test_diag_subgroup_toy_sym3():
    h = zoo.symmetric_group(3)
    phi = Permutation.parse("(0 1 2)", 3)
    y = phi ** 2
    V_ = PermGroup([Permutation.parse("(1 2)", 3)], 3)
    d = V.diag_subgroup(h, phi, y, V_)
    assert d.G.degree == 6
    assert d.G.order() == 12 == closure_order(d.G.generators, 6)
    assert compose(d.g, d.g) == Permutation(np.concatenate([y.array, y.array + 3]))


def test_diag_subgroup_rejects_identity_y():
    h = zoo.cyclic_group(5)
    with pytest.raises(V.VerifyError):
        V.diag_subgroup(h, Permutation.identity(5), Permutation.identity(5), PermGroup.trivial(5))


def test_neighbour_sets_guard():
    found = V.search_coset_instances([("D10", zoo.dihedral_group(5))])
    inst = found[0]
    with pytest.raises(V.VerifyError):
        V.verify_neighbour_sets(inst.diag, inst.u, z=Permutation.identity(5))

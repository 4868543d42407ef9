import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from og4 import zoo
from og4.permgroup import Permutation, compose, conjugate, wreath_parts

from oracles import closure_order


@pytest.mark.parametrize("p", [5, 7, 11, 13])
def test_psl2_order_and_pair(p):
    g, pair = zoo.psl2_on_projective_line(p)
    assert g.order() == p * (p * p - 1) // 2
    assert pair.a.order() == 2 and pair.b.order() == 3
    assert compose(pair.a, pair.b).order() == p
    assert compose(compose(pair.a, pair.b), pair.b).order() == p
    assert g.degree == p + 1


def test_psl2_order_brute_force():
    g, _ = zoo.psl2_on_projective_line(7)
    assert closure_order(g.generators, 8) == 168


@pytest.mark.parametrize("p", [5, 7])
def test_psl2_matrices_give_the_group(p):
    g, _ = zoo.psl2_on_projective_line(p)
    mats = zoo.psl2_elements(p)
    assert len(mats) == g.order()
    images = {m.to_permutation() for m in mats}
    assert len(images) == len(mats)
    assert all(g.contains(x) for x in images)


@pytest.mark.parametrize("p", [5, 7])
def test_psl2_decode_inverts_to_permutation(p):
    for m in zoo.psl2_elements(p)[:40]:
        assert zoo.psl2_decode(m.to_permutation(), p) == m


def test_psl2_rejects_small_or_composite():
    with pytest.raises(zoo.ZooError):
        zoo.psl2_on_projective_line(4)
    with pytest.raises(zoo.ZooError):
        zoo.psl2_on_projective_line(3)


@pytest.mark.parametrize("n", [5, 7, 9])
def test_alt_pairs(n):
    k1 = zoo.alt_with_pair(n, "k1_pair")
    assert k1.a.order() == 2
    assert k1.b.order() % 2 == 1 and compose(k1.a, k1.b).order() % 2 == 1
    k2 = zoo.alt_with_pair(n, "k2_pair")
    assert k2.a.order() % 2 == 1 and k2.b.order() % 2 == 1
    assert k2.facts["swapping automorphism"] == "none"


def test_alt_pair_rejects_even_degree():
    with pytest.raises(zoo.ZooError):
        zoo.alt_with_pair(6, "k1_pair")


def test_swapping_conjugator_brute_force():
    """Compare with a scan of all of Sym(5)."""
    s5 = sorted(zoo.symmetric_group(5).elements())
    cases = [
        (Permutation.parse("(0 1 2)", 5), Permutation.parse("(2 3 4)", 5)),
        (Permutation.parse("(0 1 2)", 5), Permutation.parse("(0 1 2 3 4)", 5)),
        (Permutation.parse("(0 1)(2 3)", 5), Permutation.parse("(0 2)(1 4)", 5)),
    ]
    for a, b in cases:
        brute = any(conjugate(a, x) == b and conjugate(b, x) == a for x in s5)
        found = zoo.swapping_conjugator(a, b)
        assert (found is not None) == brute
        if found is not None:
            assert conjugate(a, found) == b and conjugate(b, found) == a


@pytest.mark.parametrize("n", [5, 7])
def test_inverting_automorphism(n):
    pair = zoo.alt_with_pair(n, "k2_pair")
    theta = zoo.find_inverting_automorphism(pair)
    assert conjugate(pair.a, theta) == ~pair.a
    assert conjugate(pair.b, theta) == ~pair.b
    # brute force over Sym(5) for n = 5: the inverting element is unique
    if n == 5:
        s5 = zoo.symmetric_group(5).elements()
        hits = [x for x in s5 if conjugate(pair.a, x) == ~pair.a and conjugate(pair.b, x) == ~pair.b]
        assert hits == [theta]


def test_inverting_automorphism_parity():
    # a reflection of an n-cycle is a product of (n - 1) / 2 transpositions
    assert zoo.find_inverting_automorphism(zoo.alt_with_pair(5, "k2_pair")).is_even()
    assert not zoo.find_inverting_automorphism(zoo.alt_with_pair(7, "k2_pair")).is_even()


def test_evaluate_word():
    a = Permutation.parse("(0 1)", 3)
    b = Permutation.parse("(0 1 2)", 3)
    gens = {"a": a, "b": b}
    assert zoo.evaluate_word("ab", gens, 3) == compose(a, b)
    assert zoo.evaluate_word("b^{-1}a", gens, 3) == compose(~b, a)
    assert zoo.evaluate_word("b^2", gens, 3) == compose(b, b)
    assert zoo.evaluate_word("1", gens, 3).is_identity()
    with pytest.raises(zoo.ZooError):
        zoo.evaluate_word("c", gens, 3)


def test_parse_wreath():
    _, pair = zoo.psl2_on_projective_line(7)
    x = zoo.parse_wreath("(a,b,1,ab)(13)", pair, 4)
    coords, top = wreath_parts(x, 4)
    assert coords == [pair.a, pair.b, Permutation.identity(8), compose(pair.a, pair.b)]
    assert top == Permutation.parse("(0 2)", 4)
    with pytest.raises(zoo.ZooError):
        zoo.parse_wreath("(a,b)(12)", pair, 4)


def test_format_wreath_roundtrip():
    _, pair = zoo.psl2_on_projective_line(7)
    x = zoo.parse_wreath("(a,b,ba,1)(12)(34)", pair, 4)
    text = zoo.format_wreath(x, pair, 4)
    assert text.endswith("(12)(34)")
    assert text.count("[") == 4


@settings(max_examples=50, deadline=None)
@given(st.integers(0, 59), st.integers(0, 59))
def test_group_table_matches_permutations(i, j):
    t = zoo.GroupTable.from_perm_group(zoo.alternating_group(5), "Alt(5)")
    x, y = t.elements[i], t.elements[j]
    assert t.elements[t.mul[i, j]] == compose(x, y)
    assert t.elements[t.inv[i]] == ~x


@settings(max_examples=50, deadline=None)
@given(st.lists(st.integers(0, 6), min_size=4, max_size=4))
def test_product_group_arithmetic(vals):
    z = zoo.GroupTable.cyclic(7)
    n = zoo.ProductGroup([z, z])
    x = n.element(vals[0], vals[1])
    y = n.element(vals[2], vals[3])
    prod = n.coords(n.mul(x, y))
    assert (int(prod[0]), int(prod[1])) == ((vals[0] + vals[2]) % 7, (vals[1] + vals[3]) % 7)
    assert int(n.mul(x, n.inv(x))) == n.identity


def test_coord_automorphism_check():
    z = zoo.GroupTable.cyclic(5)
    n = zoo.ProductGroup([z, z])
    t = np.arange(5)
    zoo.CoordAutomorphism((1, 0), [t, (2 * t) % 5]).check(n)
    with pytest.raises(zoo.ZooError):
        zoo.CoordAutomorphism((0, 1), [(t + 1) % 5, t]).check(n)


@pytest.mark.parametrize("label,k,v_order", [("B4", 4, 4), ("C2", 4, 2), ("C4", 8, 4)])
def test_construction_data(label, k, v_order):
    d = zoo.construction_data(label)
    assert d.k == k
    assert d.V.order() == v_order
    assert d.H.order() == 168 ** k * v_order
    assert d.phi ** 2 == d.y


def test_construction_data_rejects_small_p():
    with pytest.raises(zoo.ZooError):
        zoo.construction_data("B4", p=5)

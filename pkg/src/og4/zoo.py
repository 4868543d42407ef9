"""Concrete groups and elements used by the constructions.

Everything here is verified on construction: element orders, group orders
and the relations that the printed tuples are supposed to satisfy.  A
factory that cannot confirm its own data raises ``ZooError``.
"""

from __future__ import annotations

import re
from dataclasses import dataclass, field
from itertools import permutations as _iperms
from typing import Callable, Sequence

import numpy as np

from .permgroup import (
    Permutation,
    PermGroup,
    compose,
    conjugate,
    direct_power_with_top,
    wreath_element,
)


class ZooError(ValueError):
    pass


def is_prime(n: int) -> bool:
    if n < 2:
        return False
    i = 2
    while i * i <= n:
        if n % i == 0:
            return False
        i += 1
    return True


# ---------------------------------------------------------------------------
# multiplication tables


@dataclass
class GroupTable:
    """A finite group by its Cayley table; ``mul[i, j]`` is element i then j."""

    name: str
    labels: list[str]
    mul: np.ndarray
    identity: int = 0
    inv: np.ndarray = field(init=False)

    def __post_init__(self):
        m = len(self.labels)
        if self.mul.shape != (m, m):
            raise ValueError("table shape does not match label count")
        ident_rows = np.flatnonzero((self.mul == np.arange(m)).all(axis=1))
        if len(ident_rows) != 1:
            raise ValueError("table has no unique identity")
        self.identity = int(ident_rows[0])
        inv = np.empty(m, dtype=np.intp)
        r, c = np.nonzero(self.mul == self.identity)
        inv[r] = c
        self.inv = inv

    @property
    def order(self) -> int:
        return len(self.labels)

    def power(self, x: int, e: int) -> int:
        r = self.identity
        for _ in range(e % self.element_order(x)):
            r = int(self.mul[r, x])
        return r

    def element_order(self, x: int) -> int:
        n, r = 1, x
        while r != self.identity:
            r = int(self.mul[r, x])
            n += 1
        return n

    @classmethod
    def cyclic(cls, n: int) -> "GroupTable":
        i = np.arange(n)
        return cls(f"Z{n}", [str(k) for k in range(n)], (i[:, None] + i[None, :]) % n)

    @classmethod
    def from_perm_group(cls, g: PermGroup, name: str = "G") -> "GroupTable":
        """Table of a small permutation group; elements sorted by image tuple."""
        elems = sorted(g.elements())
        index = {e.key(): i for i, e in enumerate(elems)}
        arr = np.stack([e.array for e in elems])
        m = len(elems)
        mul = np.empty((m, m), dtype=np.intp)
        for i in range(m):
            # row i: elems[i] then elems[j]  ->  elems[j][elems[i]]
            prods = arr[:, arr[i]]
            mul[i] = [index[row.tobytes()] for row in prods]
        t = cls(name, [str(e) for e in elems], mul)
        t.elements = elems  # type: ignore[attr-defined]
        t.index = index  # type: ignore[attr-defined]
        return t

    def index_of(self, x: Permutation) -> int:
        return self.index[x.key()]  # type: ignore[attr-defined]


@dataclass
class ProductGroup:
    """Direct product of group tables; elements are mixed-radix indices."""

    factors: list[GroupTable]

    @property
    def shape(self) -> tuple[int, ...]:
        return tuple(f.order for f in self.factors)

    @property
    def order(self) -> int:
        return int(np.prod(self.shape))

    @property
    def k(self) -> int:
        return len(self.factors)

    def coords(self, idx) -> tuple:
        return np.unravel_index(idx, self.shape)

    def index(self, coords) -> np.ndarray:
        return np.ravel_multi_index(tuple(coords), self.shape)

    def element(self, *coords: int) -> int:
        return int(self.index([np.array(c) for c in coords]))

    def all_coords(self) -> tuple:
        return self.coords(np.arange(self.order))

    def mul(self, x, y) -> np.ndarray:
        cx, cy = self.coords(x), self.coords(y)
        return self.index([f.mul[a, b] for f, a, b in zip(self.factors, cx, cy)])

    def inv(self, x) -> np.ndarray:
        return self.index([f.inv[a] for f, a in zip(self.factors, self.coords(x))])

    @property
    def identity(self) -> int:
        return self.element(*(f.identity for f in self.factors))

    def label(self, x: int) -> str:
        c = self.coords(x)
        parts = [f.labels[int(i)] for f, i in zip(self.factors, c)]
        return parts[0] if len(parts) == 1 else "(" + ", ".join(parts) + ")"

    def generators(self, factor_gens: Sequence[Sequence[int]]) -> list[int]:
        """Embed per-factor generator indices into the product."""
        out = []
        for j, gens in enumerate(factor_gens):
            for s in gens:
                c = [f.identity for f in self.factors]
                c[j] = s
                out.append(self.element(*c))
        return out


@dataclass
class CoordAutomorphism:
    """Automorphism of a direct product that moves coordinate ``j`` to
    ``target[j]`` while applying ``maps[j]`` to its value."""

    target: tuple[int, ...]
    maps: list[np.ndarray]
    name: str = "alpha"

    def apply(self, pg: ProductGroup, x) -> np.ndarray:
        c = pg.coords(x)
        new = [None] * pg.k
        for j in range(pg.k):
            new[self.target[j]] = self.maps[j][c[j]]
        return pg.index(new)

    def check(self, pg: ProductGroup) -> None:
        """Raise unless this is a genuine automorphism (exhaustive on generators)."""
        for j in range(pg.k):
            src, dst = pg.factors[j], pg.factors[self.target[j]]
            m = self.maps[j]
            if src.order != dst.order or sorted(m.tolist()) != list(range(dst.order)):
                raise ZooError(f"{self.name}: coordinate map {j} is not a bijection")
            if not np.array_equal(m[src.mul], dst.mul[m[:, None], m[None, :]]):
                raise ZooError(f"{self.name}: coordinate map {j} is not a homomorphism")


# ---------------------------------------------------------------------------
# small named groups


def cyclic_group(n: int) -> PermGroup:
    return PermGroup([Permutation.from_cycles([range(n)], n)] if n > 1 else [], n)


def cyclic_and_elementary(p: int, k: int) -> PermGroup:
    """``Z_p`` (k=1) or ``Z_p^2`` (k=2) in its regular action."""
    if not is_prime(p) or p == 2:
        raise ZooError(f"{p} is not an odd prime")
    if k == 1:
        return cyclic_group(p)
    if k == 2:
        pts = np.arange(p * p)
        x, y = divmod(pts, p)
        e1 = Permutation(((x + 1) % p) * p + y)
        e2 = Permutation(x * p + (y + 1) % p)
        return PermGroup([e1, e2], p * p)
    raise ZooError("k must be 1 or 2")


def symmetric_group(n: int) -> PermGroup:
    if n == 1:
        return PermGroup([], 1)
    gens = [Permutation.from_cycles([range(n)], n)]
    if n > 2:
        gens.append(Permutation.from_cycles([[0, 1]], n))
    return PermGroup(gens, n)


def alternating_group(n: int) -> PermGroup:
    if n < 3:
        return PermGroup([], n)
    gens = [Permutation.from_cycles([[0, 1, i]], n) for i in range(2, n)]
    return PermGroup(gens, n)


def dihedral_group(m: int) -> PermGroup:
    """Dihedral group of order ``2m`` acting on ``m`` points (``m >= 3``)."""
    r = Permutation([(i + 1) % m for i in range(m)])
    s = Permutation([(-i) % m for i in range(m)])
    return PermGroup([r, s], m)


def affine_group(p: int) -> PermGroup:
    """``AGL(1,p)`` on ``p`` points."""
    w = next(w for w in range(2, p) if all(pow(w, (p - 1) // q, p) != 1
                                          for q in range(2, p) if (p - 1) % q == 0 and is_prime(q)))
    t = Permutation([(i + 1) % p for i in range(p)])
    m = Permutation([(i * w) % p for i in range(p)])
    return PermGroup([t, m], p)


# ---------------------------------------------------------------------------
# PSL(2, p)


@dataclass(frozen=True)
class PSL2Element:
    """``+-[[a, b], [c, d]]`` over GF(p), stored with a canonical sign."""

    a: int
    b: int
    c: int
    d: int
    p: int

    @classmethod
    def make(cls, a: int, b: int, c: int, d: int, p: int) -> "PSL2Element":
        a, b, c, d = a % p, b % p, c % p, d % p
        if (a * d - b * c) % p != 1:
            raise ZooError("determinant is not 1")
        first = next(v for v in (a, b, c, d) if v)
        if first > (p - 1) // 2:
            a, b, c, d = (-a) % p, (-b) % p, (-c) % p, (-d) % p
        return cls(a, b, c, d, p)

    def __mul__(self, o: "PSL2Element") -> "PSL2Element":
        p = self.p
        return PSL2Element.make(
            self.a * o.a + self.b * o.c, self.a * o.b + self.b * o.d,
            self.c * o.a + self.d * o.c, self.c * o.b + self.d * o.d, p)

    def transpose(self) -> "PSL2Element":
        return PSL2Element.make(self.a, self.c, self.b, self.d, self.p)

    def to_permutation(self) -> Permutation:
        """Right Moebius action ``x -> (a x + c) / (b x + d)``; infinity is point ``p``."""
        p = self.p
        inf = p
        img = []
        for x in range(p + 1):
            if x == inf:
                num, den = self.a, self.b
            else:
                num, den = (self.a * x + self.c) % p, (self.b * x + self.d) % p
            img.append(inf if den == 0 else (num * pow(den, -1, p)) % p)
        return Permutation(img)


def psl2_elements(p: int) -> list[PSL2Element]:
    out = set()
    for a in range(p):
        for b in range(p):
            for c in range(p):
                for d in range(p):
                    if (a * d - b * c) % p == 1:
                        out.add(PSL2Element.make(a, b, c, d, p))
    return sorted(out, key=lambda m: (m.a, m.b, m.c, m.d))


def psl2_decode(x: Permutation, p: int) -> PSL2Element:
    """Matrix of a projective-line permutation (images of infinity, 0, 1 fix it)."""
    table = _psl2_decode_table(p)
    key = (x(p), x(0), x(1))
    if key not in table:
        raise ZooError("permutation is not in PSL(2,p)")
    m = table[key]
    if m.to_permutation() != x:
        raise ZooError("permutation is not in PSL(2,p)")
    return m


_DECODE: dict[int, dict] = {}


def _psl2_decode_table(p: int) -> dict:
    if p not in _DECODE:
        tab = {}
        for m in psl2_elements(p):
            q = m.to_permutation()
            tab[(q(p), q(0), q(1))] = m
        _DECODE[p] = tab
    return _DECODE[p]


@dataclass
class GeneratingPair:
    group: PermGroup
    a: Permutation
    b: Permutation
    name: str
    facts: dict = field(default_factory=dict)

    def word(self, text: str) -> Permutation:
        return evaluate_word(text, {"a": self.a, "b": self.b}, self.a.degree)


def psl2_on_projective_line(p: int) -> tuple[PermGroup, GeneratingPair]:
    """PSL(2,p) on p+1 points with the standard pair a (order 2), b (order 3)."""
    if not is_prime(p) or p < 5:
        raise ZooError(f"need a prime p >= 5, got {p}")
    ma = PSL2Element.make(0, 1, -1, 0, p)
    mb = PSL2Element.make(0, 1, -1, 1, p)
    for convention in ("row", "transpose"):
        if convention == "row":
            a, b = ma.to_permutation(), mb.to_permutation()
        else:
            a, b = ma.transpose().to_permutation(), mb.transpose().to_permutation()
        ab = compose(a, b)
        abb = compose(ab, b)
        if (a.order(), b.order(), ab.order(), abb.order()) == (2, 3, p, p):
            break
    else:
        raise ZooError("neither Moebius convention gives ord(ab) = p")
    g = PermGroup([a, b], p + 1)
    expected = p * (p * p - 1) // 2
    if g.order() != expected:
        raise ZooError(f"<a,b> has order {g.order()}, expected {expected}")
    facts = {"order(a)": 2, "order(b)": 3, "order(ab)": p, "order(ab^2)": p,
             "|T|": expected, "convention": convention}
    return g, GeneratingPair(g, a, b, f"PSL(2,{p})", facts)


# ---------------------------------------------------------------------------
# Alt(n)


def _cycle_type(x: Permutation) -> tuple[int, ...]:
    return tuple(sorted(len(c) for c in x.cycles()))


def swapping_conjugator(a: Permutation, b: Permutation) -> Permutation | None:
    """Some ``x`` in Sym(n) with ``a^x = b`` and ``b^x = a``, or None.

    Conjugators taking ``a`` to ``b`` form a coset of the centraliser of
    ``a``; this walks that coset by matching cycles.
    """
    if _cycle_type(a) != _cycle_type(b):
        return None
    n = a.degree
    ca = sorted(a.cycles(), key=len) + [(i,) for i in range(n) if a(i) == i]
    cb = sorted(b.cycles(), key=len) + [(i,) for i in range(n) if b(i) == i]
    by_len_a: dict[int, list] = {}
    by_len_b: dict[int, list] = {}
    for c in ca:
        by_len_a.setdefault(len(c), []).append(c)
    for c in cb:
        by_len_b.setdefault(len(c), []).append(c)

    lengths = sorted(by_len_a)

    def rec(li: int, img: list[int]):
        if li == len(lengths):
            x = Permutation(img)
            if conjugate(b, x) == a:
                return x
            return None
        L = lengths[li]
        for order in _iperms(range(len(by_len_b[L]))):
            for shifts in _product_range(L, len(order)):
                new = list(img)
                for ci, (bi, sh) in enumerate(zip(order, shifts)):
                    src, dst = by_len_a[L][ci], by_len_b[L][bi]
                    for t in range(L):
                        new[src[t]] = dst[(t + sh) % L]
                found = rec(li + 1, new)
                if found is not None:
                    return found
        return None

    return rec(0, [0] * n)


def _product_range(L: int, r: int):
    if r == 0:
        yield ()
        return
    for s in range(L):
        for rest in _product_range(L, r - 1):
            yield (s,) + rest


def inverting_conjugators(b: Permutation) -> list[Permutation]:
    """All ``x`` in Sym(n) with ``b^x = b^-1`` for an ``n``-cycle ``b``."""
    n = b.degree
    if len(b.cycles()) != 1 or len(b.cycles()[0]) != n:
        raise ZooError("b must be an n-cycle")
    cyc = b.cycles()[0]
    out = []
    for c in range(n):
        # reflection cyc[t] -> cyc[(c - t) mod n]
        img = [0] * n
        for t in range(n):
            img[cyc[t]] = cyc[(c - t) % n]
        out.append(Permutation(img))
    return out


def alt_with_pair(n: int, kind: str) -> GeneratingPair:
    """Alt(n), n odd >= 5, with one of the two standard generating pairs.

    ``k1_pair``: a = (0 1)(2 3), b = (0 1 ... n-1).
    ``k2_pair``: a = (0 1 2),    b = (0 1 ... n-1).
    """
    if n < 5 or n % 2 == 0:
        raise ZooError(f"n must be odd and at least 5, got {n}")
    b = Permutation.from_cycles([range(n)], n)
    if kind == "k1_pair":
        a = Permutation.from_cycles([[0, 1], [2, 3]], n)
    elif kind == "k2_pair":
        a = Permutation.from_cycles([[0, 1, 2]], n)
    else:
        raise ZooError(f"unknown pair kind {kind!r}")
    if not (a.is_even() and b.is_even()):
        raise ZooError("generators are not even permutations")
    g = PermGroup([a, b], n)
    from math import factorial
    if g.order() != factorial(n) // 2:
        raise ZooError("pair does not generate Alt(n)")
    facts: dict = {"order(a)": a.order(), "order(b)": b.order(), "|T|": g.order()}
    if kind == "k1_pair":
        ab = compose(a, b)
        facts["order(ab)"] = ab.order()
        if a.order() != 2 or b.order() % 2 == 0 or ab.order() % 2 == 0:
            raise ZooError("k1 pair needs a an involution and b, ab of odd order")
    else:
        if a.order() % 2 == 0 or b.order() % 2 == 0:
            raise ZooError("k2 pair needs a and b of odd order")
        # Aut(Alt(n)) = Sym(n) for odd n >= 5, so conjugacy in Sym(n) decides it
        facts["swapping automorphism"] = (
            "none" if swapping_conjugator(a, b) is None else "exists")
        if facts["swapping automorphism"] != "none":
            raise ZooError("an automorphism swaps a and b")
    return GeneratingPair(g, a, b, f"Alt({n})", facts)


def find_inverting_automorphism(pair: GeneratingPair) -> Permutation:
    """A conjugator in Sym(n) inverting both ``a`` and ``b`` (``b`` an n-cycle)."""
    for x in inverting_conjugators(pair.b):
        if conjugate(pair.a, x) == ~pair.a and conjugate(pair.b, x) == ~pair.b:
            return x
    raise ZooError("no element of Sym(n) inverts both generators")


# ---------------------------------------------------------------------------
# words and wreath tuples


_TOKEN = re.compile(r"([ab1])(?:\^\{?(-?\d+)\}?)?")


def evaluate_word(text: str, gens: dict[str, Permutation], degree: int) -> Permutation:
    """Evaluate a word such as ``"b^{-1}aba"`` or ``"ab^2"``; ``"1"`` is the identity."""
    text = text.replace(" ", "")
    pos = 0
    x = Permutation.identity(degree)
    if not text:
        raise ZooError("empty word")
    while pos < len(text):
        m = _TOKEN.match(text, pos)
        if not m:
            raise ZooError(f"cannot parse word {text!r} at {pos}")
        sym, exp = m.group(1), m.group(2)
        if sym != "1":
            x = compose(x, gens[sym] ** (int(exp) if exp else 1))
        elif exp:
            raise ZooError("exponent on identity")
        pos = m.end()
    return x


def parse_wreath(text: str, pair: GeneratingPair, k: int) -> Permutation:
    """Parse ``"(w_1,...,w_k)(i j)..."`` with 1-based block cycles."""
    m = re.fullmatch(r"\s*\(([^()]*)\)((?:\(\s*\d+(?:\s+\d+|\d)*\s*\))*)\s*", text)
    if not m:
        raise ZooError(f"cannot parse wreath element {text!r}")
    words = [w.strip() for w in m.group(1).split(",")]
    if len(words) != k:
        raise ZooError(f"{text!r} has {len(words)} coordinates, expected {k}")
    coords = [pair.word(w) for w in words]
    cycles = []
    for body in re.findall(r"\(([^()]*)\)", m.group(2)):
        cycles.append([int(d) - 1 for d in re.findall(r"\d", body)])
    top = Permutation.from_cycles(cycles, k)
    return wreath_element(coords, top)


def format_wreath(x: Permutation, pair: GeneratingPair, k: int, names: Callable[[Permutation], str] | None = None) -> str:
    """Render a wreath element with coordinates as PSL(2,p) matrices."""
    from .permgroup import wreath_parts
    coords, top = wreath_parts(x, k)
    p = pair.a.degree - 1
    parts = []
    for c in coords:
        if names is not None:
            parts.append(names(c))
        else:
            m = psl2_decode(c, p)
            parts.append(f"[{m.a} {m.b}; {m.c} {m.d}]")
    cyc = "".join("(" + "".join(str(i + 1) for i in c) + ")" for c in top.cycles())
    return "(" + ", ".join(parts) + ")" + cyc


@dataclass
class CosetFamilyData:
    """``H = T^k : V`` inside ``T wr S_k`` together with ``y`` and ``phi~``."""

    label: str
    p: int
    k: int
    pair: GeneratingPair
    H: PermGroup
    T_power: PermGroup
    V: PermGroup
    y: Permutation
    phi: Permutation
    h: list[Permutation]
    printed: dict[str, str]
    extra: dict[str, Permutation] = field(default_factory=dict)

    @property
    def block_degree(self) -> int:
        return self.p + 1

    @property
    def degree(self) -> int:
        return self.k * (self.p + 1)

    def parse(self, text: str) -> Permutation:
        return parse_wreath(text, self.pair, self.k)


_DATA = {
    "B4": {
        "k": 4,
        "phi": "(b,ba,ab,aba)(13)",
        "y": "(bab,baba,ab^2,ab^2a)",
        "h1": "(a,a,a,a)(12)(34)",
        "h2": "(b^{-1}aba,ab^{-1}ab,b^{-1}aba,ab^{-1}ab)(14)(23)",
        "y1": "(abab,ababa,b^2,b^2a)",
        "y2": "(b^2ab^2ab,ab^2abababa,b^2abab^2,ab^2)",
        "V": ("h1", "h2"),
    },
    "C2": {
        "k": 4,
        "phi": "(b^2ab,ab^2,b^2,a)(13)(24)",
        "y": "(b^2a,ab^2a,bab,b^2)",
        "h1": "(a,a,a,a)(12)(34)",
        "y1": "(b^2,ab^2,ab^2a,ababa)",
        "V": ("h1",),
    },
    "C4": {
        "k": 8,
        "phi": "(b,ba,ab,aba,b^2,ab,ba,ab^2a)(15)(28)(37)(46)",
        "y": "(1,a,ab^2a,ab^2,1,ababa,b^2,ab^2aba)",
        "h1": "(a,a,a,a,a,a,a,a)(12)(34)(56)(78)",
        "h2": "(b^2,ab^2a,aba,b,b^2aba,ab^2ab,b^2aba,ab^2ab)(14)(23)(58)(67)",
        "y1": "(a,1,b^2a,b^2,bab,1,b^2ab,ab^2a)",
        "y2": "(b^2a,ab^2a,abab^2a,1,b^2ab,ab^2ab^2aba,b^2a,1)",
        "V": ("h1", "h2"),
    },
}


def printed_data(label: str) -> dict:
    return dict(_DATA[label])


def construction_data(label: str, p: int = 7, check_normalises: bool = True) -> CosetFamilyData:
    """Wreath-product data for the coset families ``"B4"``, ``"C2"``, ``"C4"``.

    ``H`` is generated by ``a, b`` in every block together with the
    generators of ``V``.  The factory checks that ``phi~^2`` equals the
    printed ``y`` and that conjugation by ``phi~`` maps every generator of
    ``H`` back into ``H``.
    """
    if label not in _DATA:
        raise ZooError(f"unknown coset family {label!r}")
    if not is_prime(p) or p < 7:
        raise ZooError(f"need a prime p >= 7, got {p}")
    spec = _DATA[label]
    k = spec["k"]
    T, pair = psl2_on_projective_line(p)
    phi = parse_wreath(spec["phi"], pair, k)
    y_printed = parse_wreath(spec["y"], pair, k)
    y = phi ** 2
    if y != y_printed:
        raise ZooError(f"{label}: phi~^2 differs from the printed y")
    h1 = parse_wreath(spec["h1"], pair, k)
    h = [h1]
    if "h2" in spec:
        h2 = conjugate(h1, phi)
        if h2 != parse_wreath(spec["h2"], pair, k):
            raise ZooError(f"{label}: h1^phi~ differs from the printed h2")
        h.append(h2)
    vgens = [x for x, name in zip(h, ("h1", "h2")) if name in spec["V"]]
    V = PermGroup(vgens, k * (p + 1))
    tk = direct_power_with_top(PermGroup([pair.a, pair.b], p + 1), k)
    H = PermGroup(list(tk.generators) + vgens, k * (p + 1))
    data = CosetFamilyData(label, p, k, pair, H, tk, V, y, phi, h, {n: spec[n] for n in spec if n not in ("k", "V")})
    if check_normalises:
        for x in H.generators:
            if not H.contains(conjugate(x, phi)):
                raise ZooError(f"{label}: conjugation by phi~ does not preserve H")
        expected = pair.group.order() ** k * V.order()
        if H.order() != expected:
            raise ZooError(f"{label}: |H| = {H.order()}, expected {expected}")
    return data

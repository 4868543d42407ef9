"""Permutation groups: products, orbits, deterministic Schreier-Sims.

Permutations act on ``{0, ..., degree-1}`` from the right, so a product
``p * q`` means "apply ``p``, then ``q``" and ``x^(pq) = (x^p)^q``.  This is
the convention used for every word in the group zoo (``"ab"`` is ``a`` then
``b``).

Internally permutations are numpy index arrays; composition is a single
gather (``q[p]``).
"""

from __future__ import annotations

import re
from math import lcm
from typing import Iterable, Iterator, Sequence

import numpy as np

__all__ = [
    "Permutation",
    "PermGroup",
    "ActionMap",
    "compose",
    "inverse",
    "conjugate",
    "orbit",
    "orbits",
    "normal_closure",
    "is_core_free",
    "conjugate_group",
    "direct_power_with_top",
    "wreath_element",
    "restrict_to_blocks",
    "DegreeMismatch",
    "NotASubgroup",
]


class DegreeMismatch(ValueError):
    pass


class NotASubgroup(ValueError):
    pass


def _identity(n: int) -> np.ndarray:
    return np.arange(n, dtype=np.intp)


def _inverse(a: np.ndarray) -> np.ndarray:
    inv = np.empty_like(a)
    inv[a] = np.arange(len(a), dtype=a.dtype)
    return inv


def _is_identity(a: np.ndarray) -> bool:
    return bool(np.array_equal(a, np.arange(len(a))))


class Permutation:
    """A bijection of ``{0, ..., degree-1}``, immutable and hashable."""

    __slots__ = ("_a", "_hash")

    def __init__(self, images: Iterable[int] | np.ndarray, *, _trusted: bool = False):
        a = np.array(images, dtype=np.intp)
        if not _trusted:
            if a.ndim != 1 or len(a) == 0:
                raise ValueError("a permutation needs a non-empty image list")
            seen = np.zeros(len(a), dtype=bool)
            if a.min() < 0 or a.max() >= len(a):
                raise ValueError("image out of range")
            seen[a] = True
            if not seen.all():
                raise ValueError("images are not a bijection")
        a.flags.writeable = False
        self._a = a
        self._hash = None

    @classmethod
    def _wrap(cls, a: np.ndarray) -> "Permutation":
        p = cls.__new__(cls)
        a.flags.writeable = False
        p._a = a
        p._hash = None
        return p

    @classmethod
    def identity(cls, degree: int) -> "Permutation":
        return cls._wrap(_identity(degree))

    @classmethod
    def from_cycles(cls, cycles: Iterable[Sequence[int]], degree: int) -> "Permutation":
        a = _identity(degree)
        for cyc in cycles:
            cyc = list(cyc)
            if len(set(cyc)) != len(cyc):
                raise ValueError(f"repeated point in cycle {cyc}")
            for i, x in enumerate(cyc):
                a[x] = cyc[(i + 1) % len(cyc)]
        return cls(a)

    @classmethod
    def parse(cls, text: str, degree: int) -> "Permutation":
        """Parse cycle notation such as ``"(0 1 2)(3 4)"`` or ``"()"``."""
        text = text.strip()
        if not re.fullmatch(r"(\(\s*(\d+([\s,]+\d+)*)?\s*\))+", text):
            raise ValueError(f"bad cycle notation: {text!r}")
        cycles = [
            [int(t) for t in re.split(r"[\s,]+", body.strip())]
            for body in re.findall(r"\(([^)]*)\)", text)
            if body.strip()
        ]
        return cls.from_cycles(cycles, degree)

    @property
    def degree(self) -> int:
        return len(self._a)

    @property
    def images(self) -> tuple[int, ...]:
        return tuple(self._a.tolist())

    @property
    def array(self) -> np.ndarray:
        return self._a

    def __call__(self, x: int) -> int:
        return int(self._a[x])

    def __mul__(self, other: "Permutation") -> "Permutation":
        return compose(self, other)

    def __invert__(self) -> "Permutation":
        return Permutation._wrap(_inverse(self._a))

    inverse = __invert__

    def __pow__(self, e: int) -> "Permutation":
        base = self if e >= 0 else ~self
        e = abs(e)
        result = _identity(self.degree)
        b = base._a
        while e:
            if e & 1:
                result = b[result]
            b = b[b]
            e >>= 1
        return Permutation._wrap(result)

    def __eq__(self, other) -> bool:
        if not isinstance(other, Permutation):
            return NotImplemented
        return np.array_equal(self._a, other._a)

    def __hash__(self) -> int:
        if self._hash is None:
            self._hash = hash(self._a.tobytes())
        return self._hash

    def key(self) -> bytes:
        return self._a.tobytes()

    def __lt__(self, other: "Permutation") -> bool:
        return self.images < other.images

    def is_identity(self) -> bool:
        return _is_identity(self._a)

    def support(self) -> list[int]:
        return np.flatnonzero(self._a != np.arange(self.degree)).tolist()

    def cycles(self) -> list[tuple[int, ...]]:
        a = self._a.tolist()
        seen = [False] * len(a)
        out = []
        for i in range(len(a)):
            if seen[i] or a[i] == i:
                continue
            cyc = [i]
            seen[i] = True
            j = a[i]
            while j != i:
                seen[j] = True
                cyc.append(j)
                j = a[j]
            out.append(tuple(cyc))
        return out

    def order(self) -> int:
        return lcm(1, *(len(c) for c in self.cycles()))

    def is_even(self) -> bool:
        return sum(len(c) - 1 for c in self.cycles()) % 2 == 0

    def conjugate(self, x: "Permutation") -> "Permutation":
        return conjugate(self, x)

    def __repr__(self) -> str:
        return f"Permutation({self!s}, degree={self.degree})"

    def __str__(self) -> str:
        cyc = self.cycles()
        if not cyc:
            return "()"
        return "".join("(" + " ".join(map(str, c)) + ")" for c in cyc)

    def to_json(self) -> list[int]:
        return self._a.tolist()


def _check_same_degree(p: Permutation, q: Permutation) -> None:
    if p.degree != q.degree:
        raise DegreeMismatch(f"degree {p.degree} != {q.degree}")


def compose(p: Permutation, q: Permutation) -> Permutation:
    """Return ``p`` followed by ``q``: ``x -> q(p(x))``."""
    _check_same_degree(p, q)
    return Permutation._wrap(q._a[p._a])


def inverse(p: Permutation) -> Permutation:
    return ~p


def conjugate(p: Permutation, x: Permutation) -> Permutation:
    """``p^x = x^-1 p x``."""
    _check_same_degree(p, x)
    xa = x._a
    return Permutation._wrap(xa[p._a[_inverse(xa)]])


# ---------------------------------------------------------------------------
# orbits


def _orbit_arrays(gens: Sequence[np.ndarray], point: int) -> list[int]:
    images = [g.tolist() for g in gens]
    out = [point]
    seen = {point}
    for x in out:
        for g in images:
            y = g[x]
            if y not in seen:
                seen.add(y)
                out.append(y)
    return out


def orbit(gens: Sequence[Permutation], point: int, degree: int | None = None) -> list[int]:
    """Orbit of ``point`` in discovery order."""
    if degree is not None and not 0 <= point < degree:
        raise ValueError(f"point {point} outside degree {degree}")
    return _orbit_arrays([g._a for g in gens], point)


def orbits(gens: Sequence[Permutation], degree: int) -> list[list[int]]:
    """Orbit partition of ``{0..degree-1}``, each orbit sorted, orbits by minimum."""
    from scipy.sparse import coo_matrix
    from scipy.sparse.csgraph import connected_components

    if not gens:
        return [[i] for i in range(degree)]
    src = np.concatenate([np.arange(degree)] * len(gens))
    dst = np.concatenate([g._a for g in gens])
    m = coo_matrix((np.ones(len(src), dtype=np.int8), (src, dst)), shape=(degree, degree))
    _, labels = connected_components(m, directed=True, connection="weak")
    groups: dict[int, list[int]] = {}
    for v, lab in enumerate(labels.tolist()):
        groups.setdefault(lab, []).append(v)
    return sorted(groups.values(), key=lambda o: o[0])


# ---------------------------------------------------------------------------
# Schreier-Sims


class _Level:
    __slots__ = ("point", "gens", "orbit", "index", "trans", "tinv", "done")

    def __init__(self, point: int):
        self.point = point
        self.gens: list[np.ndarray] = []
        self.orbit: list[int] = [point]
        self.index: dict[int, int] = {point: 0}
        self.trans: list[np.ndarray] = []
        self.tinv: list[np.ndarray] = []
        # done[j] = how many of self.gens have had their Schreier generator
        # with orbit point j sifted successfully
        self.done: list[int] = [0]

    def _grow(self, start: int) -> None:
        # BFS from orbit positions >= start with every generator
        j = start
        while j < len(self.orbit):
            u = self.trans[j]
            beta = self.orbit[j]
            for g in self.gens:
                gamma = int(g[beta])
                if gamma not in self.index:
                    self._append(gamma, g[u])
            j += 1

    def _append(self, gamma: int, u: np.ndarray) -> None:
        self.index[gamma] = len(self.orbit)
        self.orbit.append(gamma)
        self.trans.append(u)
        self.tinv.append(_inverse(u))
        self.done.append(0)

    def add_gen(self, g: np.ndarray) -> None:
        self.gens.append(g)
        n = len(self.orbit)
        for j in range(n):
            gamma = int(g[self.orbit[j]])
            if gamma not in self.index:
                self._append(gamma, g[self.trans[j]])
        self._grow(n)


class _Chain:
    """Stabiliser chain with explicit transversals."""

    def __init__(self, degree: int, base_limit: int | None = None):
        self.degree = degree
        self.ident = _identity(degree)
        self.levels: list[_Level] = []
        self.base_limit = base_limit

    def _new_level(self, point: int) -> _Level:
        if self.base_limit is not None and point >= self.base_limit:
            raise _BaseLimitExceeded(point)
        lev = _Level(point)
        lev.trans.append(self.ident)
        lev.tinv.append(self.ident)
        self.levels.append(lev)
        return lev

    def sift(self, h: np.ndarray, start: int = 0) -> tuple[np.ndarray, int]:
        for i in range(start, len(self.levels)):
            lev = self.levels[i]
            j = lev.index.get(int(h[lev.point]))
            if j is None:
                return h, i
            h = lev.tinv[j][h]
        return h, len(self.levels)

    def contains(self, h: np.ndarray) -> bool:
        r, _ = self.sift(h)
        return _is_identity(r)

    def _first_moved(self, h: np.ndarray) -> int:
        return int(np.flatnonzero(h != self.ident)[0])

    def _insert(self, h: np.ndarray, start: int, depth: int) -> int:
        """Add residue ``h`` (fixing base points before ``depth``) to levels
        ``start..depth``; returns the deepest level touched."""
        if depth == len(self.levels):
            self._new_level(self._first_moved(h))
        for lev in self.levels[start : depth + 1]:
            lev.add_gen(h)
        return depth

    def add_generator(self, g: np.ndarray) -> bool:
        """Extend the group by ``g``; returns False if ``g`` was already a member."""
        r, depth = self.sift(g)
        if _is_identity(r):
            return False
        # g itself (not the residue) must join level 0 and every level whose
        # earlier base points it fixes
        depth = 0
        while depth < len(self.levels) and g[self.levels[depth].point] == self.levels[depth].point:
            depth += 1
        top = self._insert(g, 0, depth)
        self._complete(top)
        return True

    def _complete(self, i: int) -> None:
        while i >= 0:
            found = self._test_level(i)
            if found is None:
                i -= 1
            else:
                residue, depth = found
                i = self._insert(residue, i + 1, depth)

    def _test_level(self, i: int):
        lev = self.levels[i]
        gens = lev.gens
        j = 0
        while j < len(lev.orbit):
            d = lev.done[j]
            if d < len(gens):
                u = lev.trans[j]
                beta = lev.orbit[j]
                for k in range(d, len(gens)):
                    g = gens[k]
                    gamma = int(g[beta])
                    h = lev.tinv[lev.index[gamma]][g[u]]
                    lev.done[j] = k + 1
                    r, depth = self.sift(h, i + 1)
                    if not _is_identity(r):
                        return r, depth
            j += 1
        return None

    def order(self) -> int:
        n = 1
        for lev in self.levels:
            n *= len(lev.orbit)
        return n


class _BaseLimitExceeded(Exception):
    pass


class PermGroup:
    """A permutation group given by generators, with a lazily built BSGS.

    Base points are the smallest moved point at each level unless a base
    prefix is supplied, so two runs on the same generator list produce the
    same base.
    """

    def __init__(self, generators: Iterable[Permutation], degree: int | None = None,
                 *, base_prefix: Sequence[int] = ()):
        gens = list(generators)
        if degree is None:
            if not gens:
                raise ValueError("degree required for a group without generators")
            degree = gens[0].degree
        for g in gens:
            if g.degree != degree:
                raise DegreeMismatch(f"generator degree {g.degree} != {degree}")
        self.degree = degree
        self.generators: list[Permutation] = gens
        self._base_prefix = tuple(base_prefix)
        self._chain: _Chain | None = None

    # -- construction helpers -------------------------------------------------

    @classmethod
    def trivial(cls, degree: int) -> "PermGroup":
        return cls([], degree)

    def to_json(self) -> dict:
        return {"degree": self.degree, "generators": [g.to_json() for g in self.generators]}

    @classmethod
    def from_json(cls, data: dict) -> "PermGroup":
        degree = int(data["degree"])
        return cls([Permutation(g) for g in data["generators"]], degree)

    def __repr__(self) -> str:
        return f"PermGroup(degree={self.degree}, ngens={len(self.generators)})"

    # -- BSGS -----------------------------------------------------------------

    def schreier_sims(self, base_limit: int | None = None) -> _Chain:
        if self._chain is None:
            chain = _Chain(self.degree, base_limit)
            for b in self._base_prefix:
                chain._new_level(b)
            gens = [g._a for g in self.generators if not g.is_identity()]
            for g in gens:
                depth = 0
                while depth < len(chain.levels) and g[chain.levels[depth].point] == chain.levels[depth].point:
                    depth += 1
                if depth == len(chain.levels):
                    chain._new_level(chain._first_moved(g))
            for g in gens:
                for lev in chain.levels:
                    lev.add_gen(g)
                    if g[lev.point] != lev.point:
                        break
            chain._complete(len(chain.levels) - 1)
            self._chain = chain
        return self._chain

    @property
    def base(self) -> list[int]:
        return [lev.point for lev in self.schreier_sims().levels]

    @property
    def strong_generators(self) -> list[Permutation]:
        seen = {}
        for lev in self.schreier_sims().levels:
            for g in lev.gens:
                seen.setdefault(g.tobytes(), g)
        return [Permutation._wrap(g) for g in seen.values()]

    @property
    def basic_orbits(self) -> list[list[int]]:
        return [list(lev.orbit) for lev in self.schreier_sims().levels]

    def order(self) -> int:
        return self.schreier_sims().order()

    def __len__(self) -> int:
        return self.order()

    def contains(self, x: Permutation) -> bool:
        if x.degree != self.degree:
            raise DegreeMismatch(f"element degree {x.degree} != {self.degree}")
        return self.schreier_sims().contains(x._a)

    __contains__ = contains

    def sift(self, x: Permutation) -> tuple[Permutation, int]:
        r, depth = self.schreier_sims().sift(x._a)
        return Permutation._wrap(r), depth

    def add_generator(self, x: Permutation) -> bool:
        """Enlarge the group in place; returns False if ``x`` was already in it."""
        if x.degree != self.degree:
            raise DegreeMismatch(f"element degree {x.degree} != {self.degree}")
        if x.is_identity():
            return False
        grew = self.schreier_sims().add_generator(x._a)
        if grew:
            self.generators.append(x)
        return grew

    def is_trivial(self) -> bool:
        return all(g.is_identity() for g in self.generators)

    def is_subgroup_of(self, other: "PermGroup") -> bool:
        return all(other.contains(g) for g in self.generators)

    def equals(self, other: "PermGroup") -> bool:
        return (self.order() == other.order()) and self.is_subgroup_of(other)

    def is_abelian(self) -> bool:
        gs = self.generators
        return all(compose(x, y) == compose(y, x) for i, x in enumerate(gs) for y in gs[i + 1:])

    def is_normal_in(self, other: "PermGroup") -> bool:
        return all(self.contains(conjugate(n, g)) for n in self.generators for g in other.generators)

    # -- orbits and stabilisers ------------------------------------------------

    def orbit(self, point: int) -> list[int]:
        if not 0 <= point < self.degree:
            raise ValueError(f"point {point} outside degree {self.degree}")
        return orbit(self.generators, point)

    def orbit_transversal(self, point: int) -> dict[int, Permutation]:
        """Map each orbit point to an element carrying ``point`` there."""
        out = {point: Permutation.identity(self.degree)}
        queue = [point]
        for x in queue:
            u = out[x]
            for g in self.generators:
                y = g(x)
                if y not in out:
                    out[y] = compose(u, g)
                    queue.append(y)
        return out

    def orbits(self) -> list[list[int]]:
        return orbits(self.generators, self.degree)

    def is_transitive(self) -> bool:
        return len(self.orbit(0)) == self.degree

    def stabilizer(self, point: int) -> "PermGroup":
        """Point stabiliser, read off a chain whose first base point is ``point``."""
        g = PermGroup(self.generators, self.degree, base_prefix=(point,))
        chain = g.schreier_sims()
        sub = PermGroup([Permutation._wrap(a) for a in (chain.levels[1].gens if len(chain.levels) > 1 else [])],
                        self.degree)
        tail = _Chain(self.degree)
        tail.levels = chain.levels[1:]
        sub._chain = tail
        return sub

    def elements(self) -> Iterator[Permutation]:
        """Every element exactly once, as products of transversal elements."""
        levels = self.schreier_sims().levels
        if not levels:
            yield Permutation.identity(self.degree)
            return

        def rec(i: int, acc: np.ndarray):
            if i < 0:
                yield Permutation._wrap(acc)
                return
            for u in levels[i].trans:
                yield from rec(i - 1, u[acc])

        yield from rec(len(levels) - 1, _identity(self.degree))

    def element_set(self) -> set[Permutation]:
        return set(self.elements())

    def random_word(self, rng, length: int = 20) -> Permutation:
        x = Permutation.identity(self.degree)
        if not self.generators:
            return x
        for _ in range(length):
            g = rng.choice(self.generators)
            x = compose(x, g if rng.random() < 0.5 else ~g)
        return x

    def restrict(self, points: Sequence[int]) -> "PermGroup":
        """Action on an invariant set ``points``, relabelled ``0..len-1`` in order."""
        points = list(points)
        pos = {p: i for i, p in enumerate(points)}
        idx = np.array(points, dtype=np.intp)
        gens = []
        for g in self.generators:
            img = g._a[idx]
            try:
                gens.append(Permutation([pos[int(v)] for v in img]))
            except KeyError:
                raise ValueError("point set is not invariant") from None
        return PermGroup(gens, len(points))


# ---------------------------------------------------------------------------
# subgroup constructions


def normal_closure(g: PermGroup, seeds: Sequence[Permutation]) -> PermGroup:
    """Smallest subgroup containing ``seeds`` normalised by ``g``."""
    n = PermGroup([], g.degree)
    for s in seeds:
        n.add_generator(s)
    i = 0
    while i < len(n.generators):
        x = n.generators[i]
        for h in g.generators:
            n.add_generator(conjugate(x, h))
        i += 1
    return n


def _closure_within(g: PermGroup, v: Permutation, allowed: set[Permutation]) -> bool:
    """True iff every g-conjugate of ``v`` lies in ``allowed``."""
    seen = {v}
    queue = [v]
    for x in queue:
        for h in g.generators:
            c = conjugate(x, h)
            if c not in seen:
                if c not in allowed:
                    return False
                seen.add(c)
                queue.append(c)
    return True


def is_core_free(g: PermGroup, sub: PermGroup, max_order: int = 64) -> bool:
    """True iff ``sub`` contains no non-trivial normal subgroup of ``g``.

    Checks, for each non-trivial ``v`` in ``sub``, whether the normal closure
    of ``v`` stays inside ``sub``; that closure is generated by the
    conjugacy class of ``v``, so it suffices to walk the class and stop at
    the first element outside ``sub``.
    """
    for s in sub.generators:
        if not g.contains(s):
            raise NotASubgroup("subgroup generator not in the group")
    if sub.order() > max_order:
        raise ValueError(f"is_core_free is only for subgroups of order <= {max_order}")
    elems = sub.element_set()
    return not any(_closure_within(g, v, elems) for v in elems if not v.is_identity())


def conjugate_group(g: PermGroup, x: Permutation) -> PermGroup:
    return PermGroup([conjugate(h, x) for h in g.generators], g.degree)


def wreath_element(coords: Sequence[Permutation], top: Permutation | None = None) -> Permutation:
    """The element ``(t_1, ..., t_k) sigma`` of ``T wr S_k``.

    Point ``(i, x)`` (index ``i*d + x``) goes to ``(sigma(i), t_i(x))``.
    """
    k = len(coords)
    d = coords[0].degree
    if top is None:
        top = Permutation.identity(k)
    if top.degree != k:
        raise ValueError(f"top permutation has degree {top.degree}, expected {k}")
    out = np.empty(k * d, dtype=np.intp)
    for i, t in enumerate(coords):
        if t.degree != d:
            raise DegreeMismatch("coordinates of unequal degree")
        out[i * d:(i + 1) * d] = top(i) * d + t._a
    return Permutation._wrap(out)


def wreath_parts(x: Permutation, k: int) -> tuple[list[Permutation], Permutation]:
    """Inverse of :func:`wreath_element`; raises if ``x`` does not preserve blocks."""
    d = x.degree // k
    if d * k != x.degree:
        raise ValueError("degree not divisible by block count")
    a = x._a.reshape(k, d)
    blocks = a // d
    if not (blocks == blocks[:, :1]).all():
        raise ValueError("element does not preserve the block system")
    top = Permutation(blocks[:, 0])
    coords = [Permutation(a[i] - blocks[i, 0] * d) for i in range(k)]
    return coords, top


def direct_power_with_top(t: PermGroup, k: int, top: Sequence[Permutation] = ()) -> PermGroup:
    """``T^k`` in imprimitive action on ``k`` blocks, extended by block permutations."""
    if k < 1:
        raise ValueError("need at least one block")
    d = t.degree
    one = Permutation.identity(d)
    gens = []
    for i in range(k):
        for s in t.generators:
            coords = [one] * k
            coords[i] = s
            gens.append(wreath_element(coords))
    for sigma in top:
        if sigma.degree != k:
            raise ValueError(f"top element of degree {sigma.degree}, expected {k}")
        gens.append(wreath_element([one] * k, sigma))
    return PermGroup(gens, k * d)


def restrict_to_blocks(x: Permutation, blocks: Sequence[int], d: int) -> Permutation:
    """Restriction of a block-fixing element to the listed blocks (relabelled)."""
    parts = []
    for j, i in enumerate(blocks):
        seg = x._a[i * d:(i + 1) * d] - i * d
        if seg.min() < 0 or seg.max() >= d:
            raise ValueError(f"element moves block {i}")
        parts.append(seg + j * d)
    return Permutation(np.concatenate(parts))


# ---------------------------------------------------------------------------
# action homomorphisms


class ActionMap:
    """Homomorphism from a compact faithful group to another action of it.

    ``source`` and ``target`` generator lists correspond index by index.  The
    map is realised by the "graph" subgroup generated by ``(s_i, t_i)`` on
    ``source.degree + target.degree`` points, whose base is forced into the
    source part.  Construction fails if the generator correspondence does
    not define a homomorphism (the graph subgroup would need base points in
    the target part).
    """

    def __init__(self, source: PermGroup, target_gens: Sequence[Permutation]):
        if len(source.generators) != len(target_gens):
            raise ValueError("generator lists differ in length")
        self.source = source
        self.m = source.degree
        self.target_degree = target_gens[0].degree if target_gens else 0
        joined = [
            Permutation._wrap(np.concatenate([s._a, t._a + self.m]))
            for s, t in zip(source.generators, target_gens)
        ]
        self.graph = PermGroup(joined, self.m + self.target_degree)
        try:
            self.graph.schreier_sims(base_limit=self.m)
        except _BaseLimitExceeded:
            raise ValueError("generator images do not define a homomorphism") from None
        if self.graph.order() != source.order():
            raise ValueError("generator images do not define a homomorphism")

    def __call__(self, x: Permutation) -> Permutation:
        levels = self.graph.schreier_sims().levels
        h = x._a
        used = []
        for lev in levels:
            j = lev.index.get(int(h[lev.point]))
            if j is None:
                raise ValueError("element not in the source group")
            h = lev.tinv[j][: self.m][h]
            used.append(lev.trans[j])
        if not _is_identity(h):
            raise ValueError("element not in the source group")
        acc = _identity(self.m + self.target_degree)
        for u in reversed(used):
            acc = u[acc]
        return Permutation._wrap(acc[self.m:] - self.m)

    def image_group(self, sub: PermGroup) -> PermGroup:
        return PermGroup([self(g) for g in sub.generators], self.target_degree)

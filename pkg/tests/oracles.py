"""Brute-force references used to cross-check the library."""

from __future__ import annotations

from functools import lru_cache

import numpy as np

from og4 import constructions as C


def closure(gens, degree: int, limit: int = 200_000) -> set[bytes]:
    """All elements of <gens> by breadth-first multiplication, as byte strings."""
    ident = np.arange(degree, dtype=np.intp)
    arrays = [np.asarray(g.array, dtype=np.intp) for g in gens]
    seen = {ident.tobytes()}
    frontier = ident[None, :]
    while len(frontier):
        fresh = []
        for a in arrays:
            prod = a[frontier]  # x then a
            for row in prod:
                key = row.tobytes()
                if key not in seen:
                    seen.add(key)
                    fresh.append(row)
        if len(seen) > limit:
            raise RuntimeError("closure limit exceeded")
        frontier = np.array(fresh, dtype=np.intp).reshape(-1, degree)
    return seen


def closure_order(gens, degree: int, limit: int = 200_000) -> int:
    return len(closure(gens, degree, limit))


@lru_cache(maxsize=None)
def instance(fid: str, key: str, value: int):
    return C.build_family(fid, {key: value})


EXPLICIT = [("A1", "p", 5), ("A1", "p", 13), ("A2", "p", 3), ("A2", "p", 7),
            ("B1", "n", 5), ("B2", "n", 5), ("C1", "n", 5)]
CERTIFICATE = [("B4", "p", 7), ("C2", "p", 7), ("C4", "p", 7)]

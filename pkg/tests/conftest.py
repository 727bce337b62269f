"""Shared fixtures and independent oracles.

The oracles here deliberately use different algorithms from the package:
chi via exhaustive subspace enumeration, containment via enumeration of
all injective linear maps on a row-echelon basis with a final membership
check, isomorphism via exhaustive GL(n,2) application.  They are slow
and only used at small dimensions.
"""

from __future__ import annotations

import random
from itertools import combinations

import pytest

from bmx.gf2core import enumerate_subspaces, rank_ints, rref_ints
from bmx.matroid import Matroid


def naive_chi(m: Matroid) -> int:
    """Least codimension of a subspace disjoint from m, by enumerating
    every subspace of every dimension, largest first."""
    if not m.points:
        return 0
    for k in range(m.dim, -1, -1):
        for w in enumerate_subspaces(m.dim, k):
            if all(not w.contains_int(p) for p in m.points):
                return m.dim - k
    raise AssertionError("the zero subspace is disjoint from everything")


def _independent_tuples(n: int, r: int, prefix: tuple[int, ...] = ()):
    if len(prefix) == r:
        yield prefix
        return
    for v in range(1, 1 << n):
        if rank_ints(prefix + (v,)) == len(prefix) + 1:
            yield from _independent_tuples(n, r, prefix + (v,))


def naive_contains(host: Matroid, pattern: Matroid) -> bool:
    """Try every injective-on-span linear map and check all points at the
    end; no schedules, no pruning."""
    if host.dim < pattern.dim:
        return False
    if not pattern.points:
        return True
    basis, pivots = rref_ints(pattern.points)
    coords = []
    for p in pattern.points:
        c = 0
        for i, piv in enumerate(pivots):
            if (p >> piv) & 1:
                c |= 1 << i
        coords.append(c)
    r = len(basis)
    for imgs in _independent_tuples(host.dim, r):
        ok = True
        for c in coords:
            x = 0
            for i in range(r):
                if (c >> i) & 1:
                    x ^= imgs[i]
            if x not in host.points:
                ok = False
                break
        if ok:
            return True
    return False


def gl_maps(n: int) -> list[tuple[int, ...]]:
    """All invertible maps of F_2^n as lookup tables over 0..2^n-1."""
    maps = []
    for imgs in _independent_tuples(n, n):
        table = [0] * (1 << n)
        for v in range(1, 1 << n):
            x = 0
            for i in range(n):
                if (v >> i) & 1:
                    x ^= imgs[i]
            table[v] = x
        maps.append(tuple(table))
    return maps


_GL_CACHE: dict[int, list[tuple[int, ...]]] = {}


def naive_isomorphic(a: Matroid, b: Matroid) -> bool:
    if a.dim != b.dim:
        return False
    if a.dim not in _GL_CACHE:
        _GL_CACHE[a.dim] = gl_maps(a.dim)
    bpts = b.points
    for table in _GL_CACHE[a.dim]:
        if frozenset(table[p] for p in a.points) == bpts:
            return True
    return False


def random_matroid(rng: random.Random, n: int, density: float = 0.5) -> Matroid:
    pts = frozenset(p for p in range(1, 1 << n) if rng.random() < density)
    return Matroid(n, pts)


@pytest.fixture
def rng() -> random.Random:
    return random.Random(20260823)

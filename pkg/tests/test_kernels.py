"""Backend parity: the compiled kernels must match the pure-Python ones."""

from __future__ import annotations

import random

import pytest

import bmx._kernels as py_kernels
from bmx import kernels
from bmx.matroid import Matroid, circuit, free, pg
from bmx.morphism import _schedule_cached

c_kernels = pytest.importorskip(
    "bmx._kernels_c", reason="compiled extension not built"
)


def test_backend_markers():
    assert py_kernels.BACKEND == "python"
    assert c_kernels.BACKEND == "compiled"
    assert kernels.ACTIVE_BACKEND == "compiled"


def test_canon_parity():
    # dim 6 is excluded: the pure kernel takes minutes per mask there,
    # so dim-6 canon is covered by the compiled-only invariance test below
    rng = random.Random(101)
    for n in range(1, 6):
        total = (1 << n) - 1
        for _ in range(60):
            pmask = rng.getrandbits(total)
            assert py_kernels.canon_mask(n, pmask) == c_kernels.canon_mask(
                n, pmask
            ), (n, pmask)


def test_canon_dim6_invariance():
    # the canonical mask is GL-invariant, preserves size, and is a
    # fixed point of canonization
    from bmx.gf2core import LinearMap, rank_ints

    rng = random.Random(104)
    for _ in range(20):
        pmask = rng.getrandbits(63)
        key = c_kernels.canon_mask(6, pmask)
        assert key.bit_count() == pmask.bit_count()
        assert c_kernels.canon_mask(6, key) == key
        for _ in range(3):
            while True:
                cols = [rng.getrandbits(6) for _ in range(6)]
                if rank_ints(cols) == 6:
                    break
            phi = LinearMap(6, 6, tuple(cols))
            img = 0
            for p in range(1, 64):
                if (pmask >> (p - 1)) & 1:
                    img |= 1 << (phi.apply_int(p) - 1)
            assert c_kernels.canon_mask(6, img) == key


def test_cover_parity():
    rng = random.Random(102)
    for _ in range(80):
        n = rng.randint(1, 6)
        pts = [p for p in range(1, 1 << n) if rng.random() < 0.5]
        depth = rng.randint(0, n)
        a = py_kernels.cover_exists(n, pts, depth)
        b = c_kernels.cover_exists(n, pts, depth)
        assert (a is None) == (b is None), (n, pts, depth)
        if b is not None:
            # the compiled witness really covers every point
            for p in pts:
                assert any((f & p).bit_count() & 1 for f in b)


def test_embedding_parity():
    rng = random.Random(103)
    patterns = [pg(2), free(2), free(3), circuit(4), pg(3)]
    for _ in range(80):
        n = rng.randint(2, 5)
        host_pts = sorted(
            p for p in range(1, 1 << n) if rng.random() < 0.65
        )
        hm = 0
        for p in host_pts:
            hm |= 1 << (p - 1)
        pat = rng.choice(patterns)
        sched = _schedule_cached(pat.dim, pat.mask)
        checks = [list(c) for c in sched.checks]
        a = py_kernels.find_embedding(host_pts, hm, len(sched.basis),
                                      checks, True)
        b = c_kernels.find_embedding(host_pts, hm, len(sched.basis),
                                     checks, True)
        assert (a is None) == (b is None)
        an = py_kernels.find_embedding(host_pts, hm, len(sched.basis),
                                       checks, False)
        bn = c_kernels.find_embedding(host_pts, hm, len(sched.basis),
                                      checks, False)
        assert (an is None) == (bn is None)
        ia = py_kernels.all_embedding_images(
            host_pts, hm, len(sched.basis), checks, list(sched.all_coeffs))
        ib = c_kernels.all_embedding_images(
            host_pts, hm, len(sched.basis), checks, list(sched.all_coeffs))
        assert ia == ib


def test_dispatcher_routes_large_instances_to_python():
    # dim 7 exceeds the 64-bit fast path; results must still be correct
    from bmx.matroid import bb, chi
    from bmx.morphism import contains

    m = Matroid(7, frozenset({1, 2, 3}))
    assert chi(m) == 2
    assert contains(m, pg(2)) and not contains(m, free(3))
    assert not contains(m, pg(3))
    big = bb(7, 3)
    assert chi(big) == 3
    assert contains(big, pg(3))

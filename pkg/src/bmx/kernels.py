"""Kernel backend selection.

Prefers the compiled extension (built from ``_kernels_c.pyx``) when it is
available and the instance fits its fixed-width 64-bit masks; otherwise
falls back to the pure-Python kernels, which handle every supported size.
"""

from __future__ import annotations

from bmx import _kernels as _py

try:  # pragma: no cover - exercised only when the extension is built
    from bmx import _kernels_c as _c
except ImportError:  # pragma: no cover
    _c = None

ACTIVE_BACKEND = "compiled" if _c is not None else "python"

# the compiled kernels use 64-bit characteristic bitsets: 2^n - 1 <= 63
_C_MAX_DIM = 6


def canon_mask(n: int, pmask: int) -> int:
    if _c is not None and n <= _C_MAX_DIM:
        return _c.canon_mask(n, pmask)
    return _py.canon_mask(n, pmask)


def find_embedding(host_pts, host_mask, r, checks, injective):
    if _c is not None and host_mask < (1 << 63) and r <= 16:
        return _c.find_embedding(list(host_pts), host_mask, r, checks, injective)
    return _py.find_embedding(list(host_pts), host_mask, r, checks, injective)


def all_embedding_images(host_pts, host_mask, r, checks, all_coeffs):
    if _c is not None and host_mask < (1 << 63) and r <= 16:
        return _c.all_embedding_images(
            list(host_pts), host_mask, r, checks, all_coeffs
        )
    return _py.all_embedding_images(list(host_pts), host_mask, r, checks, all_coeffs)


def cover_exists(n, points, depth):
    if _c is not None and n <= _C_MAX_DIM and len(points) <= 63:
        return _c.cover_exists(n, list(points), depth)
    return _py.cover_exists(n, list(points), depth)

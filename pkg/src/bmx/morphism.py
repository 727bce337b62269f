"""Containment, homomorphism, isomorphism, and canonical forms.

Containment search assigns images of a basis of span(N) chosen from N's
own points, so candidate images always range over the host's points.  The
pattern is preprocessed into a closure schedule: each new basis slot
unlocks the pattern points it makes fully determined, which are checked
immediately for early pruning.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache

from bmx import kernels
from bmx.errors import CapacityError
from bmx.gf2core import LinearMap, coords_in_basis, rank_ints
from bmx.matroid import Matroid

CANON_MAX_DIM = 8
HOM_MAX_DIM = 8
COUNT_MAX_HOST_DIM = 6
COUNT_MAX_PATTERN_RANK = 4


@dataclass(frozen=True)
class CanonicalKey:
    """Lexicographically minimal characteristic bitstring over GL(n,2)."""

    dim: int
    bits: str

    def matroid(self) -> Matroid:
        mask = 0
        for i, ch in enumerate(self.bits):
            if ch == "1":
                mask |= 1 << i
        return Matroid.from_mask(self.dim, mask)


@dataclass(frozen=True)
class Embedding:
    """A witness that the pattern embeds: the injective-on-span map and the
    image point set inside the host."""

    map: LinearMap
    image: frozenset[int]


@dataclass(frozen=True)
class _Schedule:
    basis: tuple[int, ...]
    checks: tuple[tuple[int, ...], ...]
    all_coeffs: tuple[int, ...]


def _schedule(pattern: Matroid) -> _Schedule:
    """Greedy basis from the pattern's points, ordered to close as many
    points as possible as early as possible."""
    remaining = set(pattern.points)
    basis: list[int] = []
    checks: list[tuple[int, ...]] = []
    coeff_of: dict[int, int] = {}
    while remaining:
        best_b = None
        best_closed: list[tuple[int, int]] = []
        for b in sorted(remaining):
            if coords_in_basis(basis, b) is not None:
                continue  # dependent on chosen basis, already scheduled
            trial = basis + [b]
            closed = []
            for p in sorted(remaining):
                c = coords_in_basis(trial, p)
                if c is not None:
                    closed.append((p, c))
            if best_b is None or len(closed) > len(best_closed):
                best_b = b
                best_closed = closed
        if best_b is None:
            raise AssertionError("points not spanned by independent points")
        basis.append(best_b)
        checks.append(tuple(c for _p, c in best_closed))
        for p, c in best_closed:
            coeff_of[p] = c
            remaining.discard(p)
    all_coeffs = tuple(coeff_of[p] for p in pattern.sorted_points())
    return _Schedule(tuple(basis), tuple(checks), all_coeffs)


@lru_cache(maxsize=256)
def _schedule_cached(dim: int, mask: int) -> _Schedule:
    return _schedule(Matroid.from_mask(dim, mask))


def _extend_to_injective(basis: list[int], imgs: list[int],
                         dom: int, cod: int) -> LinearMap:
    """Turn images of an independent point basis into a fully injective
    standard-basis map F_2^dom -> F_2^cod (requires cod >= dom)."""
    full_basis = list(basis)
    full_imgs = list(imgs)
    for i in range(dom):
        e = 1 << i
        if coords_in_basis(full_basis, e) is None:
            full_basis.append(e)
            # any image outside the current image span keeps injectivity
            for v in range(1, 1 << cod):
                if coords_in_basis(full_imgs, v) is None:
                    full_imgs.append(v)
                    break
    std_images = []
    for i in range(dom):
        c = coords_in_basis(full_basis, 1 << i)
        assert c is not None
        x = 0
        for j in range(len(full_basis)):
            if (c >> j) & 1:
                x ^= full_imgs[j]
        std_images.append(x)
    return LinearMap(dom, cod, tuple(std_images))


def contains(host: Matroid, pattern: Matroid,
             want_witness: bool = False) -> bool | Embedding | None:
    """Does host have a pattern-restriction?

    With ``want_witness`` returns an Embedding or None instead of a bool.
    Containment requires dim(host) >= dim(pattern): a matroid embedded in
    a higher-dimensional space contains the original but not conversely.
    """
    if host.dim < pattern.dim:
        return None if want_witness else False
    if not pattern.points:
        if not want_witness:
            return True
        lm = _extend_to_injective([], [], pattern.dim, host.dim)
        return Embedding(lm, frozenset())
    sched = _schedule_cached(pattern.dim, pattern.mask)
    imgs = kernels.find_embedding(
        host.sorted_points(), host.mask, len(sched.basis),
        [list(c) for c in sched.checks], True,
    )
    if imgs is None:
        return None if want_witness else False
    if not want_witness:
        return True
    lm = _extend_to_injective(list(sched.basis), list(imgs),
                              pattern.dim, host.dim)
    image = frozenset(lm.apply_int(p) for p in pattern.points)
    return Embedding(lm, image)


def homomorphic(pattern: Matroid, host: Matroid) -> bool:
    """Is there a (not necessarily injective) linear map with
    phi(pattern) inside host's point set?"""
    if pattern.dim > HOM_MAX_DIM:
        raise CapacityError(f"homomorphism search limited to dim <= {HOM_MAX_DIM}")
    if not pattern.points:
        return True
    if not host.points:
        return False
    sched = _schedule_cached(pattern.dim, pattern.mask)
    imgs = kernels.find_embedding(
        host.sorted_points(), host.mask, len(sched.basis),
        [list(c) for c in sched.checks], False,
    )
    return imgs is not None


def canonical_key(m: Matroid) -> CanonicalKey:
    """Orbit-minimal characteristic bitstring of m under GL(dim, 2)."""
    if m.dim > CANON_MAX_DIM:
        raise CapacityError(f"canonizer limited to dim <= {CANON_MAX_DIM}")
    mask = kernels.canon_mask(m.dim, m.mask) if m.dim else 0
    total = (1 << m.dim) - 1
    bits = "".join("1" if (mask >> i) & 1 else "0" for i in range(total))
    return CanonicalKey(m.dim, bits)


def isomorphic(a: Matroid, b: Matroid) -> bool:
    """True iff equal dimension and equal canonical keys."""
    if a.dim != b.dim:
        return False
    if a.size != b.size or a.rank != b.rank:
        return False
    if a.points == b.points:
        return True
    return canonical_key(a) == canonical_key(b)


def count_restrictions(host: Matroid, pattern: Matroid) -> int:
    """Number of distinct subsets of the host that are pattern-restrictions
    (distinct images, not distinct maps)."""
    if host.dim > COUNT_MAX_HOST_DIM:
        raise CapacityError(
            f"restriction counting limited to host dim <= {COUNT_MAX_HOST_DIM}")
    if rank_ints(pattern.points) > COUNT_MAX_PATTERN_RANK:
        raise CapacityError(
            f"restriction counting limited to pattern rank <= "
            f"{COUNT_MAX_PATTERN_RANK}")
    if host.dim < pattern.dim:
        return 0
    if not pattern.points:
        return 1
    sched = _schedule_cached(pattern.dim, pattern.mask)
    images = kernels.all_embedding_images(
        host.sorted_points(), host.mask, len(sched.basis),
        [list(c) for c in sched.checks], list(sched.all_coeffs),
    )
    return len(images)

"""Bit-level linear algebra over GF(2).

Vectors in F_2^n are plain ints: coordinate i is bit i-1, so coordinate 1
is the least significant bit and a nonzero vector doubles as its point
index in 1..2^n-1.  ``Gf2Vector`` wraps an int together with its ambient
dimension for the public API; the int helpers underneath are what the
search kernels use.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import cached_property
from itertools import combinations
from typing import Iterable, Iterator, Sequence

from bmx.errors import UsageError

MAX_DIM = 24


def dot(a: int, b: int) -> int:
    """Parity pairing <a, b> over GF(2)."""
    return (a & b).bit_count() & 1


def rank_ints(vectors: Iterable[int]) -> int:
    """GF(2) rank of a collection of int-encoded vectors."""
    pivots: dict[int, int] = {}
    rank = 0
    for v in vectors:
        for p, row in pivots.items():
            if v & p:
                v ^= row
        if v:
            pivots[v & -v] = v
            rank += 1
    return rank


def rref_ints(vectors: Iterable[int]) -> tuple[list[int], list[int]]:
    """Reduced row-echelon basis of the span.

    Each basis vector's pivot is its lowest set bit, and no other basis
    vector has that bit set.  Returns (basis, pivot bit positions), both
    sorted by pivot position.
    """
    rows: dict[int, int] = {}  # pivot mask -> row
    for v in vectors:
        for p, row in rows.items():
            if v & p:
                v ^= row
        if v:
            p = v & -v
            for q in list(rows):
                if rows[q] & p:
                    rows[q] ^= v
            rows[p] = v
    pivs = sorted(rows)
    basis = [rows[p] for p in pivs]
    return basis, [p.bit_length() - 1 for p in pivs]


def reduce_against(basis: Sequence[int], pivots: Sequence[int], v: int) -> int:
    """Eliminate v against an RREF basis; zero result means membership."""
    for row, p in zip(basis, pivots):
        if (v >> p) & 1:
            v ^= row
    return v


def span_elements(basis: Sequence[int]) -> Iterator[int]:
    """All 2^k elements of the span, zero included, in subset-counter order."""
    k = len(basis)
    for mask in range(1 << k):
        v = 0
        m = mask
        i = 0
        while m:
            if m & 1:
                v ^= basis[i]
            m >>= 1
            i += 1
        yield v


def coords_in_basis(basis: Sequence[int], v: int) -> int | None:
    """Coefficient mask expressing v over an arbitrary independent basis.

    Bit i of the result selects basis[i]; None if v is outside the span.
    """
    rows = [(b, 1 << i) for i, b in enumerate(basis)]
    # Triangularize on the fly, carrying coefficient masks along.
    pivots: list[tuple[int, int, int]] = []  # (pivot mask, vec, coeffs)
    for vec, cf in rows:
        for p, pv, pc in pivots:
            if vec & p:
                vec ^= pv
                cf ^= pc
        pivots.append((vec & -vec, vec, cf))
    coeff = 0
    for p, pv, pc in pivots:
        if v & p:
            v ^= pv
            coeff ^= pc
    return coeff if v == 0 else None


@dataclass(frozen=True)
class Gf2Vector:
    """An element of F_2^n as an n-bit mask; coordinate 1 is the LSB."""

    bits: int
    ambient: int

    def __post_init__(self):
        if not 0 < self.ambient <= MAX_DIM:
            raise UsageError(f"ambient dimension must be in 1..{MAX_DIM}")
        if not 0 <= self.bits < (1 << self.ambient):
            raise UsageError("vector has bits outside its ambient dimension")

    def is_zero(self) -> bool:
        return self.bits == 0

    def coord(self, i: int) -> int:
        """Coordinate i, 1-based."""
        return (self.bits >> (i - 1)) & 1

    def __xor__(self, other: "Gf2Vector") -> "Gf2Vector":
        if other.ambient != self.ambient:
            raise UsageError("mixed ambient dimensions")
        return Gf2Vector(self.bits ^ other.bits, self.ambient)


@dataclass(frozen=True)
class Subspace:
    """A subspace of F_2^n given by a reduced row-echelon basis.

    When produced by codimension enumeration, ``functionals`` carries the
    parity-check functionals whose common kernel this subspace is.
    """

    ambient: int
    basis: tuple[int, ...]
    pivots: tuple[int, ...]
    functionals: tuple[int, ...] | None = None

    @property
    def dim(self) -> int:
        return len(self.basis)

    @property
    def codim(self) -> int:
        return self.ambient - len(self.basis)

    def contains_int(self, v: int) -> bool:
        return reduce_against(self.basis, self.pivots, v) == 0

    def contains(self, v: Gf2Vector) -> bool:
        if v.ambient != self.ambient:
            raise UsageError("mixed ambient dimensions")
        return self.contains_int(v.bits)

    def elements(self) -> Iterator[int]:
        return span_elements(self.basis)

    @cached_property
    def element_mask(self) -> int:
        """Characteristic bitset of nonzero members over point indices."""
        mask = 0
        for v in self.elements():
            if v:
                mask |= 1 << (v - 1)
        return mask


@dataclass(frozen=True)
class LinearMap:
    """A linear map F_2^k -> F_2^m given by images of the standard basis."""

    domain_dim: int
    codomain_dim: int
    images: tuple[int, ...]

    def __post_init__(self):
        if len(self.images) != self.domain_dim:
            raise UsageError("need one image per standard basis vector")
        for img in self.images:
            if not 0 <= img < (1 << self.codomain_dim):
                raise UsageError("image outside codomain")

    def apply_int(self, v: int) -> int:
        out = 0
        i = 0
        while v:
            if v & 1:
                out ^= self.images[i]
            v >>= 1
            i += 1
        return out

    def is_injective(self) -> bool:
        return rank_ints(self.images) == self.domain_dim

    @staticmethod
    def identity(n: int) -> "LinearMap":
        return LinearMap(n, n, tuple(1 << i for i in range(n)))


def _shared_ambient(vectors: Sequence[Gf2Vector]) -> int | None:
    dims = {v.ambient for v in vectors}
    if len(dims) > 1:
        raise UsageError("mixed ambient dimensions")
    return dims.pop() if dims else None


def rank_of_set(vectors: Sequence[Gf2Vector]) -> int:
    """GF(2) rank of a set of vectors; 0 for the empty list."""
    _shared_ambient(vectors)
    return rank_ints(v.bits for v in vectors)


def reduce(vectors: Sequence[Gf2Vector], ambient: int | None = None) -> Subspace:
    """Span of the given vectors as a Subspace in RREF basis."""
    n = _shared_ambient(vectors)
    if n is None:
        if ambient is None:
            raise UsageError("empty vector list needs an explicit ambient")
        n = ambient
    basis, pivots = rref_ints(v.bits for v in vectors)
    return Subspace(n, tuple(basis), tuple(pivots))


def enumerate_subspaces(n: int, k: int) -> Iterator[Subspace]:
    """All k-dimensional subspaces of F_2^n, each exactly once.

    Canonical RREF parametrization: lexicographic over pivot-column sets,
    then over free entries.  The count is the Gaussian binomial [n k]_2.
    """
    if not (0 <= k <= n <= MAX_DIM):
        raise UsageError("need 0 <= k <= n <= 24")
    if k == 0:
        yield Subspace(n, (), ())
        return
    for pivs in combinations(range(n), k):
        pivot_set = set(pivs)
        # Free cells: (row i, column j) with j > pivs[i], j not a pivot.
        cells = [
            (i, j)
            for i in range(k)
            for j in range(pivs[i] + 1, n)
            if j not in pivot_set
        ]
        base = [1 << p for p in pivs]
        for assign in range(1 << len(cells)):
            rows = base[:]
            for idx, (i, j) in enumerate(cells):
                if (assign >> idx) & 1:
                    rows[i] |= 1 << j
            yield Subspace(n, tuple(rows), tuple(pivs))


def nullspace_ints(rows: Sequence[int], n: int) -> tuple[list[int], list[int]]:
    """RREF basis of {x : <a, x> = 0 for all a in rows}."""
    rr, pivs = rref_ints(rows)
    pivot_set = set(pivs)
    basis = []
    for f in range(n):
        if f in pivot_set:
            continue
        vec = 1 << f
        for row, p in zip(rr, pivs):
            if (row >> f) & 1:
                vec |= 1 << p
        basis.append(vec)
    out, out_pivs = rref_ints(basis)
    return out, out_pivs


def enumerate_codim_subspaces(n: int, c: int) -> Iterator[Subspace]:
    """All (n-c)-dimensional subspaces, via their dual (parity-check) spaces.

    Each yielded Subspace exposes its c parity functionals.
    """
    if not (0 <= c <= n <= MAX_DIM):
        raise UsageError("need 0 <= c <= n <= 24")
    for dual in enumerate_subspaces(n, c):
        basis, pivs = nullspace_ints(dual.basis, n)
        yield Subspace(n, tuple(basis), tuple(pivs), functionals=dual.basis)


def apply_map(phi: LinearMap, v: Gf2Vector) -> Gf2Vector:
    """Image of v under phi."""
    if v.ambient != phi.domain_dim:
        raise UsageError("vector not in the map's domain")
    return Gf2Vector(phi.apply_int(v.bits), phi.codomain_dim)


def gaussian_binomial(n: int, k: int) -> int:
    """[n k]_2, the number of k-dimensional subspaces of F_2^n."""
    if k < 0 or k > n:
        return 0
    num = den = 1
    for i in range(k):
        num *= (1 << (n - i)) - 1
        den *= (1 << (k - i)) - 1
    return num // den

"""Decomposition families, exact Turan-number search, and the exactness /
stability machinery built on top of them."""

from __future__ import annotations

import time
from dataclasses import dataclass, field
from functools import cached_property
from itertools import combinations

from bmx import kernels
from bmx.errors import CapacityError, UsageError
from bmx.gf2core import Subspace, enumerate_codim_subspaces, rank_ints
from bmx.matroid import (
    LiftSpec,
    Matroid,
    chi,
    delete,
    from_compact,
    intersect_flat,
    lift,
    recoordinatize,
    to_compact,
)
from bmx.morphism import CanonicalKey, canonical_key, contains, _schedule_cached

EX_MAX_DIM = 8
NEAREST_MAX_DIM = 10
NEAREST_MAX_ORDER = 3


@dataclass(frozen=True)
class Family:
    """A set of forbidden matroids, pairwise non-isomorphic."""

    members: tuple[Matroid, ...]

    def __post_init__(self):
        if not self.members:
            raise UsageError("family must be nonempty")
        for m in self.members:
            if not m.points:
                raise UsageError("family members must be nonempty matroids")

    @staticmethod
    def from_matroids(matroids) -> "Family":
        matroids = list(matroids)
        if len(matroids) == 1:  # nothing to dedup, skip canonization
            return Family((matroids[0],))
        seen: dict[tuple[int, str], Matroid] = {}
        for m in matroids:
            key = canonical_key(m)
            seen.setdefault((key.dim, key.bits), m)
        ordered = sorted(
            seen.items(), key=lambda kv: (kv[0][0], kv[1].size, kv[0][1])
        )
        return Family(tuple(m for _k, m in ordered))

    @cached_property
    def k(self) -> int:
        """min critical number over the members, minus one."""
        return min(chi(m) for m in self.members) - 1

    @cached_property
    def keys(self) -> tuple[CanonicalKey, ...]:
        return tuple(canonical_key(m) for m in self.members)


@dataclass(frozen=True)
class TuranCertificate:
    """A certified (or budget-limited) Turan-number computation."""

    family: tuple[Matroid, ...]
    n: int
    value: int
    witness: Matroid
    method: str
    certified: bool
    nodes: int
    elapsed_ms: int

    def to_json_dict(self) -> dict:
        return {
            "family": [to_compact(m) for m in self.family],
            "n": self.n,
            "value": self.value,
            "witness": to_compact(self.witness),
            "method": self.method,
            "certified": self.certified,
            "nodes": self.nodes,
            "elapsed_ms": self.elapsed_ms,
        }

    @staticmethod
    def from_json_dict(d: dict) -> "TuranCertificate":
        return TuranCertificate(
            family=tuple(from_compact(s) for s in d["family"]),
            n=int(d["n"]),
            value=int(d["value"]),
            witness=from_compact(d["witness"]),
            method=str(d["method"]),
            certified=bool(d["certified"]),
            nodes=int(d["nodes"]),
            elapsed_ms=int(d["elapsed_ms"]),
        )


def _points_of_mask(mask: int) -> list[int]:
    pts = []
    p = 1
    while mask:
        if mask & 1:
            pts.append(p)
        mask >>= 1
        p += 1
    return pts


_EX_MAX_COPIES = 5_000_000


def _all_copies(family: Family, n: int) -> list[int]:
    """Point-set bitsets of every forbidden restriction inside the full
    geometry, sorted ascending by size then value."""
    host_pts = list(range(1, 1 << n))
    host_mask = (1 << ((1 << n) - 1)) - 1
    copies: set[int] = set()
    for m in family.members:
        if m.dim > n:
            continue
        sched = _schedule_cached(m.dim, m.mask)
        copies |= kernels.all_embedding_images(
            host_pts, host_mask, len(sched.basis),
            [list(c) for c in sched.checks], list(sched.all_coeffs),
        )
        if len(copies) > _EX_MAX_COPIES:
            raise CapacityError("too many forbidden restrictions to index")
    return sorted(copies, key=lambda c: (c.bit_count(), c))


def ex_search(family: Family, n: int,
              time_limit: float | None = None,
              threads: int = 1) -> TuranCertificate:
    """Maximum size of an n-dimensional family-free matroid, with witness.

    All forbidden copies are indexed up front as point-set bitsets, so a
    search node only does subset tests.  Branching partitions the space:
    for a copy with undecided points p_1 < ... < p_m, child i excludes
    p_i and protects p_1..p_{i-1}, so no state is reachable twice.  A
    copy whose points are all protected kills its node; a copy with one
    undecided point forces an exclusion.  Pruning is on |allowed| against
    the greedy-seeded incumbent.  ``threads`` is accepted for interface
    compatibility; the search itself is sequential and deterministic.
    """
    del threads
    if not 0 <= n <= EX_MAX_DIM:
        raise CapacityError(f"exact search limited to n <= {EX_MAX_DIM}")
    start = time.monotonic()
    deadline = start + time_limit if time_limit is not None else None
    total = (1 << n) - 1
    all_mask = (1 << total) - 1 if total else 0
    copies = _all_copies(family, n)
    nodes = 0
    certified = True

    # greedy incumbent: add points in index order while staying free
    best_mask = 0
    for p in range(1, total + 1):
        cand = best_mask | (1 << (p - 1))
        if all(c & ~cand for c in copies):
            best_mask = cand
    best = best_mask.bit_count()

    def bnb(allowed: int, kept: int, alive: list[int]) -> None:
        """`alive` holds exactly the copies still inside `allowed`."""
        nonlocal best, best_mask, nodes, certified
        if not certified:
            return
        while True:
            if allowed.bit_count() <= best:
                return
            if deadline is not None and time.monotonic() > deadline:
                certified = False
                return
            nodes += 1
            # the live copy with fewest undecided points
            branch = None
            bsize = 0
            for c in alive:
                und = c & ~kept
                if und == 0:
                    return  # protected points already form a copy
                u = und.bit_count()
                if branch is None or u < bsize:
                    branch, bsize = und, u
                    if u == 1:
                        break
            if branch is None:
                best = allowed.bit_count()
                best_mask = allowed
                return
            if bsize == 1:
                allowed &= ~branch  # forced: the only undecided point
                alive = [c for c in alive if not c & branch]
                continue
            decided = 0
            for p in _points_of_mask(branch):
                bit = 1 << (p - 1)
                bnb(allowed & ~bit, kept | decided,
                    [c for c in alive if not c & bit])
                decided |= bit
            return

    if copies and all_mask:
        bnb(all_mask, 0, copies)
    elif not copies:
        best_mask = all_mask
        best = total
    elapsed_ms = int((time.monotonic() - start) * 1000)
    return TuranCertificate(
        family=family.members, n=n, value=best,
        witness=Matroid.from_mask(n, best_mask),
        method="branch-bound", certified=certified,
        nodes=nodes, elapsed_ms=elapsed_ms,
    )


def decomposition_family(family: Family) -> Family:
    """The decomposition family: restriction-minimal matroids whose removal
    from some member drops its critical number to k.

    Computed through codimension-k slices of the members (each slice's
    removal leaves a subset of a Bose-Burton geometry of order k), then
    deduplicated up to isomorphism and filtered to restriction-minimal
    representatives in canonical coordinates.
    """
    k = family.k
    if k == 0:
        return family
    for m in family.members:
        if m.dim > 8:
            raise CapacityError("decomposition limited to member dim <= 8")
    classes: dict[tuple[int, str], Matroid] = {}
    for m in family.members:
        for w in enumerate_codim_subspaces(m.dim, k):
            sl = recoordinatize(intersect_flat(m, w))
            key = canonical_key(sl)
            classes.setdefault((key.dim, key.bits), key.matroid())
    reps = sorted(classes.values(), key=lambda m: (m.dim, m.size, m.mask))
    minimal = []
    for r in reps:
        if any(s is not r and contains(r, s) for s in reps):
            continue
        minimal.append(r)
    return Family(tuple(minimal))


@dataclass(frozen=True)
class MaintechResult:
    """Right-hand side of the decomposition formula, with its lift witness."""

    value: int
    k: int
    dfamily: Family
    sub_certificate: TuranCertificate
    witness: Matroid
    witness_free: bool


def maintech_rhs(family: Family, n: int,
                 time_limit: float | None = None) -> MaintechResult:
    """2^n(1 - 2^-k) + ex(D(family), n-k), witnessed by the lift of the
    sub-problem's extremal matroid; the witness is re-checked to be free."""
    k = family.k
    if n < k:
        raise UsageError("need n >= k")
    dfam = decomposition_family(family)
    sub = ex_search(dfam, n - k, time_limit=time_limit)
    value = (1 << n) - (1 << (n - k)) + sub.value
    if k == 0:
        witness = sub.witness
    else:
        witness = lift(LiftSpec(sub.witness, n, k))
    witness_free = all(not contains(witness, m) for m in family.members)
    return MaintechResult(value, k, dfam, sub, witness, witness_free)


def clique_constant(t: int) -> tuple[int, int]:
    """(t0, additive constant) for excluding the clique matroid M(K_t):
    t0 is the largest integer with 2^t0 < t; the constant is
    2^(t - 2^t0 - 1) - 1."""
    if t < 2:
        raise UsageError("need t >= 2")
    t0 = 0
    while (1 << (t0 + 1)) < t:
        t0 += 1
    return t0, (1 << (t - (1 << t0) - 1)) - 1


def critical_edge_check(m: Matroid) -> bool:
    """True iff deleting some single element lowers the critical number."""
    if m.dim > 8:
        raise CapacityError("critical-edge check limited to dim <= 8")
    c = chi(m)
    return any(chi(delete(m, {e})) < c for e in m.points)


@dataclass(frozen=True)
class TierReport:
    """Which exactness regime a family falls into.

    regime 'exact-constant': an independent t-set drops some member's
    critical number to k and no dependent set of size <= t does; the
    Turan number is 2^n(1-2^-k) + 2^(t-1) - 1 for large n, attained by
    lifts of PG(t-2,2).  regime 'finite-computation': only the first
    condition holds; the additive constant is ex(D, t-1).  regime
    'sparse': no independent removal reaches k (or k = 0).
    """

    regime: str
    k: int
    t: int | None
    constant: int | None
    extremal: str | None


def _independent_drop_size(family: Family, k: int) -> int | None:
    max_t = max(m.rank for m in family.members)
    for t in range(1, max_t + 1):
        for m in family.members:
            for sub in combinations(m.sorted_points(), t):
                if rank_ints(sub) == t and chi(delete(m, sub)) <= k:
                    return t
    return None


def _no_small_dependent_drop(family: Family, k: int, t: int) -> bool:
    for m in family.members:
        for s in range(3, t + 1):  # dependent sets in a simple matroid need >= 3 points
            for sub in combinations(m.sorted_points(), s):
                if rank_ints(sub) < s and chi(delete(m, sub)) <= k:
                    return False
    return True


def corollary_tier(family: Family) -> TierReport:
    """Classify the family per the exactness corollaries."""
    for m in family.members:
        if m.dim > 8:
            raise CapacityError("tier classification limited to member dim <= 8")
    k = family.k
    if k == 0:
        return TierReport("sparse", k, None, None, None)
    t = _independent_drop_size(family, k)
    if t is None:
        return TierReport("sparse", k, None, None, None)
    if _no_small_dependent_drop(family, k, t):
        return TierReport(
            "exact-constant", k, t, (1 << (t - 1)) - 1,
            f"PG({t - 2},2)^(n,{k})",
        )
    const = ex_search(decomposition_family(family), t - 1).value
    return TierReport("finite-computation", k, t, const, None)


@dataclass(frozen=True)
class StabilityReport:
    """Nearest Bose-Burton geometry of a given order, in edit distance."""

    matroid: Matroid
    subspace: Subspace
    bose_burton: Matroid
    distance: int
    density: float


def nearest_bose_burton(m: Matroid, k: int) -> StabilityReport:
    """Minimize |M symdiff (F_2^n minus W)| over codimension-k subspaces W."""
    if m.dim > NEAREST_MAX_DIM:
        raise CapacityError(f"stability scan limited to dim <= {NEAREST_MAX_DIM}")
    if not 1 <= k <= NEAREST_MAX_ORDER:
        raise UsageError(f"order must be in 1..{NEAREST_MAX_ORDER}")
    if k > m.dim:
        raise UsageError("order exceeds dimension")
    full = (1 << ((1 << m.dim) - 1)) - 1
    best = None
    for w in enumerate_codim_subspaces(m.dim, k):
        b_mask = full & ~w.element_mask
        d = (m.mask ^ b_mask).bit_count()
        if best is None or d < best[0]:
            best = (d, w, b_mask)
    assert best is not None
    d, w, b_mask = best
    return StabilityReport(
        matroid=m, subspace=w,
        bose_burton=Matroid.from_mask(m.dim, b_mask),
        distance=d, density=m.size / (1 << m.dim),
    )


def _triangle_free(points: list[int], mask: int) -> bool:
    for i, a in enumerate(points):
        for b in points[i + 1:]:
            if (mask >> ((a ^ b) - 1)) & 1:
                return False
    return True


def _aes_threshold(r: int, t: int) -> int:
    """Largest integer size NOT exceeding 2^r(1 - 2^(1-t) - 3*2^(-2-t))."""
    num = (1 << r) * ((1 << (t + 2)) - (1 << 3) - 3)
    den = 1 << (t + 2)
    return num // den


def aes_check(r: int, t: int = 2) -> bool:
    """Exhaustively verify: every rank-r PG(t-1,2)-free matroid larger than
    the density threshold has critical number at most t-1."""
    if t < 2 or r < t + 2:
        raise UsageError("need t >= 2 and r >= t + 2")
    if r > 4 or t != 2:
        raise CapacityError("exhaustive check limited to (r, t) = (4, 2)")
    thresh = _aes_threshold(r, t)
    total = (1 << r) - 1
    for mask in range(1, 1 << total):
        if mask.bit_count() <= thresh:
            continue
        pts = _points_of_mask(mask)
        if not _triangle_free(pts, mask):
            continue
        if rank_ints(pts) != r:
            continue
        if chi(Matroid(r, frozenset(pts))) > t - 1:
            return False
    return True


def aes_probe(r: int, t: int = 2) -> tuple[int, Matroid]:
    """Largest rank-r, PG(t-1,2)-free matroid with critical number > t-1;
    probes the tightness of the density threshold."""
    if t < 2 or r < t + 2:
        raise UsageError("need t >= 2 and r >= t + 2")
    if r > 4 or t != 2:
        raise CapacityError("exhaustive probe limited to (r, t) = (4, 2)")
    total = (1 << r) - 1
    best: tuple[int, Matroid] | None = None
    for mask in range(1, 1 << total):
        if best is not None and mask.bit_count() <= best[0]:
            continue
        pts = _points_of_mask(mask)
        if not _triangle_free(pts, mask):
            continue
        if rank_ints(pts) != r:
            continue
        m = Matroid(r, frozenset(pts))
        if chi(m) > t - 1:
            best = (m.size, m)
    if best is None:
        raise UsageError("no qualifying matroid exists")
    return best

"""Pure-Python search kernels.

These are the hot inner loops: canonical-form backtracking, injective
embedding search, and the parity-functional covering search behind the
critical number.  ``bmx.kernels`` prefers the compiled twin
(``bmx._kernels_c``) when it is importable and the instance is small
enough for fixed-width masks; the semantics here are authoritative.

All inputs are primitive: vectors are ints, point sets are characteristic
bitsets (bit p-1 set iff point p is present).
"""

from __future__ import annotations

BACKEND = "python"


def canon_mask(n: int, pmask: int) -> int:
    """Characteristic bitset of the GL(n,2)-minimal copy of a matroid.

    Minimizes the characteristic bitstring (index 1 first) of h(M) over
    invertible h, by assigning h on e_1..e_n level by level.  Level k
    fixes string positions 2^(k-1)..2^k-1 exactly, so sibling branches
    compare on equal terms and only locally-minimal segments recurse.
    """
    total = (1 << n) - 1
    if pmask == 0 or pmask == (1 << total) - 1:
        return pmask
    img = [0] * (1 << n)
    best = [-1] * (n + 1)

    def level(k: int, span_mask: int) -> None:
        m = 1 << (k - 1)
        locmin = -1
        cands: list[tuple[int, int]] = []
        for v in range(1, total + 1):
            if (span_mask >> (v - 1)) & 1:
                continue
            seg = 0
            for j in range(m):
                seg = (seg << 1) | ((pmask >> ((v ^ img[j]) - 1)) & 1)
            if locmin < 0 or seg < locmin:
                locmin = seg
                cands = [(v, seg)]
            elif seg == locmin:
                cands.append((v, seg))
        if best[k] >= 0 and locmin > best[k]:
            return
        if best[k] < 0 or locmin < best[k]:
            best[k] = locmin
            for kk in range(k + 1, n + 1):
                best[kk] = -1
        for v, _seg in cands:
            new_span = span_mask
            for j in range(m):
                w = v ^ img[j]
                img[m + j] = w
                new_span |= 1 << (w - 1)
            if k < n:
                level(k + 1, new_span)
            # img slots above m are overwritten by the next sibling

    level(1, 0)
    out = 0
    for k in range(1, n + 1):
        m = 1 << (k - 1)
        seg = best[k]
        for j in range(m):
            if (seg >> (m - 1 - j)) & 1:
                out |= 1 << (m + j - 1)
    return out


def find_embedding(
    host_pts: list[int],
    host_mask: int,
    r: int,
    checks: list[list[int]],
    injective: bool,
) -> list[int] | None:
    """Search for images of r pattern-basis points inside a host point set.

    ``checks[j]`` lists coefficient masks (over basis slots 0..j) of the
    pattern points that become fully determined once slot j is assigned;
    every such combination must land on a host point.  With ``injective``
    the images must stay linearly independent.  Returns the basis images,
    or None.
    """
    imgs = [0] * r
    # span bookkeeping only matters for the injective case
    span_list = [0]

    def assign(j: int, span_mask: int) -> bool:
        for v in host_pts:
            if injective and (span_mask >> (v - 1)) & 1:
                continue
            imgs[j] = v
            ok = True
            for coeff in checks[j]:
                x = 0
                c = coeff
                i = 0
                while c:
                    if c & 1:
                        x ^= imgs[i]
                    c >>= 1
                    i += 1
                if x == 0 or not (host_mask >> (x - 1)) & 1:
                    ok = False
                    break
            if not ok:
                continue
            if j + 1 == r:
                return True
            if injective:
                added = [v ^ s for s in span_list]
                new_mask = span_mask
                for w in added:
                    new_mask |= 1 << (w - 1)
                span_list.extend(added)
                if assign(j + 1, new_mask):
                    return True
                del span_list[-len(added):]
            else:
                if assign(j + 1, 0):
                    return True
        return False

    if r == 0:
        return []
    return list(imgs) if assign(0, 0) else None


def all_embedding_images(
    host_pts: list[int],
    host_mask: int,
    r: int,
    checks: list[list[int]],
    all_coeffs: list[int],
) -> set[int]:
    """Distinct image point-sets (as bitsets) over all injective embeddings."""
    imgs = [0] * r
    span_list = [0]
    found: set[int] = set()

    def assign(j: int, span_mask: int) -> None:
        for v in host_pts:
            if (span_mask >> (v - 1)) & 1:
                continue
            imgs[j] = v
            ok = True
            for coeff in checks[j]:
                x = 0
                c = coeff
                i = 0
                while c:
                    if c & 1:
                        x ^= imgs[i]
                    c >>= 1
                    i += 1
                if x == 0 or not (host_mask >> (x - 1)) & 1:
                    ok = False
                    break
            if not ok:
                continue
            if j + 1 == r:
                image = 0
                for coeff in all_coeffs:
                    x = 0
                    c = coeff
                    i = 0
                    while c:
                        if c & 1:
                            x ^= imgs[i]
                        c >>= 1
                        i += 1
                    image |= 1 << (x - 1)
                found.add(image)
            else:
                added = [v ^ s for s in span_list]
                new_mask = span_mask
                for w in added:
                    new_mask |= 1 << (w - 1)
                span_list.extend(added)
                assign(j + 1, new_mask)
                del span_list[-len(added):]
        return

    if r == 0:
        found.add(0)
        return found
    assign(0, 0)
    return found


def cover_exists(n: int, points: list[int], depth: int) -> list[int] | None:
    """Find <= depth parity functionals covering every point, or None.

    A functional a covers p when <a, p> = 1; a full cover means the common
    kernel of the chosen functionals misses the point set entirely.
    """
    m = len(points)
    if m == 0:
        return []
    full = (1 << m) - 1
    nfun = (1 << n) - 1
    cover_mask: dict[int, int] = {}
    failed: dict[int, int] = {}

    def masks_for(a: int) -> int:
        cm = cover_mask.get(a)
        if cm is None:
            cm = 0
            for j, p in enumerate(points):
                if (a & p).bit_count() & 1:
                    cm |= 1 << j
            cover_mask[a] = cm
        return cm

    chosen: list[int] = []

    def search(uncovered: int, d: int) -> bool:
        if uncovered == 0:
            return True
        if d == 0:
            return False
        if failed.get(uncovered, -1) >= d:
            return False
        # branch on the first uncovered point
        j = (uncovered & -uncovered).bit_length() - 1
        v = points[j]
        for a in range(1, nfun + 1):
            if not (a & v).bit_count() & 1:
                continue
            chosen.append(a)
            if search(uncovered & ~masks_for(a), d - 1):
                return True
            chosen.pop()
        failed[uncovered] = d
        return False

    return chosen if search(full, depth) else None

# cython: language_level=3, boundscheck=False, wraparound=False, cdivision=True
"""Compiled twins of the pure-Python kernels in ``bmx._kernels``.

Same contracts, fixed-width 64-bit masks: the dispatcher in
``bmx.kernels`` only routes instances whose characteristic bitsets fit in
64 bits (dim <= 6 for canon/cover, points < 64 for embeddings).  Because
every point index is below 64, XOR-spans stay below 64 as well, so span
membership is a single bit test.
"""

from libc.stdint cimport uint64_t, int64_t

cdef extern from *:
    int __builtin_popcountll(unsigned long long)

BACKEND = "compiled"


cdef inline int _pop(uint64_t x) noexcept:
    return __builtin_popcountll(x)


# --- canonical form ---------------------------------------------------------

cdef void _canon_level(int k, uint64_t span_mask, int n, int total,
                       uint64_t pmask, uint64_t *img, int64_t *best) noexcept:
    cdef int m = 1 << (k - 1)
    cdef int64_t locmin = -1
    cdef uint64_t cands[64]
    cdef int ncand = 0
    cdef int v, j
    cdef int64_t seg
    cdef uint64_t new_span, w
    for v in range(1, total + 1):
        if (span_mask >> (v - 1)) & 1:
            continue
        seg = 0
        for j in range(m):
            seg = (seg << 1) | <int64_t>((pmask >> ((v ^ img[j]) - 1)) & 1)
        if locmin < 0 or seg < locmin:
            locmin = seg
            cands[0] = v
            ncand = 1
        elif seg == locmin:
            cands[ncand] = v
            ncand += 1
    if best[k] >= 0 and locmin > best[k]:
        return
    cdef int kk
    if best[k] < 0 or locmin < best[k]:
        best[k] = locmin
        for kk in range(k + 1, n + 1):
            best[kk] = -1
    cdef int i
    for i in range(ncand):
        v = <int>cands[i]
        new_span = span_mask
        for j in range(m):
            w = v ^ img[j]
            img[m + j] = w
            new_span |= (<uint64_t>1) << (w - 1)
        if k < n:
            _canon_level(k + 1, new_span, n, total, pmask, img, best)
        # img slots above m are overwritten by the next sibling


def canon_mask(int n, pmask_py):
    """Characteristic bitset of the GL(n,2)-minimal copy of a matroid."""
    cdef uint64_t pmask = <uint64_t>pmask_py
    cdef int total = (1 << n) - 1
    if pmask == 0 or pmask == ((<uint64_t>1) << total) - 1:
        return pmask_py
    cdef uint64_t img[64]
    cdef int64_t best[8]
    cdef int k, j, m
    img[0] = 0
    for k in range(n + 1):
        best[k] = -1
    _canon_level(1, 0, n, total, pmask, img, best)
    cdef uint64_t out = 0
    cdef int64_t seg
    for k in range(1, n + 1):
        m = 1 << (k - 1)
        seg = best[k]
        for j in range(m):
            if (seg >> (m - 1 - j)) & 1:
                out |= (<uint64_t>1) << (m + j - 1)
    return out


# --- embedding search -------------------------------------------------------

cdef inline uint64_t _combine(uint64_t coeff, uint64_t *imgs) noexcept:
    cdef uint64_t x = 0
    cdef int i = 0
    while coeff:
        if coeff & 1:
            x ^= imgs[i]
        coeff >>= 1
        i += 1
    return x


cdef bint _check_slot(int j, uint64_t *imgs, uint64_t host_mask,
                      uint64_t *coeffs, int *starts) noexcept:
    cdef int i
    cdef uint64_t x
    for i in range(starts[j], starts[j + 1]):
        x = _combine(coeffs[i], imgs)
        if x == 0 or not (host_mask >> (x - 1)) & 1:
            return False
    return True


cdef bint _fe_assign(int j, uint64_t span_mask, int r, list host_pts,
                     uint64_t host_mask, uint64_t *imgs,
                     uint64_t *coeffs, int *starts, bint injective):
    cdef int v
    cdef uint64_t new_mask, rest, s
    for v in host_pts:
        if injective and (span_mask >> (v - 1)) & 1:
            continue
        imgs[j] = v
        if not _check_slot(j, imgs, host_mask, coeffs, starts):
            continue
        if j + 1 == r:
            return True
        if injective:
            # new span = old span plus v ^ s for every old element s (0 incl.)
            new_mask = span_mask | ((<uint64_t>1) << (v - 1))
            rest = span_mask
            while rest:
                s = (rest & (~rest + 1))
                new_mask |= (<uint64_t>1) << ((v ^ <int>(_bit_index(s) + 1)) - 1)
                rest &= rest - 1
            if _fe_assign(j + 1, new_mask, r, host_pts, host_mask,
                          imgs, coeffs, starts, injective):
                return True
        else:
            if _fe_assign(j + 1, 0, r, host_pts, host_mask,
                          imgs, coeffs, starts, injective):
                return True
    return False


cdef inline int _bit_index(uint64_t x) noexcept:
    cdef int i = 0
    while x > 1:
        x >>= 1
        i += 1
    return i


def find_embedding(list host_pts, host_mask_py, int r, list checks,
                   bint injective):
    """Search for images of r pattern-basis points inside a host point set."""
    if r == 0:
        return []
    cdef uint64_t host_mask = <uint64_t>host_mask_py
    cdef uint64_t imgs[16]
    cdef uint64_t coeffs[4096]
    cdef int starts[17]
    cdef int j, total = 0
    for j in range(r):
        starts[j] = total
        for c in checks[j]:
            if total >= 4096:
                raise OverflowError("too many closure checks")
            coeffs[total] = <uint64_t>c
            total += 1
    starts[r] = total
    if _fe_assign(0, 0, r, host_pts, host_mask, imgs, coeffs, starts,
                  injective):
        return [imgs[j] for j in range(r)]
    return None


cdef void _aei_assign(int j, uint64_t span_mask, int r, list host_pts,
                      uint64_t host_mask, uint64_t *imgs,
                      uint64_t *coeffs, int *starts,
                      uint64_t *all_coeffs, int n_all, set found):
    cdef int v, i
    cdef uint64_t new_mask, rest, s, image
    for v in host_pts:
        if (span_mask >> (v - 1)) & 1:
            continue
        imgs[j] = v
        if not _check_slot(j, imgs, host_mask, coeffs, starts):
            continue
        if j + 1 == r:
            image = 0
            for i in range(n_all):
                image |= (<uint64_t>1) << (_combine(all_coeffs[i], imgs) - 1)
            found.add(image)
        else:
            new_mask = span_mask | ((<uint64_t>1) << (v - 1))
            rest = span_mask
            while rest:
                s = (rest & (~rest + 1))
                new_mask |= (<uint64_t>1) << ((v ^ <int>(_bit_index(s) + 1)) - 1)
                rest &= rest - 1
            _aei_assign(j + 1, new_mask, r, host_pts, host_mask,
                        imgs, coeffs, starts, all_coeffs, n_all, found)


def all_embedding_images(list host_pts, host_mask_py, int r, list checks,
                         list all_coeffs):
    """Distinct image point-sets (as bitsets) over all injective embeddings."""
    found = set()
    if r == 0:
        found.add(0)
        return found
    cdef uint64_t host_mask = <uint64_t>host_mask_py
    cdef uint64_t imgs[16]
    cdef uint64_t coeffs[4096]
    cdef uint64_t acoeffs[4096]
    cdef int starts[17]
    cdef int j, total = 0
    for j in range(r):
        starts[j] = total
        for c in checks[j]:
            if total >= 4096:
                raise OverflowError("too many closure checks")
            coeffs[total] = <uint64_t>c
            total += 1
    starts[r] = total
    cdef int n_all = len(all_coeffs)
    if n_all > 4096:
        raise OverflowError("too many pattern points")
    for j in range(n_all):
        acoeffs[j] = <uint64_t>all_coeffs[j]
    _aei_assign(0, 0, r, host_pts, host_mask, imgs, coeffs, starts,
                acoeffs, n_all, found)
    return found


# --- covering search (critical number) --------------------------------------

cdef bint _cover_search(uint64_t uncovered, int d, int nfun, int m,
                        uint64_t *pts, uint64_t *cm, uint64_t *computed,
                        int *chosen, int *nchosen, dict failed):
    if uncovered == 0:
        return True
    if d == 0:
        return False
    prev = failed.get(uncovered)
    if prev is not None and <int>prev >= d:
        return False
    cdef int j = _bit_index(uncovered & (~uncovered + 1))
    cdef uint64_t v = pts[j]
    cdef int a, i
    cdef uint64_t mask
    for a in range(1, nfun + 1):
        if not _pop(a & v) & 1:
            continue
        if not (computed[0] >> a) & 1:
            mask = 0
            for i in range(m):
                if _pop(<uint64_t>a & pts[i]) & 1:
                    mask |= (<uint64_t>1) << i
            cm[a] = mask
            computed[0] |= (<uint64_t>1) << a
        chosen[nchosen[0]] = a
        nchosen[0] += 1
        if _cover_search(uncovered & ~cm[a], d - 1, nfun, m, pts, cm,
                         computed, chosen, nchosen, failed):
            return True
        nchosen[0] -= 1
    failed[uncovered] = d
    return False


def cover_exists(int n, list points, int depth):
    """Find <= depth parity functionals covering every point, or None."""
    cdef int m = len(points)
    if m == 0:
        return []
    cdef uint64_t pts[64]
    cdef uint64_t cm[64]
    cdef uint64_t computed = 0
    cdef int chosen[64]
    cdef int nchosen = 0
    cdef int i
    for i in range(m):
        pts[i] = <uint64_t>points[i]
    cdef uint64_t full = (((<uint64_t>1) << m) - 1) if m < 64 else <uint64_t>0 - 1
    cdef int nfun = (1 << n) - 1
    failed = {}
    if _cover_search(full, depth, nfun, m, pts, cm, &computed,
                     chosen, &nchosen, failed):
        return [chosen[i] for i in range(nchosen)]
    return None

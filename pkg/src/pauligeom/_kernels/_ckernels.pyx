# cython: language_level=3, boundscheck=False, wraparound=False, cdivision=True, initializedcheck=False
"""Compiled bitset kernels.  Signatures mirror ``_pykernels`` exactly."""

import numpy as np

from libc.stdint cimport int32_t, int64_t, uint8_t, uint64_t


cdef extern from *:
    int __builtin_popcountll(unsigned long long) nogil


cdef inline int popc(uint64_t x) noexcept nogil:
    return __builtin_popcountll(x)


def popcounts(const uint64_t[:, ::1] masks):
    cdef Py_ssize_t h = masks.shape[0], w = masks.shape[1], i, c
    out = np.zeros(h, dtype=np.int64)
    cdef int64_t[::1] o = out
    cdef int64_t s
    with nogil:
        for i in range(h):
            s = 0
            for c in range(w):
                s += popc(masks[i, c])
            o[i] = s
    return out


def pair_scan(const uint64_t[:, ::1] masks, const uint64_t[::1] full,
              const int64_t[::1] ii, const int64_t[::1] jj, const int64_t[::1] kk):
    cdef Py_ssize_t m = ii.shape[0], w = masks.shape[1], t, c
    cdef int64_t i, j, k
    cdef uint64_t a, b
    cdef int32_t s
    cdef uint8_t good
    core = np.zeros(m, dtype=np.int32)
    ok = np.zeros(m, dtype=np.uint8)
    cdef int32_t[::1] cv = core
    cdef uint8_t[::1] okv = ok
    with nogil:
        for t in range(m):
            i = ii[t]
            j = jj[t]
            k = kk[t]
            s = 0
            good = k >= 0
            for c in range(w):
                a = masks[i, c]
                b = masks[j, c]
                s += popc(a & b)
                if good and ((~(a ^ b)) & full[c]) != masks[k, c]:
                    good = 0
            cv[t] = s
            okv[t] = good
    return core, ok


def pair_superset_counts(const uint64_t[:, ::1] masks, const int64_t[::1] ii, const int64_t[::1] jj):
    cdef Py_ssize_t m = ii.shape[0], h = masks.shape[0], w = masks.shape[1], t, k, c
    cdef int64_t i, j
    cdef int32_t cnt
    cdef bint inside
    out = np.zeros(m, dtype=np.int32)
    cdef int32_t[::1] o = out
    with nogil:
        for t in range(m):
            i = ii[t]
            j = jj[t]
            cnt = 0
            for k in range(h):
                inside = True
                for c in range(w):
                    if masks[i, c] & masks[j, c] & ~masks[k, c]:
                        inside = False
                        break
                if inside:
                    cnt += 1
            o[t] = cnt
    return out


def superset_counts(const uint64_t[:, ::1] masks, const uint64_t[:, ::1] queries):
    cdef Py_ssize_t q = queries.shape[0], h = masks.shape[0], w = masks.shape[1], t, k, c
    cdef int32_t cnt
    cdef bint inside
    out = np.zeros(q, dtype=np.int32)
    cdef int32_t[::1] o = out
    with nogil:
        for t in range(q):
            cnt = 0
            for k in range(h):
                inside = True
                for c in range(w):
                    if queries[t, c] & ~masks[k, c]:
                        inside = False
                        break
                if inside:
                    cnt += 1
            o[t] = cnt
    return out


def line_hits(const uint64_t[:, ::1] masks, const int64_t[:, ::1] lines):
    cdef Py_ssize_t h = masks.shape[0], nl = lines.shape[0], i, l, r
    cdef int64_t p
    cdef int hits
    out = np.zeros((h, 4), dtype=np.int64)
    cdef int64_t[:, ::1] o = out
    with nogil:
        for i in range(h):
            for l in range(nl):
                hits = 0
                for r in range(3):
                    p = lines[l, r]
                    hits += (masks[i, p >> 6] >> (p & 63)) & 1
                o[i, hits] += 1
    return out


def h1_subset_search(const uint64_t[::1] line_masks, int npoints):
    if npoints < 0 or npoints > 32:
        raise ValueError("subset search is limited to 32 points")
    cdef uint64_t s, top = (<uint64_t>1) << npoints
    cdef Py_ssize_t nl = line_masks.shape[0], l
    cdef int hits
    cdef bint good
    found = []
    for s in range(top):
        good = True
        for l in range(nl):
            hits = popc(s & line_masks[l])
            if hits == 0 or hits == 2:
                good = False
                break
        if good:
            found.append(s)
    return np.array(found, dtype=np.uint64)

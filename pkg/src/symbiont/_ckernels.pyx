# cython: language_level=3, boundscheck=False, wraparound=False, initializedcheck=False
"""Compiled bitmask kernels (int64 fast path).

Same contracts and witness ordering as ``_kernels``; callers guarantee that
inputs and every reachable intermediate fit in int64.
"""

from libc.stdint cimport int64_t, uint64_t


cdef inline int _popcount(uint64_t x) nogil:
    cdef int c = 0
    while x:
        x &= x - 1
        c += 1
    return c


cdef inline bint _canonical(int ps, int pt, uint64_t s, uint64_t t) nogil:
    return pt < ps or (pt == ps and t > s)


def superadditivity_witness(int n, long long[::1] values):
    cdef uint64_t full = (<uint64_t>1 << n) - 1
    cdef uint64_t s, comp, t, best
    cdef int ps
    cdef bint found
    for s in range(1, full + 1):
        ps = _popcount(s)
        comp = full & ~s
        found = False
        best = 0
        t = comp
        with nogil:
            while True:
                if t != 0:
                    if _canonical(ps, _popcount(t), s, t) and values[s | t] < values[s] + values[t]:
                        if not found or t < best:
                            best = t
                            found = True
                if t == 0:
                    break
                t = (t - 1) & comp
        if found:
            return (int(s), int(best))
    return None


def supermodularity_witness(int n, long long[::1] values):
    cdef uint64_t full = (<uint64_t>1 << n) - 1
    cdef uint64_t s, t, hit_s = 0, hit_t = 0
    cdef int ps
    cdef int64_t vs
    cdef bint found = False
    with nogil:
        for s in range(1, full + 1):
            ps = _popcount(s)
            vs = values[s]
            for t in range(1, full + 1):
                if t == s or not _canonical(ps, _popcount(t), s, t):
                    continue
                if vs + values[t] > values[s | t] + values[s & t]:
                    hit_s = s
                    hit_t = t
                    found = True
                    break
            if found:
                break
    if found:
        return (int(hit_s), int(hit_t))
    return None


def shapley_marginal_sums(int n, long long[::1] values, long long[::1] out):
    """out[i*n + k] accumulates marginals of agent i over size-k coalitions."""
    cdef uint64_t full = <uint64_t>1 << n
    cdef uint64_t s, bit
    cdef int i, k
    cdef int64_t vs
    with nogil:
        for s in range(full):
            vs = values[s]
            k = _popcount(s)
            for i in range(n):
                bit = <uint64_t>1 << i
                if not (s & bit):
                    out[i * n + k] += values[s | bit] - vs

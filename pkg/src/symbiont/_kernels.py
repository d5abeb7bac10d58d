"""Pure-Python bitmask kernels.

Reference implementations of the hot enumeration loops (dense MC-Net
evaluation, superadditivity / supermodularity scans, Shapley marginal
sums).  They are generic over exact number types (Fraction or int) and are
the fallback when the compiled extension is unavailable or when values do
not fit its int64 envelope.

Witness pairs follow the canonical orientation used across the engine:
the larger set first, ties broken by ascending membership mask, and the
first violating pair in (S, T)-ascending order is returned.
"""

from __future__ import annotations


def dense_values_from_rules(n: int, pos, neg, vals, zero):
    """Table of all 2^n coalition values for an MC-Net.

    Rule-centric: each rule adds its value at every mask containing the
    positive pattern and avoiding the negative one.
    """
    full = (1 << n) - 1
    out = [zero] * (1 << n)
    for p, ng, v in zip(pos, neg, vals):
        free = full & ~(p | ng)
        sub = free
        while True:
            out[p | sub] += v
            if sub == 0:
                break
            sub = (sub - 1) & free
    return out


def _canonical(ps: int, pt: int, s: int, t: int) -> bool:
    # pair (s, t) in canonical orientation: |S| > |T|, or equal sizes with s < t
    return pt < ps or (pt == ps and t > s)


def superadditivity_witness(n: int, values):
    """First disjoint pair with v(S u T) < v(S) + v(T), or None."""
    full = (1 << n) - 1
    for s in range(1, full + 1):
        ps = s.bit_count()
        comp = full & ~s
        best = -1
        t = comp
        while True:
            if t:
                if _canonical(ps, t.bit_count(), s, t) and values[s | t] < values[s] + values[t]:
                    if best < 0 or t < best:
                        best = t
            if t == 0:
                break
            t = (t - 1) & comp
        if best >= 0:
            return (s, best)
    return None


def supermodularity_witness(n: int, values):
    """First pair with v(S) + v(T) > v(S u T) + v(S n T), or None."""
    full = (1 << n) - 1
    for s in range(1, full + 1):
        ps = s.bit_count()
        vs = values[s]
        for t in range(1, full + 1):
            if t == s or not _canonical(ps, t.bit_count(), s, t):
                continue
            if vs + values[t] > values[s | t] + values[s & t]:
                return (s, t)
    return None


def shapley_marginal_sums(n: int, values, zero):
    """M[i][k] = sum over S not containing i with |S| = k of v(S u {i}) - v(S)."""
    sums = [[zero] * n for _ in range(n)]
    for s in range(1 << n):
        vs = values[s]
        k = s.bit_count()
        for i in range(n):
            bit = 1 << i
            if not s & bit:
                sums[i][k] += values[s | bit] - vs
    return sums

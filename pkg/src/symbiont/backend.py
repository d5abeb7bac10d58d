"""Kernel dispatch: compiled extension when safe, pure Python otherwise.

The compiled kernels work on int64 values, so exact rational inputs are
rescaled by the LCM of their denominators first.  The compiled path is
taken only when the scaled integers (and every intermediate the kernel can
form) provably fit in int64; otherwise the pure kernels run directly on
Fractions with unbounded precision.  Both paths are bit-identical on their
shared domain.

Set SYMBIONT_PURE=1 to force the pure path.
"""

from __future__ import annotations

import os
from array import array
from fractions import Fraction
from math import comb, factorial, lcm

from . import _kernels

try:
    from . import _ckernels  # compiled at install time; optional
except ImportError:  # pragma: no cover - depends on build environment
    _ckernels = None

_INT64_MAX = 2**63 - 1
_ZERO = Fraction(0)


def compiled_available() -> bool:
    return _ckernels is not None


def _use_compiled() -> bool:
    return _ckernels is not None and os.environ.get("SYMBIONT_PURE", "") not in ("1", "true")


def backend_name() -> str:
    return "compiled" if _use_compiled() else "pure"


def _scale(fracs) -> tuple[int, list[int]]:
    """Common denominator and the integer numerators values*den."""
    den = 1
    for f in fracs:
        den = lcm(den, f.denominator)
    return den, [f.numerator * (den // f.denominator) for f in fracs]


def _fits(ints, headroom: int) -> bool:
    """True when every |value| * headroom stays below int64 overflow."""
    if not ints:
        return True
    peak = max(abs(v) for v in ints)
    return peak <= _INT64_MAX // max(headroom, 1)


def _as_i64(ints) -> array:
    return array("q", ints)


# -- dense MC-Net evaluation ---------------------------------------------------

def dense_values_from_rules(n: int, rules) -> list[Fraction]:
    """Values of all 2^n coalitions under an MC-Net, as Fractions.

    Always the pure rule-centric enumeration: it touches only the cells a
    rule applies to, and benchmarking showed a compiled variant loses its
    gain to boxing 2^n results back into Fractions.
    """
    pos = [r[0] for r in rules]
    neg = [r[1] for r in rules]
    vals = [Fraction(r[2]) for r in rules]
    return _kernels.dense_values_from_rules(n, pos, neg, vals, _ZERO)


# -- pair scans ------------------------------------------------------------------

def _scan(n: int, values, compiled_fn, pure_fn):
    if _use_compiled():
        den, ints = _scale(values)
        if _fits(ints, 2):  # kernels compare sums of two table cells
            hit = compiled_fn(n, _as_i64(ints))
            return None if hit is None else (hit[0], hit[1])
    return pure_fn(n, values)


def superadditivity_witness(n: int, values) -> tuple[int, int] | None:
    if _use_compiled():
        result = _scan(n, values, _ckernels.superadditivity_witness, _kernels.superadditivity_witness)
    else:
        result = _kernels.superadditivity_witness(n, values)
    return result


def supermodularity_witness(n: int, values) -> tuple[int, int] | None:
    if _use_compiled():
        result = _scan(n, values, _ckernels.supermodularity_witness, _kernels.supermodularity_witness)
    else:
        result = _kernels.supermodularity_witness(n, values)
    return result


# -- Shapley ---------------------------------------------------------------------

def shapley_from_values(n: int, values) -> tuple[Fraction, ...]:
    """Exact Shapley allocation from a dense value table.

    Marginal contributions are aggregated per (agent, coalition size); the
    factorial weights s!(n-s-1)!/n! are applied with arbitrary-precision
    integers, so the result is exact on both backends.
    """
    if n == 0:
        return ()
    den = 1
    sums = None
    if _use_compiled():
        den, ints = _scale(values)
        # a per-size accumulator holds at most C(n-1, s) marginals of 2 cells
        headroom = 2 * comb(n - 1, (n - 1) // 2)
        if _fits(ints, headroom):
            flat = array("q", bytes(8 * n * n))
            _ckernels.shapley_marginal_sums(n, _as_i64(ints), flat)
            sums = [[flat[i * n + k] for k in range(n)] for i in range(n)]
    if sums is None:
        den = 1
        sums = _kernels.shapley_marginal_sums(n, values, _ZERO)
    nfact = factorial(n)
    weights = [factorial(k) * factorial(n - 1 - k) for k in range(n)]
    out = []
    for i in range(n):
        num = sum(weights[k] * sums[i][k] for k in range(n))
        if isinstance(num, Fraction):
            out.append(num / nfact)
        else:
            out.append(Fraction(num, nfact * den))
    return tuple(out)

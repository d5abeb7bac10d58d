"""Exact rational linear feasibility with verifiable infeasibility certificates.

Decides whether a finite system of linear equalities and >=-inequalities
over the rationals has a solution.  Feasible systems yield an exact witness
point; infeasible systems yield a Farkas-style certificate: multipliers
(free-signed for equalities, non-negative for inequalities) whose
combination cancels every variable yet leaves a strictly positive
right-hand side, i.e. the contradiction 0 >= positive.

Method: phase-I primal simplex on a dense Fraction tableau.  Free variables
are split (x = x+ - x-), inequalities get slack variables, rows are sign-
normalized to non-negative right-hand sides, and one artificial variable
per row forms the starting basis.  Bland's rule prevents cycling, so
degenerate and redundant systems need no special-casing.  The certificate
is read off the optimal reduced costs of the artificial columns.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Sequence

from .rational import as_rational

_ZERO = Fraction(0)
_ONE = Fraction(1)

Row = tuple[tuple[Fraction, ...], Fraction]


@dataclass(frozen=True)
class LinearSystem:
    """c.x = rhs for equalities, c.x >= rhs for inequalities_ge."""

    num_vars: int
    equalities: tuple[Row, ...] = ()
    inequalities_ge: tuple[Row, ...] = ()

    def __post_init__(self):
        for coeffs, _ in (*self.equalities, *self.inequalities_ge):
            if len(coeffs) != self.num_vars:
                raise ValueError(
                    f"coefficient vector of length {len(coeffs)} in a "
                    f"{self.num_vars}-variable system"
                )


def system(num_vars, equalities=(), inequalities_ge=()) -> LinearSystem:
    """Build a LinearSystem, coercing entries to exact rationals."""

    def rows(raw):
        return tuple(
            (tuple(as_rational(c) for c in coeffs), as_rational(rhs))
            for coeffs, rhs in raw
        )

    return LinearSystem(num_vars, rows(equalities), rows(inequalities_ge))


@dataclass(frozen=True)
class FarkasCertificate:
    """Multipliers proving infeasibility.

    sum(eq[i] * equality_i) + sum(ge[j] * inequality_j), with every ge[j]
    >= 0, has an all-zero coefficient vector and a positive right-hand
    side.
    """

    eq: tuple[Fraction, ...]
    ge: tuple[Fraction, ...]


@dataclass(frozen=True)
class FeasibilityResult:
    witness: tuple[Fraction, ...] | None
    certificate: FarkasCertificate | None

    @property
    def feasible(self) -> bool:
        return self.witness is not None


def satisfies(sys: LinearSystem, point: Sequence[Fraction]) -> bool:
    """Exact check of a candidate point against every constraint."""
    if len(point) != sys.num_vars:
        return False
    for coeffs, rhs in sys.equalities:
        if sum((c * x for c, x in zip(coeffs, point)), _ZERO) != rhs:
            return False
    for coeffs, rhs in sys.inequalities_ge:
        if sum((c * x for c, x in zip(coeffs, point)), _ZERO) < rhs:
            return False
    return True


def verify_certificate(sys: LinearSystem, cert: FarkasCertificate) -> bool:
    """Expand the certificate and confirm it yields 0 >= positive."""
    if len(cert.eq) != len(sys.equalities) or len(cert.ge) != len(sys.inequalities_ge):
        return False
    if any(lam < 0 for lam in cert.ge):
        return False
    combo = [_ZERO] * sys.num_vars
    rhs = _ZERO
    for mult, (coeffs, b) in zip(cert.eq, sys.equalities):
        for j, c in enumerate(coeffs):
            combo[j] += mult * c
        rhs += mult * b
    for mult, (coeffs, b) in zip(cert.ge, sys.inequalities_ge):
        for j, c in enumerate(coeffs):
            combo[j] += mult * c
        rhs += mult * b
    return all(c == 0 for c in combo) and rhs > 0


def feasible(sys: LinearSystem) -> FeasibilityResult:
    """Decide the system exactly; witness or verifiable certificate."""
    n = sys.num_vars
    rows = [*sys.equalities, *sys.inequalities_ge]
    n_eq = len(sys.equalities)
    n_ge = len(sys.inequalities_ge)
    m = len(rows)
    if m == 0:
        return FeasibilityResult(tuple([_ZERO] * n), None)

    # columns: x+ (n) | x- (n) | slack (n_ge) | artificial (m) | rhs
    slack0 = 2 * n
    art0 = slack0 + n_ge
    width = art0 + m + 1
    tableau: list[list[Fraction]] = []
    sign: list[int] = []
    for i, (coeffs, rhs) in enumerate(rows):
        sigma = -1 if rhs < 0 else 1
        row = [_ZERO] * width
        for j, c in enumerate(coeffs):
            row[j] = sigma * c
            row[n + j] = -sigma * c
        if i >= n_eq:
            row[slack0 + (i - n_eq)] = -sigma * _ONE
        row[art0 + i] = _ONE
        row[-1] = sigma * rhs
        tableau.append(row)
        sign.append(sigma)

    # phase-I objective: minimize the artificial sum; reduced-cost row for
    # the all-artificial basis is c_j - sum_i A_ij (zero on artificials).
    obj = [_ZERO] * width
    for j in range(width):
        col_sum = sum((tableau[i][j] for i in range(m)), _ZERO)
        cost = _ONE if art0 <= j < art0 + m else _ZERO
        obj[j] = cost - col_sum
    obj[-1] = -sum((tableau[i][-1] for i in range(m)), _ZERO)
    for i in range(m):
        obj[art0 + i] = _ZERO

    basis = [art0 + i for i in range(m)]

    while True:
        enter = -1
        for j in range(width - 1):
            if obj[j] < 0:
                enter = j
                break
        if enter < 0:
            break
        leave = -1
        best_ratio = None
        for i in range(m):
            a = tableau[i][enter]
            if a > 0:
                ratio = tableau[i][-1] / a
                if (
                    best_ratio is None
                    or ratio < best_ratio
                    or (ratio == best_ratio and basis[i] < basis[leave])
                ):
                    best_ratio = ratio
                    leave = i
        if leave < 0:
            # phase-I objective is bounded below by 0; no unbounded ray exists
            raise AssertionError("phase-I simplex reported an unbounded direction")
        pivot = tableau[leave][enter]
        prow = tableau[leave]
        inv = _ONE / pivot
        for j in range(width):
            prow[j] *= inv
        for i in range(m):
            if i == leave:
                continue
            f = tableau[i][enter]
            if f != 0:
                row = tableau[i]
                for j in range(width):
                    row[j] -= f * prow[j]
        f = obj[enter]
        if f != 0:
            for j in range(width):
                obj[j] -= f * prow[j]
        basis[leave] = enter

    objective = -obj[-1]
    if objective == 0:
        point = [_ZERO] * n
        for i, b in enumerate(basis):
            if b < n:
                point[b] += tableau[i][-1]
            elif b < 2 * n:
                point[b - n] -= tableau[i][-1]
        witness = tuple(point)
        assert satisfies(sys, witness)
        return FeasibilityResult(witness, None)

    # infeasible: dual multipliers from the artificial reduced costs
    pi = [(_ONE - obj[art0 + i]) * sign[i] for i in range(m)]
    cert = FarkasCertificate(tuple(pi[:n_eq]), tuple(pi[n_eq:]))
    assert verify_certificate(sys, cert)
    return FeasibilityResult(None, cert)

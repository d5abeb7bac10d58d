"""Solution concepts: Shapley allocations, core, balancedness, convexity.

Two independent Shapley routes are provided.  ``shapley_permutation``
evaluates the permutation-average formula

    phi_i = sum over S not containing i of s!(n-s-1)!/n! (v(S+i) - v(S))

by subset enumeration (capped, the oracle route).  ``shapley_mcnet`` uses
per-rule closed forms and is linear in the size of the net (the production
route): a rule (P, N) -> v pays v (p-1)! m! / (p+m)! to each member of P
and -v p! (m-1)! / (p+m)! to each member of N, where p = |P|, m = |N|;
agents outside the rule's patterns are dummies for that rule, and rule
games sum by additivity.

Core non-emptiness is decided exactly through :mod:`symbiont.ratsolve` on
the system {sum_N x = v(N), sum_S x >= v(S) for all S}, with incremental
constraint activation so structured games stay cheap.  Infeasibility
certificates normalize into a violating balanced vector of weights, the
Bondareva-Shapley witness; for n <= 4 an independent dual check enumerates
the vertices of the balanced-weight polytope and must agree.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from math import factorial
from typing import Iterator

from . import backend, ratsolve
from .errors import CapExceededError
from .games import (
    SHAPLEY_ORACLE_CAP,
    Allocation,
    Game,
    MCNet,
    coalition_sum,
    members,
    require_cap,
    require_valid,
    size,
)

_ZERO = Fraction(0)
_ONE = Fraction(1)


# -- Shapley --------------------------------------------------------------------

def shapley_permutation(game: Game) -> Allocation:
    """Permutation-average Shapley allocation (exact, oracle-capped)."""
    n = game.n
    if n > SHAPLEY_ORACLE_CAP:
        raise CapExceededError(
            f"permutation-formula Shapley is capped at {SHAPLEY_ORACLE_CAP} agents (got {n})"
        )
    return backend.shapley_from_values(n, game.dense_values())


def shapley_mcnet(net: MCNet) -> Allocation:
    """Per-rule closed-form Shapley allocation; linear in the net size."""
    require_valid(net, allow_zero=True)
    n = net.universe.n
    phi = [_ZERO] * n
    for rule in net.rules:
        p = size(rule.positive)
        m = size(rule.negative)
        total = factorial(p + m)
        gain = rule.value * Fraction(factorial(p - 1) * factorial(m), total)
        for i in members(rule.positive):
            phi[i] += gain
        if m:
            loss = rule.value * Fraction(factorial(p) * factorial(m - 1), total)
            for j in members(rule.negative):
                phi[j] -= loss
    return tuple(phi)


def shapley(game: Game) -> Allocation:
    """Exact Shapley allocation via the best available route.

    MC-Net backings use the closed forms (no cap); explicit backings use the
    subset-sum of the permutation formula (cap-bounded by dense evaluation).
    """
    if game.net is not None:
        return shapley_mcnet(game.net)
    require_cap(game.n, "Shapley over an explicit table")
    return backend.shapley_from_values(game.n, game.dense_values())


# -- core -----------------------------------------------------------------------

@dataclass(frozen=True)
class MembershipViolation:
    """Core condition the allocation breaks.

    Efficiency (sum x != v(N)) is reported before rationality; among
    violated rationality constraints the most violated coalition wins,
    ties broken by ascending membership mask.
    """

    kind: str
    coalition: int
    allocated: Fraction
    required: Fraction


def core_membership(game: Game, alloc: Allocation) -> MembershipViolation | None:
    require_cap(game.n, "core membership")
    if len(alloc) != game.n:
        from .errors import AllocationLengthError

        raise AllocationLengthError(
            f"allocation has {len(alloc)} entries for a {game.n}-agent game"
        )
    values = game.dense_values()
    grand = (1 << game.n) - 1
    total = sum(alloc, _ZERO)
    if total != values[grand]:
        return MembershipViolation("efficiency", grand, total, values[grand])
    worst = None
    worst_deficit = _ZERO
    for s in range(1, grand):
        got = coalition_sum(alloc, s)
        deficit = values[s] - got
        if deficit > worst_deficit:
            worst = MembershipViolation("rationality", s, got, values[s])
            worst_deficit = deficit
    return worst


@dataclass(frozen=True)
class CoreCertificate:
    """Farkas multipliers for an empty core, in coalition terms.

    ``eff`` (negative) multiplies the efficiency equality; ``rat`` maps
    coalition masks to non-negative multipliers on their rationality
    constraints.  Dividing ``rat`` by ``-eff`` yields a balanced vector of
    weights whose weighted coalition values exceed v(N).
    """

    eff: Fraction
    rat: tuple[tuple[int, Fraction], ...]
    excess: Fraction  # combined rhs: sum(rat * v(S)) + eff * v(N) > 0

    def balanced_vector(self) -> dict[int, Fraction]:
        scale = -self.eff
        return {mask: lam / scale for mask, lam in self.rat}

    def verify(self, game: Game) -> bool:
        values = game.dense_values()
        n = game.n
        cover = [self.eff] * n
        rhs = self.eff * values[(1 << n) - 1]
        for mask, lam in self.rat:
            if lam < 0:
                return False
            for i in members(mask):
                cover[i] += lam
            rhs += lam * values[mask]
        return all(c == 0 for c in cover) and rhs > 0 and rhs == self.excess


@dataclass(frozen=True)
class CoreVerdict:
    nonempty: bool
    witness: Allocation | None
    certificate: CoreCertificate | None

    @property
    def violated(self) -> tuple[int, ...] | None:
        """Coalitions whose rationality constraints form the conflict."""
        if self.certificate is None:
            return None
        return tuple(mask for mask, _ in self.certificate.rat)


def _core_subsystem(n: int, values, active: list[int]) -> ratsolve.LinearSystem:
    grand = (1 << n) - 1
    eff = (tuple(_ONE for _ in range(n)), values[grand])
    ges = []
    for mask in active:
        coeffs = tuple(_ONE if mask >> i & 1 else _ZERO for i in range(n))
        ges.append((coeffs, values[mask]))
    return ratsolve.LinearSystem(n, (eff,), tuple(ges))


def core_feasible(game: Game) -> CoreVerdict:
    """Exact core decision: witness allocation or infeasibility certificate.

    Constraints are activated incrementally: each round solves the system
    restricted to the active coalitions, then scans all 2^n constraints
    against the returned witness.  An infeasible subsystem proves the full
    system infeasible; a witness that survives the full scan is a core
    point.
    """
    require_cap(game.n, "core feasibility")
    n = game.n
    values = game.dense_values()
    grand = (1 << n) - 1
    active = [1 << i for i in range(n)]
    seen = set(active)
    while True:
        result = ratsolve.feasible(_core_subsystem(n, values, active))
        if not result.feasible:
            cert = result.certificate
            eff = cert.eq[0]
            rat = tuple(
                (mask, lam) for mask, lam in zip(active, cert.ge) if lam != 0
            )
            excess = eff * values[grand] + sum(
                (lam * values[mask] for mask, lam in rat), _ZERO
            )
            verdict = CoreCertificate(eff, rat, excess)
            assert verdict.verify(game)
            return CoreVerdict(False, None, verdict)
        x = result.witness
        added = 0
        for s in range(1, grand):
            if s in seen:
                continue
            if coalition_sum(x, s) < values[s]:
                active.append(s)
                seen.add(s)
                added += 1
                if added >= 16:
                    break
        if added == 0:
            return CoreVerdict(True, tuple(x), None)


# -- balancedness ------------------------------------------------------------------

def _solve_square(matrix, rhs):
    """Exact Gaussian elimination; None when the matrix is singular."""
    k = len(matrix)
    a = [list(row) + [rhs[i]] for i, row in enumerate(matrix)]
    for col in range(k):
        pivot = next((r for r in range(col, k) if a[r][col] != 0), None)
        if pivot is None:
            return None
        a[col], a[pivot] = a[pivot], a[col]
        inv = _ONE / a[col][col]
        a[col] = [v * inv for v in a[col]]
        for r in range(k):
            if r != col and a[r][col] != 0:
                f = a[r][col]
                a[r] = [v - f * p for v, p in zip(a[r], a[col])]
    return [a[r][k] for r in range(k)]


def balanced_vector_vertices(n: int) -> Iterator[dict[int, Fraction]]:
    """Vertices of {weights >= 0 : every agent's weights sum to 1}.

    Enumerates basic feasible solutions over the nonempty-coalition columns;
    intended for small n (the dual cross-check route).
    """
    from itertools import combinations

    cols = list(range(1, 1 << n))
    seen = set()
    for basis in combinations(cols, n):
        matrix = [[_ONE if mask >> i & 1 else _ZERO for mask in basis] for i in range(n)]
        sol = _solve_square(matrix, [_ONE] * n)
        if sol is None or any(v < 0 for v in sol):
            continue
        vertex = tuple(sorted((m, v) for m, v in zip(basis, sol) if v != 0))
        if vertex in seen:
            continue
        seen.add(vertex)
        yield dict(vertex)


def balanced_check_by_vertices(game: Game) -> tuple[bool, dict[int, Fraction] | None]:
    """Dual balancedness check: max weighted cover value vs v(N).

    Returns (balanced, violating balanced vector or None).  Exponential in
    coalition count; use only for small n.
    """
    n = game.n
    values = game.dense_values()
    grand_value = values[(1 << n) - 1]
    worst = None
    worst_total = None
    for vertex in balanced_vector_vertices(n):
        total = sum((lam * values[mask] for mask, lam in vertex.items()), _ZERO)
        if total > grand_value and (worst_total is None or total > worst_total):
            worst = vertex
            worst_total = total
    return (worst is None), worst


def is_balanced(game: Game) -> bool:
    """Bondareva-Shapley balancedness == core non-emptiness.

    For n <= 4 the independent dual vertex enumeration runs as a
    cross-check and must agree.
    """
    require_cap(game.n, "balancedness")
    verdict = core_feasible(game).nonempty
    if game.n <= 4:
        dual, _ = balanced_check_by_vertices(game)
        if dual != verdict:
            raise AssertionError(
                f"primal core verdict {verdict} disagrees with dual balancedness {dual}"
            )
    return verdict


# -- convexity ------------------------------------------------------------------

def is_supermodular(game: Game) -> tuple[int, int] | None:
    """None when v(S) + v(T) <= v(S u T) + v(S n T) for all pairs.

    Otherwise the first violating pair, larger set first, ties by
    ascending membership mask.
    """
    require_cap(game.n, "supermodularity")
    return backend.supermodularity_witness(game.n, game.dense_values())


# -- combined verdict --------------------------------------------------------------

@dataclass(frozen=True)
class Implementability:
    stable: bool
    fair_and_stable: bool


def check_implementable(game: Game) -> Implementability:
    """Stable = nonempty core; fair-and-stable = Shapley point is in it."""
    require_cap(game.n, "implementability")
    stable = core_feasible(game).nonempty
    fair = stable and core_membership(game, shapley(game)) is None
    return Implementability(stable, fair)

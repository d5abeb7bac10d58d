"""Normative compliance, collectible taxes, and Shapley-based redistribution.

After implementation, the evidence set records which ISNs actually formed.
Behavior complies with the policy exactly when the realized coalitions (of
size >= 2) equal the promoted set.  Violations leave collected taxes; they
are redistributed among the agents of the promoted coalitions that did
implement, proportionally to each agent's Shapley value in the base-game
restriction to their union -- a budget-balanced "Robin Hood" transfer,
since Shapley efficiency makes the shares sum to the pot.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

from .errors import InputError, UniverseMismatchError
from .games import Allocation, Universe, members, size
from .policy import Policy
from .regulation import CISNGame
from .solutions import shapley

_ZERO = Fraction(0)


@dataclass(frozen=True)
class EvidenceSet:
    """The ISNs actually implemented; an agent joins at most one."""

    universe: Universe
    realized: tuple[int, ...]

    def __post_init__(self):
        taken = 0
        for mask in self.realized:
            self.universe.check_mask(mask)
            if taken & mask:
                clash = taken & mask
                raise InputError(
                    "evidence coalitions overlap: agent "
                    f"{self.universe.names[next(members(clash))]!r} appears twice"
                )
            taken |= mask
        object.__setattr__(self, "realized", tuple(sorted(self.realized)))

    def effective(self) -> tuple[int, ...]:
        return tuple(m for m in self.realized if size(m) >= 2)


@dataclass(frozen=True)
class ComplianceReport:
    compliant: bool
    missing_promoted: tuple[int, ...]
    extra_realized: tuple[int, ...]


def compliance(evidence: EvidenceSet, policy: Policy) -> ComplianceReport:
    """Compliant iff the realized ISNs equal the promoted set exactly."""
    if evidence.universe != policy.universe:
        raise UniverseMismatchError("evidence and policy universes differ")
    realized = set(evidence.effective())
    promoted = set(policy.effective_promoted())
    missing = tuple(sorted(promoted - realized))
    extra = tuple(sorted(realized - promoted))
    return ComplianceReport(not missing and not extra, missing, extra)


def collectible_tax(cisn: CISNGame, evidence: EvidenceSet) -> Fraction:
    """Total tax accrued by the realized coalitions.

    Sums the negated negative incentive values of what actually happened;
    subsidies on realized coalitions do not offset the amount.
    """
    if evidence.universe != cisn.universe:
        raise UniverseMismatchError("evidence and CISN universes differ")
    tau = _ZERO
    for mask in evidence.realized:
        inc = cisn.incentives.incentive(mask)
        if inc < 0:
            tau -= inc
    return tau


@dataclass(frozen=True)
class RedistributionResult:
    omega: Allocation  # per-agent distributed amount, zero outside the pool
    tau: Fraction
    residual: Fraction  # undistributed remainder (tau when no pool exists)
    pool: int  # mask: union of implemented promoted coalitions
    cross_group_synergy: bool  # v(pool) differs from the sum of group values


def redistribute(
    cisn: CISNGame, policy: Policy, evidence: EvidenceSet, tau: Fraction
) -> RedistributionResult:
    """Shapley-proportional redistribution of the collected tax.

    The pool is the union of implemented promoted coalitions; agent i in
    the pool receives tau * phi_i / v(pool), where phi is the Shapley
    allocation of the base game restricted to the pool.  When no promoted
    coalition was implemented, or the pool's base value is zero, the
    formula is undefined and tau is retained as residual.
    """
    if evidence.universe != policy.universe or evidence.universe != cisn.universe:
        raise UniverseMismatchError("CISN, policy, and evidence universes differ")
    tau = Fraction(tau)
    if tau < 0:
        raise InputError(f"collectible tax cannot be negative: {tau}")
    n = cisn.n
    implemented = sorted(set(evidence.effective()) & set(policy.effective_promoted()))
    pool = 0
    for mask in implemented:
        pool |= mask
    zeros = tuple([_ZERO] * n)
    if not implemented:
        return RedistributionResult(zeros, tau, tau, 0, False)
    sub = cisn.base.restrict(pool)
    pool_value = cisn.base.value(pool)
    group_sum = sum((cisn.base.value(m) for m in implemented), _ZERO)
    synergy = pool_value != group_sum
    if pool_value == 0:
        return RedistributionResult(zeros, tau, tau, pool, synergy)
    phi = shapley(sub)
    omega = [_ZERO] * n
    for sub_index, agent in enumerate(members(pool)):
        omega[agent] = tau * phi[sub_index] / pool_value
    return RedistributionResult(tuple(omega), tau, tau - sum(omega, _ZERO), pool, synergy)

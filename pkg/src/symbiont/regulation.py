"""Incentive rule sets: tax/subsidy generation, CISN composition, enforcement.

Regulation rule sets are MC-Nets whose values are incentives: negative
values are taxes, positive values subsidies, and zero values are allowed
(they arise from the single-game generator and are elided only at
serialization).  Composing a base game with an incentive set yields a
coordinated game c(S) = v(S) + i(S), evaluated pointwise.

Two generators are provided.  ``generate_regulation`` transforms one
MC-Net game: rules applicable to the grand coalition keep value 0, every
other rule is negated, so defecting coalitions face exactly their former
gain as a tax.  ``generate_policy_regulation`` enforces a whole policy
with mutually exclusive promoted coalitions: every non-promoted coalition
of size >= 2 with nonzero base value is taxed down to zero via a rule
(S, N \\ S) -> -v(S), which neutralizes prohibited coalitions and any
coalition spanning promoted groups, while each promoted group keeps its
value inside its own sub-game.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

from .errors import ExclusivityError, UniverseMismatchError
from .games import Game, MCNet, Rule, Universe, require_cap, require_valid, size
from .policy import Policy, check_mutual_exclusivity
from .solutions import (
    Allocation,
    CoreVerdict,
    Implementability,
    check_implementable,
    core_feasible,
    shapley,
)

_ZERO = Fraction(0)


@dataclass(frozen=True)
class IncentiveRuleSet:
    """MC-Net of incentives; zero-valued rules are permitted."""

    net: MCNet

    def __post_init__(self):
        require_valid(self.net, allow_zero=True)

    @property
    def universe(self) -> Universe:
        return self.net.universe

    def incentive(self, mask: int) -> Fraction:
        return self.net.value(mask)

    def nonzero_rules(self) -> tuple[Rule, ...]:
        return tuple(r for r in self.net.rules if r.value != 0)


def empty_ruleset(universe: Universe) -> IncentiveRuleSet:
    return IncentiveRuleSet(MCNet(universe, ()))


def generate_regulation(game_net: MCNet) -> IncentiveRuleSet:
    """Implementability-ensuring rule set for a single MC-Net game.

    Mirrors the input rule order: grand-coalition-applicable rules map to
    value 0, all others to the negated value.
    """
    require_valid(game_net, allow_zero=True)
    grand = game_net.universe.grand
    applicable = set(game_net.applicable(grand))
    rules = tuple(
        Rule(r.positive, r.negative, _ZERO if i in applicable else -r.value)
        for i, r in enumerate(game_net.rules)
    )
    return IncentiveRuleSet(MCNet(game_net.universe, rules))


def generate_policy_regulation(game: Game, policy: Policy) -> IncentiveRuleSet:
    """Policy-enforcing rule set: tax every non-promoted coalition to zero.

    Requires mutually exclusive promoted coalitions.  Emits one rule
    (S, N \\ S) -> -v(S) per non-promoted coalition of size >= 2 with
    nonzero value, ascending by membership mask; promoted coalitions are
    left untaxed.
    """
    if game.universe != policy.universe:
        raise UniverseMismatchError("game and policy universes differ")
    witness = check_mutual_exclusivity(policy)
    if witness is not None:
        a, b = witness
        raise ExclusivityError(
            witness,
            "promoted coalitions overlap: "
            f"{list(policy.universe.member_names(a))} and "
            f"{list(policy.universe.member_names(b))}",
        )
    require_cap(game.n, "policy regulation")
    promoted = set(policy.effective_promoted())
    values = game.dense_values()
    grand = (1 << game.n) - 1
    rules = []
    for m in range(1 << game.n):
        if size(m) >= 2 and m not in promoted and values[m] != 0:
            rules.append(Rule(m, grand & ~m, -values[m]))
    return IncentiveRuleSet(MCNet(game.universe, tuple(rules)))


@dataclass(frozen=True)
class CISNGame:
    """A base ISN game plus incentives; c(S) = v(S) + i(S) pointwise."""

    base: Game
    incentives: IncentiveRuleSet

    def __post_init__(self):
        if self.base.universe != self.incentives.universe:
            raise UniverseMismatchError("base game and incentive set universes differ")

    @property
    def universe(self) -> Universe:
        return self.base.universe

    @property
    def n(self) -> int:
        return self.base.n

    def value(self, mask: int) -> Fraction:
        return self.base.value(mask) + self.incentives.incentive(mask)

    def as_game(self) -> Game:
        """Materialize the composed game for the solution concepts.

        MC-Net bases concatenate rule lists (evaluation sums applicable
        rules across both nets); explicit bases add the incentive values
        into the table.
        """
        if self.base.net is not None:
            combined = MCNet(
                self.universe, self.base.net.rules + self.incentives.net.rules
            )
            return Game.from_mcnet(combined)
        require_cap(self.n, "CISN materialization")
        inc = self.incentives.net
        table = {m: v + inc.value(m) for m, v in self.base.table.items()}
        return Game(self.universe, table=table)


def compose(base: Game, incentives: IncentiveRuleSet) -> CISNGame:
    return CISNGame(base, incentives)


@dataclass(frozen=True)
class PromotedOutcome:
    coalition: int
    implementability: Implementability
    composed_value: Fraction
    shapley: Allocation  # of the composed sub-game, indexed by sub-universe
    strict_gain: bool  # composed value strictly beats the all-singleton outcome

    @property
    def ok(self) -> bool:
        return (
            self.implementability.stable
            and self.implementability.fair_and_stable
            and self.strict_gain
        )


@dataclass(frozen=True)
class ProhibitedOutcome:
    coalition: int
    composed_value: Fraction
    sub_core: CoreVerdict
    unimplementable: bool  # no strictly positive stable gain remains

    @property
    def ok(self) -> bool:
        return self.unimplementable


@dataclass(frozen=True)
class EnforcementReport:
    promoted: tuple[PromotedOutcome, ...]
    prohibited: tuple[ProhibitedOutcome, ...]

    @property
    def ok(self) -> bool:
        return all(p.ok for p in self.promoted) and all(p.ok for p in self.prohibited)


def verify_enforcement(cisn: CISNGame, policy: Policy) -> EnforcementReport:
    """Check the policy against the composed game.

    Each promoted coalition is restricted to its own sub-universe and must
    be implementable there (nonempty core, Shapley inside it) with a
    strictly positive composed value; each listed prohibited coalition
    must retain no positive gain (composed value <= 0).  The prohibited
    sub-game core verdict is reported for context.
    """
    if cisn.universe != policy.universe:
        raise UniverseMismatchError("CISN and policy universes differ")
    witness = check_mutual_exclusivity(policy)
    if witness is not None:
        a, b = witness
        raise ExclusivityError(
            witness,
            "promoted coalitions overlap: "
            f"{list(policy.universe.member_names(a))} and "
            f"{list(policy.universe.member_names(b))}",
        )
    require_cap(cisn.n, "enforcement verification")
    composed = cisn.as_game()
    promoted = []
    for mask in policy.effective_promoted():
        sub = composed.restrict(mask)
        impl = check_implementable(sub)
        cvalue = composed.value(mask)
        promoted.append(
            PromotedOutcome(mask, impl, cvalue, shapley(sub), cvalue > 0)
        )
    prohibited = []
    for mask in policy.effective_prohibited():
        sub = composed.restrict(mask)
        cvalue = composed.value(mask)
        prohibited.append(
            ProhibitedOutcome(mask, cvalue, core_feasible(sub), cvalue <= 0)
        )
    return EnforcementReport(tuple(promoted), tuple(prohibited))

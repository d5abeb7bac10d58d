"""Socio-economic policies: promoted / permitted / prohibited coalitions.

A policy is a total, game-independent labeling of coalitions, stored as
explicit promoted and prohibited lists plus a default label for everything
else.  Coalitions of fewer than two agents cannot host a symbiotic network:
explicit labels on them are accepted but the engine treats them as
permitted and every downstream consumer (regulation, compliance,
redistribution) works on the size >= 2 restriction.
"""

from __future__ import annotations

import enum
from dataclasses import dataclass, field

from .errors import InputError
from .games import Universe, size


class PolicyLabel(enum.Enum):
    PROMOTED = "promoted"
    PERMITTED = "permitted"
    PROHIBITED = "prohibited"


@dataclass(frozen=True)
class Policy:
    universe: Universe
    promoted: tuple[int, ...] = ()
    prohibited: tuple[int, ...] = ()
    default: PolicyLabel = PolicyLabel.PERMITTED

    def __post_init__(self):
        for mask in (*self.promoted, *self.prohibited):
            self.universe.check_mask(mask)
        object.__setattr__(self, "promoted", tuple(sorted(set(self.promoted))))
        object.__setattr__(self, "prohibited", tuple(sorted(set(self.prohibited))))
        clash = set(self.promoted) & set(self.prohibited)
        if clash:
            names = self.universe.member_names(min(clash))
            raise InputError(f"coalition {list(names)} is both promoted and prohibited")
        if self.default is PolicyLabel.PROMOTED:
            raise InputError(
                "the default label cannot be 'promoted': the promoted set must be finite"
            )

    def label(self, mask: int) -> PolicyLabel:
        self.universe.check_mask(mask)
        if mask in self.promoted:
            return PolicyLabel.PROMOTED
        if mask in self.prohibited:
            return PolicyLabel.PROHIBITED
        if size(mask) < 2:
            return PolicyLabel.PERMITTED
        return self.default

    def effective_promoted(self) -> tuple[int, ...]:
        """Promoted coalitions that can actually host an ISN (size >= 2)."""
        return tuple(m for m in self.promoted if size(m) >= 2)

    def effective_prohibited(self) -> tuple[int, ...]:
        return tuple(m for m in self.prohibited if size(m) >= 2)


def label(policy: Policy, coalition: int) -> PolicyLabel:
    return policy.label(coalition)


def check_mutual_exclusivity(policy: Policy) -> tuple[int, int] | None:
    """None when all promoted coalitions are pairwise disjoint.

    Otherwise the first overlapping pair in ascending mask order.
    """
    groups = policy.effective_promoted()
    for i, a in enumerate(groups):
        for b in groups[i + 1 :]:
            if a & b:
                return (a, b)
    return None


def check_minimality(policy: Policy) -> tuple[int, int] | None:
    """None when no promoted coalition strictly contains another.

    Otherwise a witness (subset, superset).
    """
    groups = policy.effective_promoted()
    for a in groups:
        for b in groups:
            if a != b and a & ~b == 0:
                return (a, b)
    return None

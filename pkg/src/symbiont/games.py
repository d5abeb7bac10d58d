"""Agent universes, coalitions, MC-Net rules, and game evaluation.

Coalitions are canonical n-bit membership masks over a universe of densely
indexed agents (bit ``a`` set means agent ``a`` is a member).  Display names
exist only at the serialization boundary.  A game's characteristic function
is backed either by an explicit (sparse) table over all coalitions of size
>= 2 or by a basic MC-Net: a finite list of rules ``(positive, negative) ->
value`` where a rule applies to ``S`` iff its positive pattern is contained
in ``S`` and its negative pattern is disjoint from ``S``; the value of ``S``
is the sum over applicable rules.

All types are immutable and all operations are pure.
"""

from __future__ import annotations

import os
from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable, Iterator, Mapping

from . import backend
from .errors import (
    AllocationLengthError,
    CapExceededError,
    InputError,
    InvalidCoalitionError,
    MalformedNetError,
)
from .rational import as_rational

DEFAULT_MAX_AGENTS = 20
SHAPLEY_ORACLE_CAP = 10  # n! oracle: permutation-formula Shapley


def max_agents() -> int:
    """Universe-size cap for exhaustive 2^N operations.

    MC-Net evaluation of a single coalition is never capped; the cap guards
    dense enumeration.  Overridable via the SYMBIONT_MAX_AGENTS env var.
    """
    raw = os.environ.get("SYMBIONT_MAX_AGENTS")
    if raw is None:
        return DEFAULT_MAX_AGENTS
    try:
        cap = int(raw)
    except ValueError:
        raise InputError(f"SYMBIONT_MAX_AGENTS is not an integer: {raw!r}") from None
    if cap < 1:
        raise InputError(f"SYMBIONT_MAX_AGENTS must be positive: {cap}")
    return cap


def require_cap(n: int, context: str) -> None:
    cap = max_agents()
    if n > cap:
        raise CapExceededError(
            f"{context} enumerates 2^{n} coalitions; cap is {cap} agents "
            f"(set SYMBIONT_MAX_AGENTS to override)"
        )


# -- coalition mask helpers --------------------------------------------------

def size(mask: int) -> int:
    return mask.bit_count()


def members(mask: int) -> Iterator[int]:
    """Agent indices in ascending order."""
    while mask:
        low = mask & -mask
        yield low.bit_length() - 1
        mask ^= low


def mask_of(indices: Iterable[int]) -> int:
    m = 0
    for i in indices:
        m |= 1 << i
    return m


@dataclass(frozen=True)
class Universe:
    """Ordered agent names; agent ids are positions 0..n-1."""

    names: tuple[str, ...]

    def __post_init__(self):
        if len(set(self.names)) != len(self.names):
            dup = sorted({n for n in self.names if self.names.count(n) > 1})
            raise InputError(f"duplicate agent names: {dup}")
        if not self.names:
            raise InputError("universe must contain at least one agent")

    @property
    def n(self) -> int:
        return len(self.names)

    @property
    def grand(self) -> int:
        return (1 << self.n) - 1

    def index(self, name: str) -> int:
        try:
            return self.names.index(name)
        except ValueError:
            raise InvalidCoalitionError(f"unknown agent: {name!r}") from None

    def mask(self, names: Iterable[str]) -> int:
        m = 0
        for name in names:
            bit = 1 << self.index(name)
            if m & bit:
                raise InvalidCoalitionError(f"agent listed twice in coalition: {name!r}")
            m |= bit
        return m

    def check_mask(self, mask: int) -> int:
        if mask < 0 or mask >> self.n:
            raise InvalidCoalitionError(
                f"coalition {bin(mask)} references agents outside the "
                f"{self.n}-agent universe"
            )
        return mask

    def member_names(self, mask: int) -> tuple[str, ...]:
        self.check_mask(mask)
        return tuple(sorted(self.names[i] for i in members(mask)))

    def coalitions(self) -> Iterator[int]:
        """All 2^n masks, ascending (requires the cap)."""
        require_cap(self.n, "coalition enumeration")
        return iter(range(1 << self.n))


def universe_of(names: Iterable[str]) -> Universe:
    return Universe(tuple(names))


# -- MC-Nets ------------------------------------------------------------------

@dataclass(frozen=True)
class Rule:
    """One MC-Net rule: (positive pattern, negative pattern) -> value."""

    positive: int
    negative: int
    value: Fraction


@dataclass(frozen=True)
class RuleViolation:
    rule: int
    code: str
    message: str

    def __str__(self) -> str:
        return f"rule {self.rule}: {self.message}"


@dataclass(frozen=True)
class MCNet:
    universe: Universe
    rules: tuple[Rule, ...]

    def applicable(self, mask: int) -> tuple[int, ...]:
        self.universe.check_mask(mask)
        return tuple(
            i
            for i, r in enumerate(self.rules)
            if r.positive & ~mask == 0 and r.negative & mask == 0
        )

    def value(self, mask: int) -> Fraction:
        self.universe.check_mask(mask)
        total = Fraction(0)
        for r in self.rules:
            if r.positive & ~mask == 0 and r.negative & mask == 0:
                total += r.value
        return total


def mcnet(universe: Universe, rules: Iterable[tuple]) -> MCNet:
    """Build an MCNet from (positive, negative, value) triples of masks."""
    built = tuple(
        Rule(int(p), int(n), as_rational(v)) for p, n, v in rules
    )
    return MCNet(universe, built)


def applicable_rules(net: MCNet, coalition: int) -> tuple[int, ...]:
    """Indices of rules applicable to the coalition, ascending."""
    return net.applicable(coalition)


def validate(net: MCNet, allow_zero: bool = False) -> tuple[RuleViolation, ...]:
    """Structural check of every rule; empty report iff well-formed.

    ``allow_zero`` relaxes the basic-net ``value != 0`` constraint, as used
    by incentive rule sets.
    """
    grand = net.universe.grand
    out = []
    for i, r in enumerate(net.rules):
        if r.positive & ~grand or r.negative & ~grand:
            out.append(
                RuleViolation(i, "unknown-agent", "pattern references agents outside the universe")
            )
        if r.positive == 0:
            out.append(RuleViolation(i, "empty-positive", "positive pattern is empty"))
        if r.positive & r.negative:
            out.append(
                RuleViolation(i, "overlap", "positive and negative patterns intersect")
            )
        if not allow_zero and r.value == 0:
            out.append(
                RuleViolation(i, "zero-value", "basic MC-Net rules must have nonzero value")
            )
    return tuple(out)


def require_valid(net: MCNet, allow_zero: bool = False) -> MCNet:
    report = validate(net, allow_zero=allow_zero)
    if report:
        raise MalformedNetError(report)
    return net


# -- Games ---------------------------------------------------------------------

class Game:
    """A characteristic-function game, explicit-table or MC-Net backed."""

    __slots__ = ("universe", "table", "net")

    def __init__(self, universe: Universe, *, table=None, net=None):
        if (table is None) == (net is None):
            raise ValueError("exactly one of table/net must be given")
        self.universe = universe
        self.table = table
        self.net = net

    @classmethod
    def from_values(cls, universe: Universe, entries: Mapping[int, object]) -> "Game":
        """Explicit game from a sparse coalition->value map.

        Entries must cover every coalition of size >= 2 (enumeration is
        cap-bounded).  Missing empty/singleton coalitions default to 0;
        an explicit nonzero value for the empty coalition is rejected.
        """
        require_cap(universe.n, "explicit game construction")
        table: dict[int, Fraction] = {}
        for mask, raw in entries.items():
            universe.check_mask(mask)
            table[mask] = as_rational(raw)
        if table.get(0, Fraction(0)) != 0:
            raise InputError("the empty coalition must have value 0")
        table[0] = Fraction(0)
        missing = [
            m for m in range(1 << universe.n) if size(m) >= 2 and m not in table
        ]
        if missing:
            names = universe.member_names(missing[0])
            raise InputError(
                f"explicit table is missing {len(missing)} coalition(s) of size >= 2, "
                f"first: {list(names)}"
            )
        for m in range(universe.n):
            table.setdefault(1 << m, Fraction(0))
        return cls(universe, table=table)

    @classmethod
    def from_mcnet(cls, net: MCNet) -> "Game":
        return cls(net.universe, net=net)

    @property
    def is_explicit(self) -> bool:
        return self.table is not None

    @property
    def n(self) -> int:
        return self.universe.n

    def value(self, mask: int) -> Fraction:
        self.universe.check_mask(mask)
        if self.table is not None:
            return self.table[mask]
        return self.net.value(mask)

    def dense_values(self) -> list[Fraction]:
        """Values for all 2^n coalitions, index = membership mask."""
        require_cap(self.n, "dense game evaluation")
        if self.table is not None:
            return [self.table[m] for m in range(1 << self.n)]
        rules = [(r.positive, r.negative, r.value) for r in self.net.rules]
        return backend.dense_values_from_rules(self.n, rules)

    def restrict(self, mask: int) -> "Game":
        """Sub-game on the members of ``mask``, re-indexed densely.

        For MC-Net backings, rules whose positive pattern leaves the
        sub-universe are dropped and negative patterns are intersected with
        it; evaluation matches the original game on subsets of ``mask``.
        """
        self.universe.check_mask(mask)
        keep = list(members(mask))
        sub_universe = Universe(tuple(self.universe.names[i] for i in keep))
        remap = {old: new for new, old in enumerate(keep)}

        def project(m: int) -> int:
            return mask_of(remap[i] for i in members(m))

        if self.net is not None:
            rules = tuple(
                Rule(project(r.positive), project(r.negative & mask), r.value)
                for r in self.net.rules
                if r.positive & ~mask == 0
            )
            return Game.from_mcnet(MCNet(sub_universe, rules))
        table = {
            project(m): v for m, v in self.table.items() if m & ~mask == 0
        }
        return Game(sub_universe, table=table)


def value(game: Game, coalition: int) -> Fraction:
    """Characteristic-function value of the coalition."""
    return game.value(coalition)


# -- Allocations ----------------------------------------------------------------

Allocation = tuple[Fraction, ...]


def as_allocation(universe: Universe, payoffs: Iterable[object]) -> Allocation:
    alloc = tuple(as_rational(p) for p in payoffs)
    if len(alloc) != universe.n:
        raise AllocationLengthError(
            f"allocation has {len(alloc)} entries for a {universe.n}-agent universe"
        )
    return alloc


def coalition_sum(alloc: Allocation, mask: int) -> Fraction:
    total = Fraction(0)
    for i in members(mask):
        total += alloc[i]
    return total

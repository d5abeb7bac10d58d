"""Seeded random instances for property suites and benchmarks.

All generators take an explicit ``random.Random`` so every suite is
reproducible from a single seed.
"""

from __future__ import annotations

import random
from fractions import Fraction

from .games import Game, MCNet, Rule, Universe, size
from .isn import CostTable
from .policy import Policy, PolicyLabel
from .redistribution import EvidenceSet

_ZERO = Fraction(0)


def agent_names(n: int) -> tuple[str, ...]:
    if n <= 26:
        return tuple("abcdefghijklmnopqrstuvwxyz"[:n])
    return tuple(f"a{i}" for i in range(n))


def rand_fraction(rng: random.Random, lo: int = -10, hi: int = 10, max_den: int = 6) -> Fraction:
    return Fraction(rng.randint(lo, hi), rng.randint(1, max_den))


def random_basic_mcnet(rng: random.Random, n: int, max_rules: int = 12) -> MCNet:
    """Basic MC-Net: disjoint patterns, nonempty positive, nonzero values."""
    universe = Universe(agent_names(n))
    rules = []
    for _ in range(rng.randint(1, max_rules)):
        pos = 0
        neg = 0
        for i in range(n):
            draw = rng.random()
            if draw < 0.35:
                pos |= 1 << i
            elif draw < 0.55:
                neg |= 1 << i
        if pos == 0:
            pos = 1 << rng.randrange(n)
            neg &= ~pos
        value = _ZERO
        while value == 0:
            value = rand_fraction(rng)
        rules.append(Rule(pos, neg, value))
    return MCNet(universe, tuple(rules))


def random_explicit_game(
    rng: random.Random, n: int, lo: int = -8, hi: int = 8, zero_singletons: bool = False
) -> Game:
    """Arbitrary explicit game; balanced and unbalanced cases both arise."""
    universe = Universe(agent_names(n))
    table = {}
    for m in range(1, 1 << n):
        if size(m) == 1:
            table[m] = _ZERO if zero_singletons else rand_fraction(rng, 0, 3)
        else:
            table[m] = rand_fraction(rng, lo, hi)
    return Game.from_values(universe, table)


def random_superadditive_game(
    rng: random.Random, n: int, style: str = "cover", hi: int = 8
) -> Game:
    """Normalized superadditive game with strictly positive pair values.

    ``cover``: random nonnegative seeds pushed up to their superadditive
    cover (generally not supermodular, like hub-and-spoke ISNs).
    ``synergy``: values accumulate nonnegative synergies of all
    sub-coalitions (supermodular by construction).
    """
    universe = Universe(agent_names(n))
    v: dict[int, Fraction] = {m: _ZERO for m in range(1 << n) if size(m) <= 1}
    v[0] = _ZERO
    if style == "synergy":
        w = {}
        for m in range(1 << n):
            if size(m) == 2:
                w[m] = rand_fraction(rng, 1, hi)
            elif size(m) > 2:
                w[m] = rand_fraction(rng, 0, hi)
        for m in range(1 << n):
            if size(m) >= 2:
                total = _ZERO
                sub = m
                while True:
                    if size(sub) >= 2:
                        total += w[sub]
                    if sub == 0:
                        break
                    sub = (sub - 1) & m
                v[m] = total
        return Game.from_values(universe, v)
    masks = sorted((m for m in range(1 << n) if size(m) >= 2), key=size)
    for m in masks:
        seed = rand_fraction(rng, 1, hi) if size(m) == 2 else rand_fraction(rng, 0, hi)
        best = seed
        sub = (m - 1) & m
        while sub:
            rest = m & ~sub
            if sub < rest and v.get(sub) is not None and v.get(rest) is not None:
                split = v[sub] + v[rest]
                if split > best:
                    best = split
            sub = (sub - 1) & m
        v[m] = best
    return Game.from_values(universe, v)


def random_two_agent_cost_table(rng: random.Random) -> CostTable:
    """Random nonnegative costs with a superadditive (nonnegative) difference."""
    universe = Universe(agent_names(2))
    o = rand_fraction(rng, 0, 12)
    t = o + rand_fraction(rng, 0, 12)
    return CostTable(universe, {3: (t, o)})


def random_exclusive_policy(
    rng: random.Random, universe: Universe, max_groups: int = 3
) -> Policy:
    """Disjoint promoted groups of size >= 2, plus a few prohibited ones."""
    free = list(range(universe.n))
    rng.shuffle(free)
    promoted = []
    while free and len(promoted) < max_groups:
        want = rng.randint(2, max(2, min(4, len(free))))
        if want > len(free):
            break
        group = 0
        for _ in range(want):
            group |= 1 << free.pop()
        promoted.append(group)
        if rng.random() < 0.4:
            break
    promoted_set = set(promoted)
    prohibited = []
    for _ in range(rng.randint(0, 3)):
        m = rng.randrange(1 << universe.n)
        if size(m) >= 2 and m not in promoted_set:
            prohibited.append(m)
    default = PolicyLabel.PROHIBITED if rng.random() < 0.5 else PolicyLabel.PERMITTED
    return Policy(universe, tuple(promoted), tuple(prohibited), default)


def random_evidence(
    rng: random.Random, policy: Policy, implement_chance: float = 0.6
) -> EvidenceSet:
    """Implements a random subset of promoted groups plus disjoint extras."""
    universe = policy.universe
    realized = []
    taken = 0
    for mask in policy.effective_promoted():
        if rng.random() < implement_chance:
            realized.append(mask)
            taken |= mask
    free = [i for i in range(universe.n) if not taken >> i & 1]
    rng.shuffle(free)
    while len(free) >= 2 and rng.random() < 0.5:
        want = rng.randint(2, min(3, len(free)))
        group = 0
        for _ in range(want):
            group |= 1 << free.pop()
        realized.append(group)
    return EvidenceSet(universe, tuple(realized))

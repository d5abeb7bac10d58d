"""Bundled property-suite runner (the CLI ``selftest`` command).

Runs seeded randomized checks of the engine's core guarantees; the seed
drives only the scenario generator, the engine itself is deterministic.
"""

from __future__ import annotations

import random
from dataclasses import dataclass
from fractions import Fraction

from . import generators as gen
from .games import Game
from .isn import build_isn_game, check_superadditive, to_mcnet
from .redistribution import collectible_tax, redistribute
from .regulation import compose, generate_policy_regulation
from .solutions import (
    balanced_check_by_vertices,
    core_feasible,
    core_membership,
    is_supermodular,
    shapley_mcnet,
    shapley_permutation,
)

_ZERO = Fraction(0)


@dataclass(frozen=True)
class CheckResult:
    name: str
    passed: bool
    detail: str


def _two_agent_guarantee(rng, rounds) -> CheckResult:
    for _ in range(rounds):
        game = build_isn_game(gen.random_two_agent_cost_table(rng))
        if is_supermodular(game) is not None:
            return CheckResult("two-agent-guarantee", False, "supermodularity failed")
        verdict = core_feasible(game)
        if not verdict.nonempty:
            return CheckResult("two-agent-guarantee", False, "empty core")
        if core_membership(game, shapley_permutation(game)) is not None:
            return CheckResult("two-agent-guarantee", False, "Shapley left the core")
    return CheckResult(
        "two-agent-guarantee", True, f"{rounds} bilateral games stable and fair"
    )


def _shapley_equivalence(rng, rounds) -> CheckResult:
    for _ in range(rounds):
        net = gen.random_basic_mcnet(rng, rng.randint(2, 6), max_rules=8)
        if shapley_mcnet(net) != shapley_permutation(Game.from_mcnet(net)):
            return CheckResult("shapley-equivalence", False, "methods disagree")
    return CheckResult(
        "shapley-equivalence", True, f"{rounds} nets, closed form == permutation formula"
    )


def _bondareva_coherence(rng, rounds) -> CheckResult:
    for _ in range(rounds):
        game = gen.random_explicit_game(rng, rng.randint(2, 4))
        primal = core_feasible(game).nonempty
        dual, _ = balanced_check_by_vertices(game)
        if primal != dual:
            return CheckResult("bondareva-coherence", False, "primal/dual mismatch")
    return CheckResult(
        "bondareva-coherence", True, f"{rounds} games, primal == dual verdict"
    )


def _regulation_soundness(rng, rounds) -> CheckResult:
    from .regulation import verify_enforcement

    for _ in range(rounds):
        n = rng.randint(3, 6)
        style = "synergy" if rng.random() < 0.5 else "cover"
        game = gen.random_superadditive_game(rng, n, style=style)
        if check_superadditive(game) is not None:
            return CheckResult("regulation-soundness", False, "generator not superadditive")
        policy = gen.random_exclusive_policy(rng, game.universe)
        rules = generate_policy_regulation(game, policy)
        cisn = compose(game, rules)
        report = verify_enforcement(cisn, policy)
        if not report.ok:
            return CheckResult("regulation-soundness", False, "enforcement not ok")
        composed = cisn.as_game()
        promoted = set(policy.effective_promoted())
        for mask in range(1 << n):
            if mask.bit_count() >= 2 and mask not in promoted:
                if composed.value(mask) != 0:
                    return CheckResult(
                        "regulation-soundness", False, "non-promoted coalition kept value"
                    )
    return CheckResult(
        "regulation-soundness", True, f"{rounds} regulated games enforce their policy"
    )


def _budget_balance(rng, rounds) -> CheckResult:
    done = 0
    while done < rounds:
        n = rng.randint(4, 6)
        game = gen.random_superadditive_game(rng, n, style="cover")
        policy = gen.random_exclusive_policy(rng, game.universe)
        if not policy.effective_promoted():
            continue
        rules = generate_policy_regulation(game, policy)
        cisn = compose(game, rules)
        evidence = gen.random_evidence(rng, policy)
        tau = collectible_tax(cisn, evidence)
        result = redistribute(cisn, policy, evidence, tau)
        if sum(result.omega, _ZERO) + result.residual != tau:
            return CheckResult("budget-balance", False, "omega + residual != tau")
        if result.pool and cisn.base.value(result.pool) > 0 and result.residual != 0:
            return CheckResult("budget-balance", False, "nonzero residual with a live pool")
        done += 1
    return CheckResult("budget-balance", True, f"{rounds} scenarios balanced exactly")


def _roundtrip(rng, rounds) -> CheckResult:
    for _ in range(rounds):
        game = gen.random_superadditive_game(rng, rng.randint(2, 5))
        net = to_mcnet(game)
        recon = Game.from_mcnet(net)
        for mask in range(1 << game.n):
            if game.value(mask) != recon.value(mask):
                return CheckResult("mcnet-roundtrip", False, "value mismatch")
    return CheckResult("mcnet-roundtrip", True, f"{rounds} games round-trip exactly")


def run_selftest(seed: int = 0, quick: bool = False) -> list[CheckResult]:
    rng = random.Random(seed)
    scale = 1 if quick else 4
    return [
        _two_agent_guarantee(rng, 25 * scale),
        _shapley_equivalence(rng, 10 * scale),
        _bondareva_coherence(rng, 10 * scale),
        _regulation_soundness(rng, 5 * scale),
        _budget_balance(rng, 10 * scale),
        _roundtrip(rng, 10 * scale),
    ]

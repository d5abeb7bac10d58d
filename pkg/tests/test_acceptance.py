"""Acceptance suite: one test per criterion, exact (zero-tolerance) checks.

Run with ``pytest tests/test_acceptance.py -v -s`` to see one PASS line per
criterion; any red test is a failed criterion.
"""

import random
import time
from fractions import Fraction

from symbiont import (
    EvidenceSet,
    Game,
    build_isn_game,
    check_implementable,
    collectible_tax,
    compose,
    core_feasible,
    core_membership,
    generate_policy_regulation,
    is_supermodular,
    redistribute,
    shapley,
    shapley_mcnet,
    shapley_permutation,
    to_mcnet,
    universe_of,
    verify_enforcement,
)
from symbiont.cli import main
from symbiont.generators import (
    random_basic_mcnet,
    random_evidence,
    random_exclusive_policy,
    random_explicit_game,
    random_superadditive_game,
    random_two_agent_cost_table,
)
from symbiont.solutions import balanced_check_by_vertices

from conftest import I, IJ, IJK, IK, J, JK, K

ZERO = Fraction(0)
FAIR = (Fraction(13, 6), Fraction(10, 6), Fraction(13, 6))


def note(criterion, message):
    print(f"[acceptance] criterion {criterion}: PASS - {message}")


def test_criterion_01_running_example_shapley(running_game, running_net):
    start = time.perf_counter()
    assert shapley_permutation(running_game) == FAIR
    assert shapley_mcnet(running_net) == FAIR
    elapsed = time.perf_counter() - start
    assert elapsed < 1.0
    note(1, f"both methods return (13/6, 10/6, 13/6) in {elapsed:.3f}s")


def test_criterion_02_running_example_core_emptiness(running_game, capsys, tmp_path):
    start = time.perf_counter()
    verdict = core_feasible(running_game)
    assert not verdict.nonempty
    assert verdict.certificate.verify(running_game)
    elapsed = time.perf_counter() - start
    assert elapsed < 1.0

    # the specific constraint conflict must appear in the CLI report
    import json

    from symbiont.fileio import canonical_json

    game_file = tmp_path / "running.json"
    game_file.write_text(
        canonical_json(
            {
                "universe": ["i", "j", "k"],
                "values": [
                    {"coalition": ["i", "j"], "value": "4"},
                    {"coalition": ["i", "k"], "value": "5"},
                    {"coalition": ["j", "k"], "value": "4"},
                    {"coalition": ["i", "j", "k"], "value": "6"},
                ],
            }
        )
    )
    status = main(["--format", "json", "core", str(game_file)])
    report = json.loads(capsys.readouterr().out)
    assert status == 1
    constraints = {c["constraint"] for c in report["conflict"]}
    assert {
        "x[i] + x[j] + x[k] = 6",
        "x[i] + x[j] >= 4",
        "x[i] + x[k] >= 5",
        "x[j] + x[k] >= 4",
    } <= constraints
    assert report["certificate_verified"] is True
    note(2, f"core empty with verified certificate in {elapsed:.3f}s")


def test_criterion_03_example_regulation(running_game, grand_only_policy):
    rules = generate_policy_regulation(running_game, grand_only_policy)
    emitted = [(r.positive, r.negative, r.value) for r in rules.nonzero_rules()]
    assert emitted == [
        (IJ, K, Fraction(-4)),
        (IK, J, Fraction(-5)),
        (JK, I, Fraction(-4)),
    ]
    cisn = compose(running_game, rules)
    verdict = check_implementable(cisn.as_game())
    assert verdict.stable and verdict.fair_and_stable
    assert shapley(cisn.as_game()) == (Fraction(2), Fraction(2), Fraction(2))
    note(3, "Example-5 taxes, implementable CISN, Shapley (2, 2, 2)")


def test_criterion_04_two_agent_guarantee():
    rng = random.Random(2024)
    for _ in range(1000):
        game = build_isn_game(random_two_agent_cost_table(rng))
        assert is_supermodular(game) is None
        verdict = core_feasible(game)
        assert verdict.nonempty
        assert core_membership(game, shapley_permutation(game)) is None
    note(4, "1000 bilateral ISN games: supermodular, balanced, Shapley in core")


def test_criterion_05_oracle_equivalence():
    rng = random.Random(2025)
    start = time.perf_counter()
    for _ in range(200):
        net = random_basic_mcnet(rng, rng.randint(2, 8), max_rules=12)
        assert shapley_mcnet(net) == shapley_permutation(Game.from_mcnet(net))
    elapsed = time.perf_counter() - start
    assert elapsed < 60.0
    note(5, f"200 nets (n <= 8): closed form == permutation formula in {elapsed:.1f}s")


def test_criterion_06_bondareva_shapley_coherence():
    rng = random.Random(2026)
    empty = 0
    for _ in range(200):
        game = random_explicit_game(rng, rng.randint(2, 4))
        primal = core_feasible(game).nonempty
        dual, _ = balanced_check_by_vertices(game)
        assert primal == dual
        empty += not primal
    assert 0 < empty < 200  # the sample must exercise both verdicts
    note(6, f"200 games: primal == dual verdict ({empty} empty cores seen)")


def test_criterion_07_policy_enforcement():
    rng = random.Random(2027)
    for _ in range(100):
        n = rng.randint(3, 8)
        style = "synergy" if rng.random() < 0.5 else "cover"
        game = random_superadditive_game(rng, n, style=style)
        policy = random_exclusive_policy(rng, game.universe)
        cisn = compose(game, generate_policy_regulation(game, policy))
        assert verify_enforcement(cisn, policy).ok
        composed = cisn.as_game()
        promoted = set(policy.effective_promoted())
        for mask in range(1 << n):
            if mask.bit_count() >= 2 and mask not in promoted:
                assert composed.value(mask) == 0
    note(7, "100 regulated games: enforcement ok, non-promoted values exactly 0")


def test_criterion_08_budget_balance():
    rng = random.Random(2028)
    live = 0
    while live < 200:
        n = rng.randint(4, 7)
        game = random_superadditive_game(rng, n, style="cover")
        policy = random_exclusive_policy(rng, game.universe)
        if not policy.effective_promoted():
            continue
        cisn = compose(game, generate_policy_regulation(game, policy))
        evidence = random_evidence(rng, policy)
        implemented = set(evidence.effective()) & set(policy.effective_promoted())
        if not implemented:
            continue
        pool = 0
        for m in implemented:
            pool |= m
        if game.value(pool) == 0:
            continue
        tau = collectible_tax(cisn, evidence)
        result = redistribute(cisn, policy, evidence, tau)
        assert sum(result.omega, ZERO) == tau
        assert result.residual == 0
        live += 1

    # the worked six-firm example
    u = universe_of(list("abcdef"))
    m = u.mask
    weights = {m("ab"): 4, m("cd"): 2, m("ef"): 1, m("ce"): 3}
    table = {}
    for mask in range(1 << 6):
        if mask.bit_count() >= 2:
            table[mask] = sum(
                (Fraction(w) for pat, w in weights.items() if pat & ~mask == 0), ZERO
            )
    game = Game.from_values(u, table)
    from symbiont import Policy

    policy = Policy(u, promoted=(m("ab"), m("cd"), m("ef")))
    cisn = compose(game, generate_policy_regulation(game, policy))
    evidence = EvidenceSet(u, (m("ab"), m("ce")))
    tau = collectible_tax(cisn, evidence)
    assert tau == 3
    result = redistribute(cisn, policy, evidence, tau)
    assert result.omega == (Fraction(3, 2), Fraction(3, 2), ZERO, ZERO, ZERO, ZERO)
    note(8, "200 scenarios balanced exactly; worked example pays (3/2, 3/2, 0, ...)")


def test_criterion_09_mcnet_round_trip():
    rng = random.Random(2029)
    for _ in range(100):
        n = rng.randint(2, 8)
        style = "synergy" if rng.random() < 0.5 else "cover"
        game = random_superadditive_game(rng, n, style=style)
        recon = Game.from_mcnet(to_mcnet(game))
        original = game.dense_values()
        rebuilt = recon.dense_values()
        assert original == rebuilt
    note(9, "100 games round-trip value() on all coalitions exactly")


def test_criterion_10_scope_note():
    # no large-scale empirical targets exist for this engine; acceptance
    # rests on the golden examples (1-3) and the property suites (4-9) above
    note(10, "covered by golden examples 1-3 and property suites 4-9")

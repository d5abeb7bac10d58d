"""File formats: schemas, parsing errors, lossless round-trips."""

import json
from fractions import Fraction

import pytest

from symbiont import InputError, universe_of
from symbiont.fileio import (
    canonical_json,
    evidence_to_doc,
    game_to_doc,
    incentives_to_doc,
    mcnet_to_doc,
    parse_evidence,
    parse_game,
    parse_incentives,
    parse_policy,
    policy_to_doc,
)

RUNNING = {
    "universe": ["i", "j", "k"],
    "values": [
        {"coalition": ["i", "j"], "value": "4"},
        {"coalition": ["i", "k"], "value": "5"},
        {"coalition": ["j", "k"], "value": "4"},
        {"coalition": ["i", "j", "k"], "value": "6"},
    ],
}


class TestParseGame:
    def test_round_trip_running_example(self):
        game = parse_game(RUNNING)
        doc = game_to_doc(game)
        again = parse_game(doc)
        for mask in range(8):
            assert again.value(mask) == game.value(mask)
        assert canonical_json(doc) == canonical_json(game_to_doc(again))

    def test_integer_and_slash_literals_agree(self):
        doc = dict(RUNNING)
        doc["values"] = [dict(e) for e in RUNNING["values"]]
        doc["values"][0]["value"] = "4/1"
        doc["values"][1]["value"] = 5
        game = parse_game(doc)
        assert game.value(0b011) == Fraction(4)
        assert game.value(0b101) == Fraction(5)

    def test_duplicate_coalition_key_rejected(self):
        doc = dict(RUNNING)
        doc["values"] = RUNNING["values"] + [{"coalition": ["j", "i"], "value": "9"}]
        with pytest.raises(InputError, match="duplicate coalition"):
            parse_game(doc)

    def test_schema_violation_carries_json_path(self):
        doc = {"universe": ["i", "j"], "values": [{"coalition": ["i", "j"]}]}
        with pytest.raises(InputError, match=r"\$\.values\[0\]"):
            parse_game(doc)

    def test_float_values_rejected(self):
        doc = {
            "universe": ["i", "j"],
            "values": [{"coalition": ["i", "j"], "value": 1.5}],
        }
        with pytest.raises(InputError):
            parse_game(doc)

    def test_exactly_one_backing_required(self):
        doc = dict(RUNNING)
        doc["mcnet"] = [{"positive": ["i"], "value": "1"}]
        with pytest.raises(InputError, match="exactly one"):
            parse_game(doc)
        with pytest.raises(InputError, match="exactly one"):
            parse_game({"universe": ["i", "j"]})

    def test_unknown_agent_in_coalition(self):
        doc = {
            "universe": ["i", "j"],
            "values": [{"coalition": ["i", "z"], "value": "1"}],
        }
        with pytest.raises(InputError, match="unknown agent"):
            parse_game(doc)

    def test_cost_backing_builds_isn_game(self):
        doc = {
            "universe": ["i", "j"],
            "costs": [
                {"coalition": ["i", "j"], "traditional": "10", "operational": "6"}
            ],
        }
        game = parse_game(doc)
        assert game.value(0b11) == 4

    def test_mcnet_backing(self):
        doc = {
            "universe": ["i", "j", "k"],
            "mcnet": [
                {"positive": ["i", "j"], "negative": ["k"], "value": "4"},
                {"positive": ["i", "j", "k"], "value": "6"},
            ],
        }
        game = parse_game(doc)
        assert game.value(0b011) == 4
        assert game.value(0b111) == 6

    def test_zero_rule_rejected_unless_incentive(self):
        doc = {
            "universe": ["i", "j"],
            "mcnet": [{"positive": ["i", "j"], "value": "0"}],
        }
        with pytest.raises(InputError, match="zero"):
            parse_game(doc)
        doc["incentive"] = True
        rules = parse_incentives(doc)
        assert rules.net.rules[0].value == 0


class TestPolicyAndEvidence:
    def test_policy_round_trip(self, grand_only_policy):
        doc = policy_to_doc(grand_only_policy)
        again = parse_policy(doc)
        assert again == grand_only_policy

    def test_evidence_round_trip(self, ijk_universe):
        from symbiont import EvidenceSet

        evidence = EvidenceSet(ijk_universe, (0b101,))
        assert parse_evidence(evidence_to_doc(evidence)) == evidence

    def test_policy_default_validated(self):
        with pytest.raises(InputError, match="promoted"):
            parse_policy({"universe": ["i"], "default": "promoted"})

    def test_coalitions_emitted_sorted(self, running_net):
        doc = mcnet_to_doc(running_net)
        for entry in doc["mcnet"]:
            assert entry["positive"] == sorted(entry["positive"])

    def test_incentive_docs_elide_zero_rules(self, running_net):
        from symbiont import generate_regulation

        rules = generate_regulation(running_net)
        doc = incentives_to_doc(rules)
        assert len(doc["mcnet"]) == 3
        assert doc["incentive"] is True
        assert {e["value"] for e in doc["mcnet"]} == {"-4", "-5", "-4"}

    def test_incentive_flag_required(self, running_net):
        doc = mcnet_to_doc(running_net)
        with pytest.raises(InputError, match="incentive"):
            parse_incentives(doc)


class TestCanonicalJson:
    def test_bytes_are_deterministic(self):
        doc = {"b": 1, "a": [3, 2]}
        assert canonical_json(doc) == canonical_json(json.loads(canonical_json(doc)))
        assert canonical_json(doc).startswith('{\n  "a"')

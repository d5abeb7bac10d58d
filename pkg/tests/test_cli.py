"""CLI: exit codes, report content, determinism, thin-shell parity."""

import json

import pytest

from symbiont.cli import main
from symbiont.fileio import canonical_json

RUNNING = {
    "universe": ["i", "j", "k"],
    "values": [
        {"coalition": ["i", "j"], "value": "4"},
        {"coalition": ["i", "k"], "value": "5"},
        {"coalition": ["j", "k"], "value": "4"},
        {"coalition": ["i", "j", "k"], "value": "6"},
    ],
}

POLICY = {
    "universe": ["i", "j", "k"],
    "promoted": [["i", "j", "k"]],
    "prohibited": [["i", "j"], ["i", "k"], ["j", "k"]],
    "default": "permitted",
}

EVIDENCE_IK = {"universe": ["i", "j", "k"], "realized": [["i", "k"]]}


@pytest.fixture
def files(tmp_path):
    paths = {}
    for name, doc in (
        ("game", RUNNING),
        ("policy", POLICY),
        ("evidence", EVIDENCE_IK),
    ):
        p = tmp_path / f"{name}.json"
        p.write_text(canonical_json(doc))
        paths[name] = str(p)
    paths["tmp"] = tmp_path
    return paths


def run(capsys, *argv):
    status = main(list(argv))
    out = capsys.readouterr().out
    return status, out


def run_json(capsys, *argv):
    status = main(["--format", "json", *argv])
    out = capsys.readouterr().out
    return status, json.loads(out)


class TestVerdictsAndExitCodes:
    def test_shapley_reports_the_fair_allocation(self, files, capsys):
        status, report = run_json(capsys, "shapley", files["game"])
        assert status == 0
        assert report["methods"]["mcnet"] == {"i": "13/6", "j": "5/3", "k": "13/6"}
        assert report["methods"]["permutation"] == report["methods"]["mcnet"]
        assert report["agree"] is True

    def test_core_empty_exits_one_with_conflict(self, files, capsys):
        status, report = run_json(capsys, "core", files["game"])
        assert status == 1
        assert report["nonempty"] is False
        constraints = {c["constraint"] for c in report["conflict"]}
        assert "x[i] + x[j] + x[k] = 6" in constraints
        assert "x[i] + x[j] >= 4" in constraints
        assert "x[i] + x[k] >= 5" in constraints
        assert "x[j] + x[k] >= 4" in constraints
        assert report["certificate_verified"] is True

    def test_core_membership_flag(self, files, capsys):
        status, report = run_json(
            capsys, "core", files["game"], "--alloc", "13/6,10/6,13/6"
        )
        assert status == 1
        assert report["violated"]["coalition"] == ["i", "k"]

    def test_balanced_negative_verdict(self, files, capsys):
        status, report = run_json(capsys, "balanced", files["game"])
        assert status == 1
        assert report["balanced"] is False
        assert report["violating_vector"] == {"i,j": "1/2", "i,k": "1/2", "j,k": "1/2"}

    def test_value_command(self, files, capsys):
        status, report = run_json(capsys, "value", files["game"], "i,k")
        assert status == 0
        assert report["value"] == "5"

    def test_unknown_agent_is_an_input_error(self, files, capsys):
        status = main(["value", files["game"], "i,z"])
        assert status == 2

    def test_unreadable_file_is_an_input_error(self, capsys):
        assert main(["shapley", "/nonexistent.json"]) == 2

    def test_unknown_command_exits_two(self, files):
        with pytest.raises(SystemExit) as exc:
            main(["frobnicate", files["game"]])
        assert exc.value.code == 2


class TestPipeline:
    def test_regulate_compose_enforce_round_trip(self, files, capsys):
        incentives = str(files["tmp"] / "re.json")
        status, report = run_json(
            capsys, "regulate", files["game"], "--policy", files["policy"], "-o", incentives
        )
        assert status == 0
        assert report["rules"] == 3
        assert report["taxes"] == 3

        emitted = json.loads(open(incentives).read())
        assert emitted["incentive"] is True
        assert len(emitted["mcnet"]) == 3

        status, report = run_json(capsys, "enforce", files["game"], files["policy"])
        assert status == 0
        assert report["ok"] is True
        grand = report["promoted"][0]
        assert grand["shapley"] == {"i": "2", "j": "2", "k": "2"}

        status, report = run_json(
            capsys, "enforce", files["game"], files["policy"], "--incentives", incentives
        )
        assert status == 0 and report["ok"] is True

        status, report = run_json(
            capsys, "tax", files["game"], incentives, files["evidence"]
        )
        assert status == 0
        assert report["tau"] == "5"

        status, report = run_json(capsys, "comply", files["policy"], files["evidence"])
        assert status == 1
        assert report["missing_promoted"] == [["i", "j", "k"]]
        assert report["extra_realized"] == [["i", "k"]]

        status, report = run_json(
            capsys, "redistribute", files["game"], files["policy"], files["evidence"]
        )
        assert status == 0
        assert report["tau"] == "5"
        assert report["residual"] == "5"  # nobody implemented a promoted ISN

    def test_convert_output_feeds_back(self, files, capsys):
        out = str(files["tmp"] / "net.json")
        status, _ = run_json(capsys, "convert", files["game"], "-o", out)
        assert status == 0
        status, report = run_json(capsys, "shapley", out, "--method", "mcnet")
        assert status == 0
        assert report["methods"]["mcnet"]["j"] == "5/3"

    def test_compose_writes_the_composed_game(self, files, capsys):
        incentives = str(files["tmp"] / "re.json")
        run_json(capsys, "regulate", files["game"], "--policy", files["policy"], "-o", incentives)
        composed = str(files["tmp"] / "cisn.json")
        status, report = run_json(capsys, "compose", files["game"], incentives, "-o", composed)
        assert status == 0
        assert report["grand_value"] == "6"
        status, report = run_json(capsys, "value", composed, "i,k")
        assert report["value"] == "0"

    def test_validate_reports_invalid_policy(self, files, capsys, tmp_path):
        bad = tmp_path / "bad-policy.json"
        bad.write_text(
            canonical_json(
                {
                    "universe": ["a", "b", "c"],
                    "promoted": [["a", "b"], ["b", "c"]],
                }
            )
        )
        status, report = run_json(capsys, "validate", str(bad))
        assert status == 1
        assert "overlap" in report["files"][0]["problems"][0]

    def test_validate_accepts_good_files(self, files, capsys):
        status, report = run_json(
            capsys, "validate", files["game"], files["policy"], files["evidence"]
        )
        assert status == 0
        assert report["ok"] is True


class TestDeterminism:
    def test_identical_bytes_across_runs(self, files, capsys):
        _, first = run(capsys, "--format", "json", "core", files["game"])
        _, second = run(capsys, "--format", "json", "core", files["game"])
        assert first == second

    def test_timestamps_only_on_request(self, files, capsys):
        _, plain = run_json(capsys, "shapley", files["game"])
        assert "generated_at" not in plain
        status = main(["--format", "json", "--timestamps", "shapley", files["game"]])
        stamped = json.loads(capsys.readouterr().out)
        assert status == 0
        assert "generated_at" in stamped

    def test_text_and_json_share_values(self, files, capsys):
        _, text = run(capsys, "shapley", files["game"])
        _, report = run_json(capsys, "shapley", files["game"])
        assert "13/6" in text
        assert report["methods"]["permutation"]["i"] == "13/6"


class TestSelftest:
    def test_quick_selftest_passes(self, capsys):
        status, report = run_json(capsys, "selftest", "--quick", "--seed", "7")
        assert status == 0
        assert report["ok"] is True
        assert all(c["passed"] for c in report["checks"])

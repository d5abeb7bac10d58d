"""Batch command-line interface.

Every command parses its input files, calls the corresponding library
operation, and emits a report as rendered text (default) or canonical JSON
(--format json); both views derive from the same exact rational values.
Exit status: 0 for success / positive verdicts, 1 for negative verdicts
(empty core, failed enforcement, non-compliance, ...), 2 for input errors.
"""

from __future__ import annotations

import argparse
import sys
from datetime import datetime, timezone
from fractions import Fraction

from . import fileio, selftest
from .errors import SymbiontError
from .games import Game, applicable_rules, as_allocation, validate as validate_net
from .isn import classify, to_mcnet
from .policy import Policy, check_minimality, check_mutual_exclusivity
from .rational import approx, as_rational, format_rational
from .redistribution import collectible_tax, compliance, redistribute
from .regulation import (
    CISNGame,
    IncentiveRuleSet,
    compose,
    generate_policy_regulation,
    generate_regulation,
)
from .solutions import (
    core_feasible,
    core_membership,
    is_balanced,
    is_supermodular,
    shapley_mcnet,
    shapley_permutation,
)


def _names(universe, mask) -> list[str]:
    return list(universe.member_names(mask))


def _alloc_doc(universe, alloc) -> dict:
    return {name: format_rational(x) for name, x in zip(universe.names, alloc)}


def _coalition_arg(universe, text: str) -> int:
    if text in ("", "-"):
        return 0
    return universe.mask(name.strip() for name in text.split(","))


def _load_game(path: str) -> Game:
    return fileio.parse_game(fileio.load_json(path))


def _load_policy(path: str) -> Policy:
    return fileio.parse_policy(fileio.load_json(path))


def _load_incentives(path: str) -> IncentiveRuleSet:
    return fileio.parse_incentives(fileio.load_json(path))


def _constraint_text(universe, mask, op, rhs) -> str:
    terms = " + ".join(f"x[{name}]" for name in _names(universe, mask))
    return f"{terms} {op} {format_rational(rhs)}"


# -- commands ---------------------------------------------------------------------

def _cmd_validate(args) -> tuple[dict, list[str], int]:
    reports = []
    ok_all = True
    for path in args.files:
        doc = fileio.load_json(path)
        entry: dict = {"file": path}
        problems: list[str] = []
        try:
            if "realized" in doc:
                entry["kind"] = "evidence"
                fileio.parse_evidence(doc)
            elif "promoted" in doc or "prohibited" in doc or "default" in doc:
                entry["kind"] = "policy"
                pol = fileio.parse_policy(doc)
                excl = check_mutual_exclusivity(pol)
                if excl is not None:
                    problems.append(
                        "promoted coalitions overlap: "
                        f"{_names(pol.universe, excl[0])} and {_names(pol.universe, excl[1])}"
                    )
                minimal = check_minimality(pol)
                if minimal is not None:
                    problems.append(
                        "promoted coalition "
                        f"{_names(pol.universe, minimal[1])} contains promoted "
                        f"{_names(pol.universe, minimal[0])}"
                    )
            else:
                entry["kind"] = "game"
                game = fileio.parse_game(doc)
                if game.net is not None:
                    allow_zero = bool(doc.get("incentive", False))
                    problems.extend(
                        str(v) for v in validate_net(game.net, allow_zero=allow_zero)
                    )
        except SymbiontError as exc:
            problems.append(str(exc))
        entry["ok"] = not problems
        entry["problems"] = problems
        ok_all = ok_all and not problems
        reports.append(entry)
    lines = []
    for entry in reports:
        status = "ok" if entry["ok"] else "INVALID"
        lines.append(f"{entry['file']} ({entry.get('kind', '?')}): {status}")
        lines.extend(f"  - {p}" for p in entry["problems"])
    return {"command": "validate", "files": reports, "ok": ok_all}, lines, 0 if ok_all else 1


def _cmd_value(args) -> tuple[dict, list[str], int]:
    game = _load_game(args.game)
    mask = _coalition_arg(game.universe, args.coalition)
    val = game.value(mask)
    report = {
        "command": "value",
        "coalition": _names(game.universe, mask),
        "value": format_rational(val),
    }
    if game.net is not None:
        report["applicable_rules"] = list(applicable_rules(game.net, mask))
    lines = [f"v({', '.join(report['coalition']) or 'empty'}) = {format_rational(val)} (~{approx(val)})"]
    return report, lines, 0


def _cmd_shapley(args) -> tuple[dict, list[str], int]:
    game = _load_game(args.game)
    universe = game.universe
    methods: dict[str, tuple] = {}
    if args.method in ("mcnet", "both"):
        net = game.net if game.net is not None else to_mcnet(game)
        methods["mcnet"] = shapley_mcnet(net)
    if args.method in ("permutation", "both"):
        methods["permutation"] = shapley_permutation(game)
    allocations = list(methods.values())
    agree = all(a == allocations[0] for a in allocations)
    report = {
        "command": "shapley",
        "universe": list(universe.names),
        "methods": {name: _alloc_doc(universe, alloc) for name, alloc in methods.items()},
        "agree": agree,
        "total": format_rational(sum(allocations[0], Fraction(0))),
    }
    lines = []
    for name, alloc in methods.items():
        rendered = ", ".join(
            f"{agent}: {format_rational(x)} (~{approx(x)})"
            for agent, x in zip(universe.names, alloc)
        )
        lines.append(f"{name}: {rendered}")
    if len(methods) > 1:
        lines.append("methods agree" if agree else "METHODS DISAGREE")
    return report, lines, 0


def _cmd_core(args) -> tuple[dict, list[str], int]:
    game = _load_game(args.game)
    universe = game.universe
    if args.alloc is not None:
        alloc = as_allocation(universe, (s.strip() for s in args.alloc.split(",")))
        violation = core_membership(game, alloc)
        if violation is None:
            report = {"command": "core", "mode": "membership", "ok": True}
            return report, ["allocation is in the core"], 0
        report = {
            "command": "core",
            "mode": "membership",
            "ok": False,
            "violated": {
                "kind": violation.kind,
                "coalition": _names(universe, violation.coalition),
                "allocated": format_rational(violation.allocated),
                "required": format_rational(violation.required),
            },
        }
        lines = [
            f"allocation violates {violation.kind} for "
            f"{{{', '.join(_names(universe, violation.coalition))}}}: "
            f"has {format_rational(violation.allocated)}, needs {format_rational(violation.required)}"
        ]
        return report, lines, 1
    verdict = core_feasible(game)
    if verdict.nonempty:
        report = {
            "command": "core",
            "mode": "feasibility",
            "nonempty": True,
            "witness": _alloc_doc(universe, verdict.witness),
        }
        rendered = ", ".join(
            f"{a}: {format_rational(x)}" for a, x in zip(universe.names, verdict.witness)
        )
        return report, [f"core is nonempty; witness allocation: {rendered}"], 0
    cert = verdict.certificate
    grand = universe.grand
    conflict = [
        {
            "constraint": _constraint_text(universe, grand, "=", game.value(grand)),
            "coalition": _names(universe, grand),
            "kind": "efficiency",
            "multiplier": format_rational(cert.eff),
        }
    ]
    for mask, lam in cert.rat:
        conflict.append(
            {
                "constraint": _constraint_text(universe, mask, ">=", game.value(mask)),
                "coalition": _names(universe, mask),
                "kind": "rationality",
                "multiplier": format_rational(lam),
            }
        )
    report = {
        "command": "core",
        "mode": "feasibility",
        "nonempty": False,
        "conflict": conflict,
        "excess": format_rational(cert.excess),
        "balanced_vector": {
            ",".join(_names(universe, mask)): format_rational(w)
            for mask, w in cert.balanced_vector().items()
        },
        "certificate_verified": cert.verify(game),
    }
    lines = ["core is EMPTY; conflicting constraints:"]
    lines.extend(
        f"  {entry['constraint']}   (multiplier {entry['multiplier']})" for entry in conflict
    )
    lines.append(
        f"combination cancels all payoffs yet leaves 0 >= {format_rational(cert.excess)}"
    )
    return report, lines, 1


def _cmd_balanced(args) -> tuple[dict, list[str], int]:
    game = _load_game(args.game)
    verdict = core_feasible(game)
    if verdict.nonempty:
        if game.n <= 4:
            is_balanced(game)  # runs the dual cross-check
        return {"command": "balanced", "balanced": True}, ["game is balanced"], 0
    vec = verdict.certificate.balanced_vector()
    weighted = sum((w * game.value(m) for m, w in vec.items()), Fraction(0))
    report = {
        "command": "balanced",
        "balanced": False,
        "violating_vector": {
            ",".join(_names(game.universe, m)): format_rational(w) for m, w in vec.items()
        },
        "weighted_value": format_rational(weighted),
        "grand_value": format_rational(game.value(game.universe.grand)),
    }
    lines = [
        "game is NOT balanced; violating balanced vector:",
        *(
            f"  {{{', '.join(_names(game.universe, m))}}}: {format_rational(w)}"
            for m, w in vec.items()
        ),
        f"weighted coalition value {format_rational(weighted)} exceeds "
        f"v(N) = {format_rational(game.value(game.universe.grand))}",
    ]
    return report, lines, 1


def _cmd_supermodular(args) -> tuple[dict, list[str], int]:
    game = _load_game(args.game)
    witness = is_supermodular(game)
    if witness is None:
        return {"command": "supermodular", "supermodular": True}, ["game is supermodular"], 0
    s, t = witness
    report = {
        "command": "supermodular",
        "supermodular": False,
        "witness": [_names(game.universe, s), _names(game.universe, t)],
    }
    lines = [
        "game is NOT supermodular; witness pair "
        f"{{{', '.join(_names(game.universe, s))}}}, {{{', '.join(_names(game.universe, t))}}}: "
        f"{format_rational(game.value(s))} + {format_rational(game.value(t))} > "
        f"{format_rational(game.value(s | t))} + {format_rational(game.value(s & t))}"
    ]
    return report, lines, 1


def _cmd_convert(args) -> tuple[dict, list[str], int]:
    game = _load_game(args.game)
    net = to_mcnet(game)
    doc = fileio.mcnet_to_doc(net)
    report = {"command": "convert", "rules": len(net.rules), "game": doc}
    lines = [f"converted to a basic MC-Net with {len(net.rules)} rule(s)"]
    _maybe_write_doc(args, doc)
    return report, lines, 0


def _cmd_regulate(args) -> tuple[dict, list[str], int]:
    game = _load_game(args.game)
    if args.policy is not None:
        rules = generate_policy_regulation(game, _load_policy(args.policy))
    else:
        net = game.net if game.net is not None else to_mcnet(game)
        rules = generate_regulation(net)
    doc = fileio.incentives_to_doc(rules, elide_zero=True)
    taxes = sum(1 for r in rules.net.rules if r.value < 0)
    subsidies = sum(1 for r in rules.net.rules if r.value > 0)
    report = {
        "command": "regulate",
        "rules": len(doc["mcnet"]),
        "taxes": taxes,
        "subsidies": subsidies,
        "incentives": doc,
    }
    lines = [
        f"incentive rule set with {len(doc['mcnet'])} rule(s) "
        f"({taxes} tax(es), {subsidies} subsidy(ies); zero rules elided)"
    ]
    for entry in doc["mcnet"]:
        lines.append(
            f"  ({', '.join(entry['positive'])} | {', '.join(entry['negative']) or '-'}) "
            f"-> {entry['value']}"
        )
    _maybe_write_doc(args, doc)
    return report, lines, 0


def _cmd_compose(args) -> tuple[dict, list[str], int]:
    game = _load_game(args.game)
    rules = _load_incentives(args.incentives)
    cisn = compose(game, rules)
    composed = cisn.as_game()
    doc = fileio.game_to_doc(composed)
    grand = composed.universe.grand
    report = {
        "command": "compose",
        "grand_value": format_rational(composed.value(grand)),
        "game": doc,
    }
    lines = [
        f"composed CISN game; c(N) = {format_rational(composed.value(grand))}",
    ]
    _maybe_write_doc(args, doc)
    return report, lines, 0


def _cisn_from_args(args) -> tuple[Game, Policy, CISNGame]:
    game = _load_game(args.game)
    pol = _load_policy(args.policy)
    if args.incentives is not None:
        rules = _load_incentives(args.incentives)
    else:
        rules = generate_policy_regulation(game, pol)
    return game, pol, compose(game, rules)


def _cmd_enforce(args) -> tuple[dict, list[str], int]:
    from .regulation import verify_enforcement

    game, pol, cisn = _cisn_from_args(args)
    report_obj = verify_enforcement(cisn, pol)
    universe = game.universe
    promoted = []
    lines = []
    for entry in report_obj.promoted:
        sub_names = _names(universe, entry.coalition)
        promoted.append(
            {
                "coalition": sub_names,
                "stable": entry.implementability.stable,
                "fair_and_stable": entry.implementability.fair_and_stable,
                "composed_value": format_rational(entry.composed_value),
                "strict_gain": entry.strict_gain,
                "shapley": {
                    name: format_rational(x) for name, x in zip(sorted(sub_names), entry.shapley)
                },
                "ok": entry.ok,
            }
        )
        status = "ok" if entry.ok else "NOT OK"
        shap = ", ".join(f"{format_rational(x)}" for x in entry.shapley)
        lines.append(
            f"promoted {{{', '.join(sub_names)}}}: {status} "
            f"(stable={entry.implementability.stable}, "
            f"fair_and_stable={entry.implementability.fair_and_stable}, "
            f"c = {format_rational(entry.composed_value)}, shapley = ({shap}))"
        )
    prohibited = []
    for entry in report_obj.prohibited:
        sub_names = _names(universe, entry.coalition)
        prohibited.append(
            {
                "coalition": sub_names,
                "composed_value": format_rational(entry.composed_value),
                "sub_core_nonempty": entry.sub_core.nonempty,
                "unimplementable": entry.unimplementable,
                "ok": entry.ok,
            }
        )
        status = "ok" if entry.ok else "NOT OK"
        lines.append(
            f"prohibited {{{', '.join(sub_names)}}}: {status} "
            f"(c = {format_rational(entry.composed_value)}, "
            f"no strict gain remains: {entry.unimplementable})"
        )
    lines.append("enforcement ok" if report_obj.ok else "enforcement FAILED")
    report = {
        "command": "enforce",
        "ok": report_obj.ok,
        "promoted": promoted,
        "prohibited": prohibited,
    }
    return report, lines, 0 if report_obj.ok else 1


def _cmd_comply(args) -> tuple[dict, list[str], int]:
    pol = _load_policy(args.policy)
    evidence = fileio.parse_evidence(fileio.load_json(args.evidence))
    result = compliance(evidence, pol)
    report = {
        "command": "comply",
        "compliant": result.compliant,
        "missing_promoted": [_names(pol.universe, m) for m in result.missing_promoted],
        "extra_realized": [_names(pol.universe, m) for m in result.extra_realized],
    }
    if result.compliant:
        return report, ["behavior complies with the policy"], 0
    lines = ["behavior VIOLATES the policy"]
    for m in result.missing_promoted:
        lines.append(f"  missing promoted ISN: {{{', '.join(_names(pol.universe, m))}}}")
    for m in result.extra_realized:
        lines.append(f"  extra realized ISN: {{{', '.join(_names(pol.universe, m))}}}")
    return report, lines, 1


def _cmd_tax(args) -> tuple[dict, list[str], int]:
    game = _load_game(args.game)
    rules = _load_incentives(args.incentives)
    evidence = fileio.parse_evidence(fileio.load_json(args.evidence))
    tau = collectible_tax(compose(game, rules), evidence)
    report = {"command": "tax", "tau": format_rational(tau)}
    return report, [f"collectible tax = {format_rational(tau)} (~{approx(tau)})"], 0


def _cmd_redistribute(args) -> tuple[dict, list[str], int]:
    game, pol, cisn = _cisn_from_args(args)
    evidence = fileio.parse_evidence(fileio.load_json(args.evidence))
    if args.tau is not None:
        tau = as_rational(args.tau)
    else:
        tau = collectible_tax(cisn, evidence)
    result = redistribute(cisn, pol, evidence, tau)
    universe = game.universe
    report = {
        "command": "redistribute",
        "tau": format_rational(result.tau),
        "omega": _alloc_doc(universe, result.omega),
        "residual": format_rational(result.residual),
        "pool": _names(universe, result.pool),
        "cross_group_synergy": result.cross_group_synergy,
    }
    lines = [f"collectible tax = {format_rational(result.tau)}"]
    for name, x in zip(universe.names, result.omega):
        if x != 0:
            lines.append(f"  omega[{name}] = {format_rational(x)} (~{approx(x)})")
    if result.residual != 0:
        lines.append(f"  undistributed residual = {format_rational(result.residual)}")
    if not any(result.omega) and result.residual == result.tau and result.tau != 0:
        lines.append("  no implemented promoted coalition; tax retained")
    if result.cross_group_synergy:
        lines.append(
            "  note: pool value differs from the sum of implemented group values; "
            "weights mix cross-group synergies"
        )
    return report, lines, 0


def _cmd_selftest(args) -> tuple[dict, list[str], int]:
    results = selftest.run_selftest(seed=args.seed, quick=args.quick)
    ok = all(r.passed for r in results)
    report = {
        "command": "selftest",
        "seed": args.seed,
        "checks": [
            {"name": r.name, "passed": r.passed, "detail": r.detail} for r in results
        ],
        "ok": ok,
    }
    lines = [
        f"{'PASS' if r.passed else 'FAIL'} {r.name}: {r.detail}" for r in results
    ]
    return report, lines, 0 if ok else 1


def _cmd_classify(args) -> tuple[dict, list[str], int]:
    game = _load_game(args.game)
    tag = classify(game)
    report = {"command": "classify", "class": tag.value, "agents": game.n}
    return report, [f"{game.n}-agent ISN game: class {tag.value}"], 0


# -- plumbing ---------------------------------------------------------------------

def _maybe_write_doc(args, doc) -> None:
    if getattr(args, "out_file", None):
        with open(args.out_file, "w", encoding="utf-8") as fh:
            fh.write(fileio.canonical_json(doc))


def _emit(args, report: dict, lines: list[str]) -> None:
    if args.timestamps:
        report = dict(report)
        report["generated_at"] = datetime.now(timezone.utc).isoformat()
    if args.format == "json":
        payload = fileio.canonical_json(report)
    else:
        payload = "\n".join(lines) + "\n"
    if args.output:
        with open(args.output, "w", encoding="utf-8") as fh:
            fh.write(payload)
    else:
        sys.stdout.write(payload)


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="symbiont",
        description="Exact cooperative-game analysis and normative coordination "
        "of industrial symbiotic networks",
    )
    parser.add_argument("--format", choices=("text", "json"), default="text")
    parser.add_argument("--output", metavar="FILE", help="write the report to FILE")
    parser.add_argument(
        "--timestamps", action="store_true", help="embed a generation timestamp"
    )
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("validate", help="schema and invariant checks")
    p.add_argument("files", nargs="+")
    p.set_defaults(fn=_cmd_validate)

    p = sub.add_parser("value", help="value of one coalition")
    p.add_argument("game")
    p.add_argument("coalition", help='comma-separated agent names, e.g. "i,k" ("-" for empty)')
    p.set_defaults(fn=_cmd_value)

    p = sub.add_parser("shapley", help="Shapley allocation")
    p.add_argument("game")
    p.add_argument("--method", choices=("both", "mcnet", "permutation"), default="both")
    p.set_defaults(fn=_cmd_shapley)

    p = sub.add_parser("core", help="core feasibility, or membership with --alloc")
    p.add_argument("game")
    p.add_argument("--alloc", help='comma-separated payoffs in universe order, e.g. "13/6,10/6,13/6"')
    p.set_defaults(fn=_cmd_core)

    p = sub.add_parser("balanced", help="Bondareva-Shapley balancedness")
    p.add_argument("game")
    p.set_defaults(fn=_cmd_balanced)

    p = sub.add_parser("supermodular", help="convexity check")
    p.add_argument("game")
    p.set_defaults(fn=_cmd_supermodular)

    p = sub.add_parser("classify", help="bilateral vs multilateral ISN class")
    p.add_argument("game")
    p.set_defaults(fn=_cmd_classify)

    p = sub.add_parser("convert", help="explicit game to basic MC-Net")
    p.add_argument("game")
    p.add_argument("-o", dest="out_file", metavar="FILE", help="write the MC-Net game file")
    p.set_defaults(fn=_cmd_convert)

    p = sub.add_parser("regulate", help="generate an incentive rule set")
    p.add_argument("game")
    p.add_argument("--policy", help="enforce a whole policy (requires exclusivity)")
    p.add_argument("-o", dest="out_file", metavar="FILE", help="write the incentive file")
    p.set_defaults(fn=_cmd_regulate)

    p = sub.add_parser("compose", help="combine a game with an incentive rule set")
    p.add_argument("game")
    p.add_argument("incentives")
    p.add_argument("-o", dest="out_file", metavar="FILE", help="write the composed game file")
    p.set_defaults(fn=_cmd_compose)

    p = sub.add_parser("enforce", help="verify policy enforcement on the CISN")
    p.add_argument("game")
    p.add_argument("policy")
    p.add_argument("--incentives", help="use this rule set instead of generating one")
    p.set_defaults(fn=_cmd_enforce)

    p = sub.add_parser("comply", help="evidence vs promoted set")
    p.add_argument("policy")
    p.add_argument("evidence")
    p.set_defaults(fn=_cmd_comply)

    p = sub.add_parser("tax", help="collectible tax of the realized ISNs")
    p.add_argument("game")
    p.add_argument("incentives")
    p.add_argument("evidence")
    p.set_defaults(fn=_cmd_tax)

    p = sub.add_parser("redistribute", help="budget-balanced tax redistribution")
    p.add_argument("game")
    p.add_argument("policy")
    p.add_argument("evidence")
    p.add_argument("--incentives", help="use this rule set instead of generating one")
    p.add_argument("--tau", help="override the collectible tax value")
    p.set_defaults(fn=_cmd_redistribute)

    p = sub.add_parser("selftest", help="run the bundled property suites")
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--quick", action="store_true")
    p.set_defaults(fn=_cmd_selftest)

    return parser


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        report, lines, status = args.fn(args)
    except SymbiontError as exc:
        print(f"symbiont: error: {exc}", file=sys.stderr)
        return 2
    _emit(args, report, lines)
    return status


if __name__ == "__main__":
    sys.exit(main())

"""JSON file formats: games (costs / values / MC-Net), policies, evidence.

Coalitions serialize as sorted agent-name arrays (never bitmasks) and
rationals as "p/q" or integer strings, so files stay human-auditable and
host-JSON number lossiness never corrupts a value.  Parsing validates
against JSON schemas first (errors carry JSON-pointer paths), then builds
domain objects; emitting is canonical (sorted keys, stable ordering), so
emit(parse(f)) round-trips losslessly.
"""

from __future__ import annotations

import json
from fractions import Fraction
from typing import Any

import jsonschema

from .errors import InputError
from .games import Game, MCNet, Rule, Universe, size
from .isn import CostTable, build_isn_game
from .policy import Policy, PolicyLabel
from .rational import as_rational, format_rational
from .redistribution import EvidenceSet
from .regulation import IncentiveRuleSet

_RATIONAL = {"type": ["string", "integer"]}
_NAME = {"type": "string", "minLength": 1}
_COALITION = {"type": "array", "items": _NAME, "uniqueItems": True}

GAME_SCHEMA = {
    "$schema": "https://json-schema.org/draft/2020-12/schema",
    "type": "object",
    "required": ["universe"],
    "properties": {
        "universe": {"type": "array", "items": _NAME, "minItems": 1, "uniqueItems": True},
        "values": {
            "type": "array",
            "items": {
                "type": "object",
                "required": ["coalition", "value"],
                "properties": {"coalition": _COALITION, "value": _RATIONAL},
                "additionalProperties": False,
            },
        },
        "costs": {
            "type": "array",
            "items": {
                "type": "object",
                "required": ["coalition", "traditional", "operational"],
                "properties": {
                    "coalition": _COALITION,
                    "traditional": _RATIONAL,
                    "operational": _RATIONAL,
                },
                "additionalProperties": False,
            },
        },
        "mcnet": {
            "type": "array",
            "items": {
                "type": "object",
                "required": ["positive", "value"],
                "properties": {
                    "positive": _COALITION,
                    "negative": _COALITION,
                    "value": _RATIONAL,
                },
                "additionalProperties": False,
            },
        },
        "incentive": {"type": "boolean"},
    },
    "additionalProperties": False,
}

POLICY_SCHEMA = {
    "$schema": "https://json-schema.org/draft/2020-12/schema",
    "type": "object",
    "required": ["universe"],
    "properties": {
        "universe": {"type": "array", "items": _NAME, "minItems": 1, "uniqueItems": True},
        "promoted": {"type": "array", "items": _COALITION},
        "prohibited": {"type": "array", "items": _COALITION},
        "default": {"enum": ["permitted", "prohibited"]},
    },
    "additionalProperties": False,
}

EVIDENCE_SCHEMA = {
    "$schema": "https://json-schema.org/draft/2020-12/schema",
    "type": "object",
    "required": ["universe", "realized"],
    "properties": {
        "universe": {"type": "array", "items": _NAME, "minItems": 1, "uniqueItems": True},
        "realized": {"type": "array", "items": _COALITION},
    },
    "additionalProperties": False,
}


def _check_schema(doc: Any, schema: dict, what: str) -> None:
    validator = jsonschema.Draft202012Validator(schema)
    errors = sorted(validator.iter_errors(doc), key=lambda e: list(e.absolute_path))
    if errors:
        err = errors[0]
        raise InputError(f"invalid {what}: {err.message}", path=err.json_path)


def load_json(path: str) -> Any:
    try:
        with open(path, "rb") as fh:
            return json.load(fh)
    except OSError as exc:
        raise InputError(f"cannot read {path}: {exc.strerror or exc}") from None
    except json.JSONDecodeError as exc:
        raise InputError(f"{path}: invalid JSON at line {exc.lineno} column {exc.colno}: {exc.msg}") from None


def _universe(doc: dict) -> Universe:
    return Universe(tuple(doc["universe"]))


def _coalition(universe: Universe, names: list, path: str) -> int:
    try:
        return universe.mask(names)
    except Exception as exc:
        raise InputError(str(exc), path=path) from None


def _rational(raw, path: str) -> Fraction:
    try:
        return as_rational(raw)
    except InputError as exc:
        raise InputError(str(exc), path=path) from None


def parse_game(doc: Any) -> Game:
    """Build a Game from a parsed game document.

    Cost backings run the full ISN construction (including the
    superadditivity gate); value backings build an explicit game; mcnet
    backings build a rule-based game (zero-valued rules are rejected
    unless the document is flagged as an incentive net).
    """
    _check_schema(doc, GAME_SCHEMA, "game file")
    backings = [k for k in ("values", "costs", "mcnet") if k in doc]
    if len(backings) != 1:
        raise InputError(
            f"a game file needs exactly one of values/costs/mcnet, found {backings or 'none'}"
        )
    universe = _universe(doc)
    kind = backings[0]
    if kind == "mcnet":
        return Game.from_mcnet(parse_mcnet(doc))
    if kind == "values":
        table: dict[int, Fraction] = {}
        for idx, entry in enumerate(doc["values"]):
            path = f"$.values[{idx}]"
            mask = _coalition(universe, entry["coalition"], path + ".coalition")
            if mask in table:
                raise InputError(
                    f"duplicate coalition key {sorted(entry['coalition'])}",
                    path=path + ".coalition",
                )
            table[mask] = _rational(entry["value"], path + ".value")
        return Game.from_values(universe, table)
    entries: dict[int, tuple[Fraction, Fraction]] = {}
    for idx, entry in enumerate(doc["costs"]):
        path = f"$.costs[{idx}]"
        mask = _coalition(universe, entry["coalition"], path + ".coalition")
        if mask in entries:
            raise InputError(
                f"duplicate coalition key {sorted(entry['coalition'])}",
                path=path + ".coalition",
            )
        entries[mask] = (
            _rational(entry["traditional"], path + ".traditional"),
            _rational(entry["operational"], path + ".operational"),
        )
    return build_isn_game(CostTable(universe, entries))


def parse_mcnet(doc: Any) -> MCNet:
    universe = _universe(doc)
    allow_zero = bool(doc.get("incentive", False))
    rules = []
    for idx, entry in enumerate(doc["mcnet"]):
        path = f"$.mcnet[{idx}]"
        pos = _coalition(universe, entry["positive"], path + ".positive")
        neg = _coalition(universe, entry.get("negative", []), path + ".negative")
        rules.append(Rule(pos, neg, _rational(entry["value"], path + ".value")))
    net = MCNet(universe, tuple(rules))
    from .games import validate

    report = validate(net, allow_zero=allow_zero)
    if report:
        first = report[0]
        raise InputError(str(first), path=f"$.mcnet[{first.rule}]")
    return net


def parse_incentives(doc: Any) -> IncentiveRuleSet:
    _check_schema(doc, GAME_SCHEMA, "incentive file")
    if "mcnet" not in doc:
        raise InputError("an incentive file must carry an mcnet backing")
    if not doc.get("incentive", False):
        raise InputError('an incentive file must set "incentive": true')
    return IncentiveRuleSet(parse_mcnet(doc))


def parse_policy(doc: Any) -> Policy:
    _check_schema(doc, POLICY_SCHEMA, "policy file")
    universe = _universe(doc)

    def masks(key: str) -> tuple[int, ...]:
        out = []
        for idx, names in enumerate(doc.get(key, [])):
            out.append(_coalition(universe, names, f"$.{key}[{idx}]"))
        return tuple(out)

    default = PolicyLabel(doc.get("default", "permitted"))
    return Policy(universe, masks("promoted"), masks("prohibited"), default)


def parse_evidence(doc: Any) -> EvidenceSet:
    _check_schema(doc, EVIDENCE_SCHEMA, "evidence file")
    universe = _universe(doc)
    realized = []
    for idx, names in enumerate(doc["realized"]):
        realized.append(_coalition(universe, names, f"$.realized[{idx}]"))
    return EvidenceSet(universe, tuple(realized))


# -- emitters -------------------------------------------------------------------

def names_of(universe: Universe, mask: int) -> list[str]:
    return list(universe.member_names(mask))


def game_to_doc(game: Game) -> dict:
    if game.net is not None:
        return mcnet_to_doc(game.net)
    entries = []
    for mask in sorted(game.table):
        if size(mask) >= 2 or (size(mask) == 1 and game.table[mask] != 0):
            entries.append(
                {
                    "coalition": names_of(game.universe, mask),
                    "value": format_rational(game.table[mask]),
                }
            )
    return {"universe": list(game.universe.names), "values": entries}


def mcnet_to_doc(net: MCNet, incentive: bool = False, elide_zero: bool = False) -> dict:
    rules = []
    for r in net.rules:
        if elide_zero and r.value == 0:
            continue
        rules.append(
            {
                "positive": names_of(net.universe, r.positive),
                "negative": names_of(net.universe, r.negative),
                "value": format_rational(r.value),
            }
        )
    doc = {"universe": list(net.universe.names), "mcnet": rules}
    if incentive:
        doc["incentive"] = True
    return doc


def incentives_to_doc(rules: IncentiveRuleSet, elide_zero: bool = True) -> dict:
    return mcnet_to_doc(rules.net, incentive=True, elide_zero=elide_zero)


def policy_to_doc(policy: Policy) -> dict:
    return {
        "universe": list(policy.universe.names),
        "promoted": [names_of(policy.universe, m) for m in policy.promoted],
        "prohibited": [names_of(policy.universe, m) for m in policy.prohibited],
        "default": policy.default.value,
    }


def evidence_to_doc(evidence: EvidenceSet) -> dict:
    return {
        "universe": list(evidence.universe.names),
        "realized": [names_of(evidence.universe, m) for m in evidence.realized],
    }


def canonical_json(doc: Any) -> str:
    return json.dumps(doc, indent=2, sort_keys=True, ensure_ascii=False) + "\n"

"""Industrial symbiotic network games built from cost data.

An ISN over agents N is the normalized cooperative game where a coalition
of size >= 2 is worth its traditional cost T(S) (waste discharge plus
primary-input purchase, paid when no symbiosis happens) minus its
operational cost O(S) (recycling, transport, transactions), and empty or
singleton coalitions are worth 0.  The model declares these games
superadditive, so cost data violating superadditivity is rejected with a
witness pair rather than repaired.

Every such game converts losslessly to a basic MC-Net carrying one rule
(S, N \\ S) -> v(S) per coalition of size >= 2 with nonzero value.
"""

from __future__ import annotations

import enum
from dataclasses import dataclass
from fractions import Fraction
from typing import Mapping

from . import backend
from .errors import InputError, SuperadditivityError
from .games import Game, MCNet, Rule, Universe, require_cap, size
from .rational import as_rational, format_rational


@dataclass(frozen=True)
class CostTable:
    """Traditional and operational costs per coalition of size >= 2."""

    universe: Universe
    entries: Mapping[int, tuple[Fraction, Fraction]]

    def __post_init__(self):
        require_cap(self.universe.n, "cost table construction")
        clean: dict[int, tuple[Fraction, Fraction]] = {}
        for mask, (t, o) in self.entries.items():
            self.universe.check_mask(mask)
            if size(mask) < 2:
                raise InputError(
                    f"cost entry for {list(self.universe.member_names(mask))}: "
                    "costs are defined only for coalitions of size >= 2"
                )
            t, o = as_rational(t), as_rational(o)
            if t < 0 or o < 0:
                raise InputError(
                    f"negative cost for {list(self.universe.member_names(mask))}"
                )
            clean[mask] = (t, o)
        for m in range(1 << self.universe.n):
            if size(m) >= 2 and m not in clean:
                raise InputError(
                    f"cost table is missing coalition "
                    f"{list(self.universe.member_names(m))}"
                )
        object.__setattr__(self, "entries", clean)


class IsnClass(enum.Enum):
    """Two-agent (bilateral) vs three-or-more agent ISN games."""

    LAMBDA = "lambda"
    DELTA = "delta"


def build_isn_game(costs: CostTable) -> Game:
    """Normalized superadditive game with v(S) = T(S) - O(S) for |S| >= 2.

    Raises SuperadditivityError (with the first witness pair) when the cost
    data is out of model.
    """
    universe = costs.universe
    if universe.n < 2:
        raise InputError("an ISN needs at least two agents")
    table = {m: t - o for m, (t, o) in costs.entries.items()}
    game = Game.from_values(universe, table)
    witness = check_superadditive(game)
    if witness is not None:
        s, t = witness
        raise SuperadditivityError(
            witness,
            "cost data is not superadditive: "
            f"v({list(universe.member_names(s | t))}) = {format_rational(game.value(s | t))} < "
            f"v({list(universe.member_names(s))}) + v({list(universe.member_names(t))}) = "
            f"{format_rational(game.value(s) + game.value(t))}",
        )
    return game


def check_superadditive(game: Game) -> tuple[int, int] | None:
    """None when v(S u T) >= v(S) + v(T) for all disjoint S, T.

    Otherwise the first violating pair, larger set first, ties by
    ascending membership mask.
    """
    require_cap(game.n, "superadditivity")
    return backend.superadditivity_witness(game.n, game.dense_values())


def classify(game: Game) -> IsnClass:
    if game.n < 2:
        raise InputError("ISN games need at least two agents")
    return IsnClass.LAMBDA if game.n == 2 else IsnClass.DELTA


def to_mcnet(game: Game) -> MCNet:
    """Basic MC-Net equal to the explicit game on every coalition.

    Emits one rule (S, N \\ S) -> v(S) per coalition of size >= 2,
    ascending by membership mask; zero-valued coalitions are skipped to
    keep the output a valid basic net.
    """
    if not game.is_explicit:
        raise InputError("to_mcnet expects an explicit-table game")
    require_cap(game.n, "MC-Net conversion")
    grand = (1 << game.n) - 1
    rules = []
    for m in range(1 << game.n):
        if size(m) >= 2:
            v = game.table[m]
            if v != 0:
                rules.append(Rule(m, grand & ~m, v))
    return MCNet(game.universe, tuple(rules))

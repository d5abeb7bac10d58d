"""Shared fixtures: the three-firm running scenario and its policy."""

from fractions import Fraction

import pytest

from symbiont import Game, MCNet, Policy, Rule, universe_of

I, J, K = 0b001, 0b010, 0b100
IJ, IK, JK, IJK = 0b011, 0b101, 0b110, 0b111


@pytest.fixture
def ijk_universe():
    return universe_of(["i", "j", "k"])


@pytest.fixture
def running_game(ijk_universe):
    """Pairs worth 4, 5, 4; grand coalition worth 6; singletons zero."""
    return Game.from_values(ijk_universe, {IJ: 4, IK: 5, JK: 4, IJK: 6})


@pytest.fixture
def running_net(ijk_universe):
    """The same game as a four-rule basic MC-Net."""
    return MCNet(
        ijk_universe,
        (
            Rule(IJ, K, Fraction(4)),
            Rule(IK, J, Fraction(5)),
            Rule(JK, I, Fraction(4)),
            Rule(IJK, 0, Fraction(6)),
        ),
    )


@pytest.fixture
def grand_only_policy(ijk_universe):
    """Promotes the grand coalition, prohibits everything smaller."""
    return Policy(
        ijk_universe,
        promoted=(IJK,),
        prohibited=(I, J, K, IJ, IK, JK),
    )

"""Compiled and pure kernels must be bit-identical on every shared input."""

import random
from fractions import Fraction

import pytest

from symbiont import backend
from symbiont.games import Game
from symbiont.generators import random_basic_mcnet, random_explicit_game

needs_compiled = pytest.mark.skipif(
    not backend.compiled_available(), reason="compiled kernels not built"
)


def both_backends(monkeypatch, fn):
    monkeypatch.setenv("SYMBIONT_PURE", "1")
    pure = fn()
    monkeypatch.delenv("SYMBIONT_PURE")
    compiled = fn()
    return pure, compiled


@needs_compiled
class TestEquivalence:
    def test_scans_and_shapley(self, monkeypatch):
        rng = random.Random(101)
        for _ in range(25):
            game = random_explicit_game(rng, rng.randint(2, 6))
            values = game.dense_values()
            for fn in (
                backend.superadditivity_witness,
                backend.supermodularity_witness,
                backend.shapley_from_values,
            ):
                pure, compiled = both_backends(
                    monkeypatch, lambda f=fn: f(game.n, values)
                )
                assert pure == compiled

    def test_huge_values_fall_back_but_stay_exact(self, monkeypatch):
        # denominators force a common denominator far beyond int64
        big = Fraction(1, 10**30)
        values = [Fraction(0), Fraction(0), Fraction(0), big]
        result = backend.shapley_from_values(2, values)
        monkeypatch.setenv("SYMBIONT_PURE", "1")
        assert result == backend.shapley_from_values(2, values)
        assert sum(result, Fraction(0)) == big

    def test_negative_and_fractional_values(self, monkeypatch):
        values = [Fraction(0), Fraction(-3, 7), Fraction(5, 3), Fraction(13, 6)]
        pure, compiled = both_backends(
            monkeypatch, lambda: backend.shapley_from_values(2, values)
        )
        assert pure == compiled
        pure, compiled = both_backends(
            monkeypatch, lambda: backend.superadditivity_witness(2, values)
        )
        assert pure == compiled


class TestPureKernels:
    def test_dense_values_match_per_coalition_evaluation(self):
        rng = random.Random(102)
        for _ in range(10):
            net = random_basic_mcnet(rng, rng.randint(1, 6))
            game = Game.from_mcnet(net)
            dense = game.dense_values()
            for mask in range(1 << net.universe.n):
                assert dense[mask] == net.value(mask)

    def test_backend_name_reflects_override(self, monkeypatch):
        monkeypatch.setenv("SYMBIONT_PURE", "1")
        assert backend.backend_name() == "pure"

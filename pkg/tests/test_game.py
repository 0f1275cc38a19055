import itertools
from fractions import Fraction

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from strongnash.game import (
    BimatrixGame,
    GameError,
    MixedProfile,
    SupportProfile,
    TensorGame,
    as_rational,
    deviation_payoffs,
    expected_payoff,
    normalize_to_zero,
    pure_profiles,
    restrict,
)
from oracles import bimatrix_value, tensor_value

from conftest import distributions, games_with_profile, tensor_games


def test_as_rational_accepts_exact_inputs():
    assert as_rational(3) == 3
    assert as_rational("−7/2") == Fraction(-7, 2)
    assert as_rational(Fraction(1, 3)) == Fraction(1, 3)


@pytest.mark.parametrize("bad", [0.5, True, "x", None])
def test_as_rational_rejects_inexact(bad):
    with pytest.raises(GameError):
        as_rational(bad)


def test_bimatrix_shape_checks():
    with pytest.raises(GameError):
        BimatrixGame([[1, 2]], [[1]])
    with pytest.raises(GameError):
        BimatrixGame([[1, 2], [3]], [[1, 2], [3, 4]])


def test_outcome_is_cell_aligned(pd):
    assert pd.outcome((0, 1)) == (0, 5)
    assert pd.outcome((1, 0)) == (5, 0)
    assert pd.points() == [(3, 3), (0, 5), (5, 0), (1, 1)]


def test_tensor_layout_last_player_fastest(trio):
    assert trio.outcome((0, 0, 1)) == (0, 0, 0)
    assert trio.outcome((1, 1, 0)) == (0, 0, 0)
    assert trio.outcome((0, 1, 0)) == (0, 2, 0)
    assert trio.outcome((0, 1, 1)) == (0, 0, 2)


def test_profile_validation():
    with pytest.raises(GameError):
        MixedProfile(((Fraction(1, 2), Fraction(1, 3)),))
    with pytest.raises(GameError):
        MixedProfile(((Fraction(3, 2), Fraction(-1, 2)),))
    with pytest.raises(GameError):
        MixedProfile(((),))
    p = MixedProfile.pure((2, 3), (1, 2))
    assert p.strategies == ((0, 1), (0, 0, 1))
    assert p.is_pure() and not p.is_fully_mixed()


def test_support_validation():
    with pytest.raises(GameError):
        SupportProfile(((1, 0), (0,)))
    with pytest.raises(GameError):
        SupportProfile(((), (0,)))
    with pytest.raises(GameError):
        SupportProfile(((0, 3), (0,))).check((3, 1))


def test_pure_profiles_lexicographic():
    assert list(pure_profiles((2, 2))) == [(0, 0), (0, 1), (1, 0), (1, 1)]


def test_line3_values(line3, line_ne):
    assert expected_payoff(line3, line_ne) == (0, 0)
    assert deviation_payoffs(line3, line_ne, 0) == [0, 0, 0]
    assert deviation_payoffs(line3, line_ne, 1) == [0, 0, 0]


def test_trio_value(trio, half3):
    assert expected_payoff(trio, half3) == (Fraction(1, 2),) * 3


def test_profile_dims_must_match(pd, half3):
    with pytest.raises(GameError):
        expected_payoff(pd, half3)


@given(games_with_profile())
def test_expected_payoff_matches_direct_sum(gp):
    game, profile = gp
    x, y = profile.strategies
    assert expected_payoff(game, profile) == bimatrix_value(game.u1, game.u2, x, y)


@given(games_with_profile())
def test_bimatrix_and_tensor_paths_agree(gp):
    game, profile = gp
    t = game.to_tensor()
    assert expected_payoff(t, profile) == expected_payoff(game, profile)
    for player in range(2):
        assert deviation_payoffs(t, profile, player) == deviation_payoffs(game, profile, player)


@settings(max_examples=60)
@given(tensor_games(), st.data())
def test_multilinearity(game, data):
    """Payoffs are affine in each player's strategy with the others fixed."""
    strategies = [data.draw(distributions(m)) for m in game.dims]
    player = data.draw(st.integers(0, game.n_players - 1))
    other = data.draw(distributions(game.dims[player]))
    lam = data.draw(st.fractions(0, 1, max_denominator=10))
    mix = tuple(lam * a + (1 - lam) * b for a, b in zip(strategies[player], other))

    def value(s):
        ss = list(strategies)
        ss[player] = s
        return expected_payoff(game, MixedProfile(tuple(ss)))

    va, vb, vm = value(strategies[player]), value(other), value(mix)
    assert vm == tuple(lam * a + (1 - lam) * b for a, b in zip(va, vb))
    assert list(va) == tensor_value(game.dims, game.payoffs, strategies)


@settings(max_examples=60)
@given(tensor_games(max_dim=3), st.data())
def test_restriction_consistency(game, data):
    """A profile supported inside S pays the same in the game and in its restriction to S."""
    sets = []
    for m in game.dims:
        k = data.draw(st.integers(1, m))
        sets.append(tuple(sorted(data.draw(st.permutations(range(m)))[:k])))
    support = SupportProfile(tuple(sets))
    sub = restrict(game, support)
    local = MixedProfile(tuple(data.draw(distributions(len(s))) for s in sets))
    full = support.embed(local, game.dims)
    assert expected_payoff(sub, local) == expected_payoff(game, full)
    assert support.project(full) == local
    for i, s in enumerate(sets):
        assert sub.labels[i] == s


@given(games_with_profile())
def test_bimatrix_restriction_consistency(gp):
    game, profile = gp
    support = profile.support()
    sub = restrict(game, support)
    assert expected_payoff(sub, support.project(profile)) == expected_payoff(game, profile)


def test_normalize_to_zero(line3):
    g = normalize_to_zero(line3, (1, -2))
    assert g.outcome((0, 0)) == (-1, 2)
    assert all(a == b for a, b in itertools.zip_longest(g.labels, line3.labels))


def test_tensor_requires_two_players():
    with pytest.raises(GameError):
        TensorGame((2,), [[1, 2]])

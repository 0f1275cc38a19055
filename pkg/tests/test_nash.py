from fractions import Fraction

import pytest
from hypothesis import given, settings

from strongnash.game import BimatrixGame, GameError, MixedProfile, SupportProfile, expected_payoff, normalize_to_zero
from strongnash.nash import (
    enumerate_pure_nash,
    enumerate_support_equilibria,
    is_nash,
    is_pure_nash,
    kkt_certificate,
    nash_on_support,
    supports_by_size,
)
from oracles import grid_nash, oracle_is_nash, oracle_pure_nash

from conftest import HALF, bimatrix_games, games_with_profile, tensor_games


def test_pd_pure_nash(pd):
    assert enumerate_pure_nash(pd) == [(1, 1)]
    assert not is_pure_nash(pd, (0, 0))
    with pytest.raises(GameError):
        is_pure_nash(pd, (2, 0))


def test_trio_half_profile_is_nash(trio, half3):
    assert is_nash(trio, half3)
    # both all-zero outcomes are pure equilibria: every unilateral deviation also pays 0
    assert enumerate_pure_nash(trio) == [(0, 0, 1), (1, 1, 0)]


def test_line3_full_support(line3, line_ne):
    assert is_nash(line3, line_ne)
    w = nash_on_support(line3, SupportProfile(((0, 1, 2), (0, 1, 2))))
    assert w.profile == line_ne
    assert w.values == (0, 0)
    off = MixedProfile(((Fraction(1, 3),) * 3, line_ne.strategies[1]))
    assert not is_nash(line3, off)


def test_line3_has_only_the_full_support_equilibrium(line3, line_ne):
    found = enumerate_support_equilibria(line3)
    assert [w.profile for w in found] == [line_ne]


def test_pennies(pennies):
    w = nash_on_support(pennies, SupportProfile(((0, 1), (0, 1))))
    assert w.profile == MixedProfile((HALF, HALF))
    assert nash_on_support(pennies, SupportProfile(((0,), (0, 1)))) is None


def test_support_order():
    sups = supports_by_size((2, 2))
    assert [s.sets for s in sups] == [((0,), (0, 1)), ((0, 1), (0,)), ((0, 1), (1,)), ((1,), (0, 1)), ((0, 1), (0, 1))]
    assert len(supports_by_size((2, 2), include_pure=True)) == 9


@settings(max_examples=80, deadline=None)
@given(bimatrix_games(max_dim=3, lo=-3, hi=3))
def test_support_witnesses_are_exact_equilibria(game):
    for w in enumerate_support_equilibria(game):
        assert w.profile.support() == w.support
        x, y = w.profile.strategies
        assert oracle_is_nash(game.u1, game.u2, x, y)
        assert expected_payoff(game, w.profile) == w.values


@settings(max_examples=40, deadline=None)
@given(bimatrix_games(max_dim=2, lo=-3, hi=3))
def test_grid_equilibria_supports_are_found(game):
    """Every zero-regret grid profile at step 1/64 has a support on which the
    solver finds some equilibrium."""
    found = {w.support for w in enumerate_support_equilibria(game)}
    for x, y in grid_nash(game.u1, game.u2, 64):
        assert MixedProfile((tuple(x), tuple(y))).support() in found


@given(bimatrix_games())
def test_pure_nash_matches_oracle(game):
    assert enumerate_pure_nash(game) == oracle_pure_nash(game.u1, game.u2)


@settings(max_examples=40, deadline=None)
@given(tensor_games())
def test_tensor_pure_nash_agrees_with_mixed_check(game):
    for cell in enumerate_pure_nash(game):
        assert is_nash(game, MixedProfile.pure(game.dims, cell))


@given(games_with_profile())
def test_bimatrix_and_tensor_nash_agree(gp):
    game, profile = gp
    assert is_nash(game, profile) == is_nash(game.to_tensor(), profile)


def _check_kkt(game, profile, cert):
    g = normalize_to_zero(game, expected_payoff(game, profile))
    x1, x2 = profile.strategies
    lam1, lam2 = cert.lam
    nu1, nu2 = cert.nu
    for i in range(g.m1):
        assert lam2 * sum(q * g.u2[i][j] for j, q in enumerate(x2)) + nu1 == 0
    for j in range(g.m2):
        assert lam1 * sum(p * g.u1[i][j] for i, p in enumerate(x1)) + nu2 == 0
    assert lam1 >= 0 and lam2 >= 0 and lam1 + lam2 == 1


def test_kkt_line3(line3, line_ne):
    cert = kkt_certificate(line3, line_ne, (0, 0))
    assert cert is not None and cert.strictly_positive
    _check_kkt(line3, line_ne, cert)


def test_kkt_pennies(pennies):
    profile = MixedProfile((HALF, HALF))
    cert = kkt_certificate(pennies, profile, (0, 0))
    assert cert.strictly_positive
    _check_kkt(pennies, profile, cert)


def test_kkt_degenerate_multiplier():
    game = BimatrixGame([[0, 0], [0, 0]], [[1, 0], [0, 1]])
    profile = MixedProfile((HALF, (Fraction(1, 3), Fraction(2, 3))))
    cert = kkt_certificate(game, profile, expected_payoff(game, profile))
    assert cert.lam == (1, 0) and not cert.strictly_positive
    _check_kkt(game, profile, cert)
    balanced = MixedProfile((HALF, HALF))
    assert kkt_certificate(game, balanced, expected_payoff(game, balanced)).strictly_positive


def test_kkt_needs_full_support(pd):
    with pytest.raises(GameError):
        kkt_certificate(pd, MixedProfile.pure((2, 2), (1, 1)), (1, 1))

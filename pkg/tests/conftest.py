import itertools
from fractions import Fraction
from pathlib import Path

import pytest
from hypothesis import strategies as st

from strongnash.game import BimatrixGame, MixedProfile, TensorGame
from strongnash.gamefile import load_game

GAMES = Path(__file__).resolve().parent.parent / "games"
HALF = (Fraction(1, 2), Fraction(1, 2))


def three_player_game() -> TensorGame:
    return load_game(GAMES / "three_player.game")


@pytest.fixture
def pd():
    return load_game(GAMES / "pd.game")


@pytest.fixture
def line3():
    return load_game(GAMES / "line3x3.game")


@pytest.fixture
def pennies():
    return load_game(GAMES / "matching_pennies.game")


@pytest.fixture
def coordination():
    return load_game(GAMES / "coordination.game")


@pytest.fixture
def trio():
    return three_player_game()


@pytest.fixture
def line_ne():
    x = (Fraction(1, 2), Fraction(1, 3), Fraction(1, 6))
    return MixedProfile((x, x))


@pytest.fixture
def half3():
    return MixedProfile((HALF, HALF, HALF))


def int_matrix(m1, m2, lo=-5, hi=5):
    return st.lists(st.lists(st.integers(lo, hi), min_size=m2, max_size=m2), min_size=m1, max_size=m1)


@st.composite
def bimatrix_games(draw, max_dim=3, lo=-5, hi=5):
    m1 = draw(st.integers(1, max_dim))
    m2 = draw(st.integers(1, max_dim))
    return BimatrixGame(draw(int_matrix(m1, m2, lo, hi)), draw(int_matrix(m1, m2, lo, hi)))


@st.composite
def distributions(draw, m, max_den=12):
    weights = draw(st.lists(st.integers(0, max_den), min_size=m, max_size=m))
    if sum(weights) == 0:
        weights[draw(st.integers(0, m - 1))] = 1
    total = sum(weights)
    return tuple(Fraction(w, total) for w in weights)


@st.composite
def games_with_profile(draw, max_dim=3, lo=-5, hi=5):
    game = draw(bimatrix_games(max_dim, lo, hi))
    x = draw(distributions(game.m1))
    y = draw(distributions(game.m2))
    return game, MixedProfile((x, y))


@st.composite
def tensor_games(draw, n=3, max_dim=2, lo=-3, hi=3):
    dims = tuple(draw(st.integers(1, max_dim)) for _ in range(n))
    size = 1
    for m in dims:
        size *= m
    payoffs = [draw(st.lists(st.integers(lo, hi), min_size=size, max_size=size)) for _ in range(n)]
    return TensorGame(dims, payoffs)


def all_cells(dims):
    return list(itertools.product(*(range(m) for m in dims)))

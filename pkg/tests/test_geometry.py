from fractions import Fraction

import pytest
from hypothesis import given
from hypothesis import strategies as st

from strongnash.game import BimatrixGame, GameError, MixedProfile
from strongnash.geometry import (
    HORIZONTAL,
    NEGATIVE,
    NOT_COLLINEAR,
    POINT,
    POSITIVE,
    VERTICAL,
    classify_line,
    classify_points,
    condition1,
    condition2,
    is_strictly_competitive,
    theorem1_report,
)

from conftest import HALF, bimatrix_games


def test_line3_line(line3):
    line = classify_line(line3)
    assert line.kind == NEGATIVE and line.slope == -2 and line.through_origin
    assert str(line) == "NegativeSlope(-2) through origin"
    assert is_strictly_competitive(line3)


def test_pd_is_not_collinear(pd):
    assert classify_line(pd).kind == NOT_COLLINEAR
    assert not is_strictly_competitive(pd)
    assert condition1(pd) is None
    assert condition2(pd) is None


@pytest.mark.parametrize("points, kind, slope, origin", [
    ([(1, 1), (1, 1)], POINT, None, False),
    ([(0, 0)], POINT, None, True),
    ([(2, 0), (2, 5), (2, -1)], VERTICAL, None, False),
    ([(0, 3), (4, 3)], HORIZONTAL, 0, False),
    ([(0, 0), (1, 1), (3, 3)], POSITIVE, 1, True),
    ([(0, 1), (1, 0), (2, -1)], NEGATIVE, -1, False),
    ([(0, 0), (1, 0), (0, 1)], NOT_COLLINEAR, None, None),
])
def test_classify_points(points, kind, slope, origin):
    line = classify_points([(Fraction(a), Fraction(b)) for a, b in points])
    assert line.kind == kind
    assert line.slope == slope
    assert line.through_origin == origin


def test_condition1_first_block(line3, pennies):
    w = condition1(line3)
    assert (w.rows, w.cols) == ((0, 1), (0, 1))
    assert condition1(pennies) is not None


def test_condition2_vertical_before_horizontal():
    # column 1 has two equal row-player payoffs, row 1 has two equal column-player payoffs
    g = BimatrixGame([[1, 0], [1, 2]], [[5, 5], [0, 3]])
    w = condition2(g)
    assert (w.kind, w.line, w.pair) == (VERTICAL, 0, (0, 1))
    g2 = BimatrixGame([[1, 0], [2, 3]], [[5, 5], [0, 3]])
    w2 = condition2(g2)
    assert (w2.kind, w2.line, w2.pair) == (HORIZONTAL, 0, (0, 1))


def test_theorem1_reports(line3, line_ne, coordination, pennies):
    r = theorem1_report(line3, line_ne)
    assert r.values == (0, 0) and r.super_condition and r.strong_condition
    mixed = MixedProfile((HALF, HALF))
    r = theorem1_report(coordination, mixed)
    assert r.line.kind == POSITIVE and not r.strong_condition and not r.super_condition
    assert theorem1_report(pennies, mixed).super_condition
    with pytest.raises(GameError):
        theorem1_report(line3, MixedProfile.pure((3, 3), (0, 0)))


def test_vertical_line_is_strong_not_super():
    g = BimatrixGame([[0, 0], [0, 0]], [[1, -1], [-1, 1]])
    r = theorem1_report(g, MixedProfile((HALF, HALF)))
    assert r.line.kind == VERTICAL
    assert r.strong_condition and not r.super_condition


positive = st.fractions(Fraction(1, 4), 4, max_denominator=4)
shift = st.fractions(-3, 3, max_denominator=4)


@given(bimatrix_games(lo=-3, hi=3), positive, shift, positive, shift)
def test_affine_invariance(game, a, b, c, d):
    """Positive affine rescaling of either player's payoffs keeps the line kind,
    the sign of the slope and both geometric conditions."""
    g = BimatrixGame(
        [[a * v + b for v in row] for row in game.u1],
        [[c * v + d for v in row] for row in game.u2],
    )
    l0, l1 = classify_line(game), classify_line(g)
    assert l0.kind == l1.kind
    if l0.slope is not None:
        assert l1.slope == l0.slope * c / a
    assert condition1(game) == condition1(g)
    assert condition2(game) == condition2(g)
    assert is_strictly_competitive(game) == is_strictly_competitive(g)


@given(bimatrix_games(lo=-3, hi=3))
def test_condition1_witness_is_collinear(game):
    w = condition1(game)
    if w is not None:
        pts = [game.outcome((i, j)) for i in w.rows for j in w.cols]
        assert classify_points(pts).collinear

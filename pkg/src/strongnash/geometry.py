"""Payoff-plane geometry of bimatrix games.

Each cell ``(i, j)`` is the point ``(u1[i][j], u2[i][j])``.  Everything is
decided with exact cross products; there are no tolerances.
"""
from __future__ import annotations

import itertools
from dataclasses import dataclass
from fractions import Fraction
from typing import Sequence

from .game import BimatrixGame, GameError, MixedProfile, expected_payoff, normalize_to_zero

POINT = "point"
VERTICAL = "vertical"
HORIZONTAL = "horizontal"
NEGATIVE = "negative-slope"
POSITIVE = "positive-slope"
NOT_COLLINEAR = "not-collinear"


@dataclass(frozen=True)
class LineClass:
    kind: str
    slope: Fraction | None = None
    through_origin: bool | None = None

    @property
    def collinear(self) -> bool:
        return self.kind != NOT_COLLINEAR

    def __str__(self) -> str:
        if self.kind == NOT_COLLINEAR:
            return "NotCollinear"
        name = {
            POINT: "Point", VERTICAL: "Vertical", HORIZONTAL: "Horizontal",
            NEGATIVE: f"NegativeSlope({self.slope})", POSITIVE: f"PositiveSlope({self.slope})",
        }[self.kind]
        return f"{name}{' through origin' if self.through_origin else ''}"


def _cross(o, a, b) -> Fraction:
    return (a[0] - o[0]) * (b[1] - o[1]) - (a[1] - o[1]) * (b[0] - o[0])


def classify_points(points: Sequence[tuple[Fraction, Fraction]]) -> LineClass:
    distinct = list(dict.fromkeys(points))
    origin = (Fraction(0), Fraction(0))
    if len(distinct) <= 1:
        return LineClass(POINT, None, bool(distinct) and distinct[0] == origin)
    p0, p1 = distinct[0], distinct[1]
    if any(_cross(p0, p1, p) != 0 for p in distinct[2:]):
        return LineClass(NOT_COLLINEAR)
    through = _cross(p0, p1, origin) == 0
    dx, dy = p1[0] - p0[0], p1[1] - p0[1]
    if dx == 0:
        return LineClass(VERTICAL, None, through)
    if dy == 0:
        return LineClass(HORIZONTAL, Fraction(0), through)
    slope = dy / dx
    return LineClass(NEGATIVE if slope < 0 else POSITIVE, slope, through)


@dataclass(frozen=True)
class Condition1Witness:
    rows: tuple[int, int]
    cols: tuple[int, int]


@dataclass(frozen=True)
class Condition2Witness:
    kind: str            # VERTICAL: two rows in one column, HORIZONTAL: two columns in one row
    line: int            # the shared column (vertical) or row (horizontal)
    pair: tuple[int, int]


def condition1(game: BimatrixGame) -> Condition1Witness | None:
    """First 2x2 block (lexicographic in rows, then columns) whose four
    outcome points are collinear."""
    for rows in itertools.combinations(range(game.m1), 2):
        for cols in itertools.combinations(range(game.m2), 2):
            pts = [game.outcome((i, j)) for i in rows for j in cols]
            if pts[0] != pts[1] and _cross(pts[0], pts[1], pts[2]) != 0:
                continue
            if classify_points(pts).collinear:
                return Condition1Witness(rows, cols)
    return None


def condition2(game: BimatrixGame) -> Condition2Witness | None:
    """Two outcomes of one column on a vertical line, else two outcomes of one
    row on a horizontal line."""
    for j in range(game.m2):
        seen = {}
        for i in range(game.m1):
            v = game.u1[i][j]
            if v in seen:
                return Condition2Witness(VERTICAL, j, (seen[v], i))
            seen[v] = i
    for i in range(game.m1):
        seen = {}
        for j in range(game.m2):
            v = game.u2[i][j]
            if v in seen:
                return Condition2Witness(HORIZONTAL, i, (seen[v], j))
            seen[v] = j
    return None


def classify_line(game: BimatrixGame) -> LineClass:
    return classify_points(game.points())


def is_strictly_competitive(game: BimatrixGame) -> bool:
    """True iff ``u2 = -a*u1 + b`` with ``a > 0`` on every cell."""
    return classify_line(game).kind in (NEGATIVE, POINT)


@dataclass(frozen=True)
class Theorem1Report:
    values: tuple[Fraction, Fraction]
    line: LineClass
    super_condition: bool
    strong_condition: bool


def theorem1_report(game: BimatrixGame, profile: MixedProfile) -> Theorem1Report:
    """Necessary condition for a fully mixed (super) strong equilibrium:
    after shifting the profile's payoffs to the origin, all outcomes lie on
    one line through the origin; strictly decreasing for super strong, and
    non-increasing or vertical for strong."""
    if not profile.is_fully_mixed():
        raise GameError("theorem1_report needs a fully mixed profile on the given game")
    values = expected_payoff(game, profile)
    line = classify_line(normalize_to_zero(game, values))
    through = bool(line.through_origin)
    super_ok = line.kind == POINT or (line.kind == NEGATIVE and through)
    strong_ok = line.kind == POINT or (line.kind in (NEGATIVE, VERTICAL, HORIZONTAL) and through)
    return Theorem1Report(values, line, super_ok, strong_ok)

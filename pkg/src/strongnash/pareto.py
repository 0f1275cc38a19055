"""Pareto domination and coalition efficiency.

A coalition deviates with independent mixed strategies of its members while
everybody else stays at the candidate profile.  Two query modes exist:

* ``WEAK`` asks whether the values are *weakly* Pareto efficient, so it looks
  for a deviation that raises every member's payoff (``>>``);
* ``STRICT`` asks for *strict* efficiency, so any deviation that raises some
  member and lowers nobody (``>``) refutes it.

:func:`coalition_efficiency` answers in three tiers: a pure scan, exact
certificates, then a refined rational grid.  ``Efficient`` and ``Dominated``
verdicts are always exact; ``Undetermined`` is returned when neither side
could be proven.
"""
from __future__ import annotations

import itertools
import math
from dataclasses import dataclass
from fractions import Fraction
from typing import Sequence, Union

import numpy as np

from . import bilinear, lp, nra
from .game import BimatrixGame, Game, GameError, MixedProfile, as_rational, expected_payoff
from .geometry import HORIZONTAL, NEGATIVE, POINT, VERTICAL, classify_points

WEAK = "weak"
STRICT = "strict"
MODES = (WEAK, STRICT)


@dataclass(frozen=True)
class SearchParams:
    """Knobs of the grid tier and the nonlinear solver."""

    resolution: Fraction = Fraction(1, 32)
    max_refinements: int = 3
    max_grid_points: int = 2_000_000
    nlsat_timeout_ms: int = 20_000

    def __post_init__(self):
        res = as_rational(self.resolution)
        if res <= 0 or res > 1 or res.numerator != 1:
            raise GameError(f"grid resolution must be 1/D with D >= 1, got {res}")
        if self.max_refinements < 0:
            raise GameError("max_refinements must be nonnegative")
        object.__setattr__(self, "resolution", res)


@dataclass(frozen=True)
class Coalition:
    members: tuple[int, ...]

    def __post_init__(self):
        members = tuple(sorted(set(int(i) for i in self.members)))
        if not members:
            raise GameError("a coalition needs at least one member")
        object.__setattr__(self, "members", members)

    def check(self, n_players: int) -> None:
        if self.members[0] < 0 or self.members[-1] >= n_players:
            raise GameError(f"coalition {self.members} is not within players 0..{n_players - 1}")

    def __len__(self) -> int:
        return len(self.members)


@dataclass(frozen=True)
class Efficient:
    certificate_kind: str
    tag = "Efficient"


@dataclass(frozen=True)
class Dominated:
    witness: MixedProfile
    witness_values: tuple[Fraction, ...]
    tag = "Dominated"


@dataclass(frozen=True)
class Undetermined:
    best_margin: Fraction
    resolution_reached: Fraction
    tag = "Undetermined"


EfficiencyVerdict = Union[Efficient, Dominated, Undetermined]


def _as_coalition(coalition, n_players: int) -> Coalition:
    c = coalition if isinstance(coalition, Coalition) else Coalition(tuple(coalition))
    c.check(n_players)
    return c


def _check_mode(mode: str) -> None:
    if mode not in MODES:
        raise GameError(f"mode must be 'weak' or 'strict', got {mode!r}")


def dominates(u: Sequence, v: Sequence, mode: str) -> bool:
    """Does ``u`` refute the efficiency of ``v`` in ``mode``?

    ``WEAK``: ``u >> v``.  ``STRICT``: ``u > v`` (no coordinate lower, one higher).
    """
    _check_mode(mode)
    if mode == WEAK:
        return all(a > b for a, b in zip(u, v))
    return all(a >= b for a, b in zip(u, v)) and any(a > b for a, b in zip(u, v))


def coalition_table(game: Game, fixed: MixedProfile, members: Sequence[int]) -> dict:
    """Members' expected payoffs for every joint pure action of the members,
    non-members playing their ``fixed`` strategies."""
    members = tuple(members)
    others = [i for i in range(game.n_players) if i not in members]
    other_cells = [
        (cell, math.prod((fixed.strategies[i][a] for i, a in zip(others, cell)), start=Fraction(1)))
        for cell in itertools.product(*(fixed.support().sets[i] for i in others))
    ]
    table = {}
    for joint in itertools.product(*(range(game.dims[i]) for i in members)):
        full = [0] * game.n_players
        for i, a in zip(members, joint):
            full[i] = a
        acc = [Fraction(0)] * len(members)
        for cell, w in other_cells:
            for i, a in zip(others, cell):
                full[i] = a
            out = game.outcome(full)
            for k, i in enumerate(members):
                acc[k] += w * out[i]
        table[joint] = tuple(acc)
    return table


def _deviate(fixed: MixedProfile, members, strategies) -> MixedProfile:
    s = list(fixed.strategies)
    for i, x in zip(members, strategies):
        s[i] = tuple(x)
    return MixedProfile(tuple(s))


def _verified(game, fixed, coalition, strategies, values, mode) -> Dominated | None:
    """Exact re-evaluation of a candidate deviation."""
    profile = _deviate(fixed, coalition.members, strategies)
    payoff = expected_payoff(game, profile)
    got = tuple(payoff[i] for i in coalition.members)
    if dominates(got, values, mode):
        return Dominated(profile, got)
    return None


def _unit(m: int, a: int) -> tuple[Fraction, ...]:
    return tuple(Fraction(int(k == a)) for k in range(m))


# ---------------------------------------------------------------- tier 1

def pure_domination_scan(game: Game, values: Sequence, coalition, fixed: MixedProfile, mode: str):
    """First joint pure action of the coalition (lexicographic) whose payoffs
    dominate ``values``; returns a :class:`Dominated` or None."""
    _check_mode(mode)
    coalition = _as_coalition(coalition, game.n_players)
    values = tuple(as_rational(v) for v in values)
    table = coalition_table(game, fixed, coalition.members)
    for joint, payoff in table.items():
        if dominates(payoff, values, mode):
            strategies = [_unit(game.dims[i], a) for i, a in zip(coalition.members, joint)]
            return Dominated(_deviate(fixed, coalition.members, strategies), payoff)
    return None


# ---------------------------------------------------------------- tier 2

def convex_hull_2d(points: Sequence[Sequence[Fraction]]) -> list[tuple[Fraction, Fraction]]:
    """Vertices of the convex hull in counter-clockwise order (monotone chain)."""
    pts = sorted(set((p[0], p[1]) for p in points))
    if len(pts) <= 2:
        return pts

    def cross(o, a, b):
        return (a[0] - o[0]) * (b[1] - o[1]) - (a[1] - o[1]) * (b[0] - o[0])

    lower, upper = [], []
    for p in pts:
        while len(lower) >= 2 and cross(lower[-2], lower[-1], p) <= 0:
            lower.pop()
        lower.append(p)
    for p in reversed(pts):
        while len(upper) >= 2 and cross(upper[-2], upper[-1], p) <= 0:
            upper.pop()
        upper.append(p)
    return lower[:-1] + upper[:-1]


def _edges(hull):
    if len(hull) == 1:
        return [(hull[0], hull[0])]
    return list(zip(hull, hull[1:] + hull[:1]))


def _hull_margin_2d(points, values, mode) -> Fraction:
    """Planar version of :func:`hull_margin`: the optimum sits on a hull
    vertex or where a hull edge crosses a breakpoint line."""
    v1, v2 = values
    hull = convex_hull_2d(points)
    cands = list(hull)
    for p, q in _edges(hull):
        d = (q[0] - p[0], q[1] - p[1])
        if mode == WEAK:
            # crossing of x - v1 = y - v2
            h0 = (p[0] - v1) - (p[1] - v2)
            dh = d[0] - d[1]
            if dh != 0:
                t = -h0 / dh
                if 0 <= t <= 1:
                    cands.append((p[0] + t * d[0], p[1] + t * d[1]))
        else:
            for axis, v in ((0, v1), (1, v2)):
                if d[axis] != 0:
                    t = (v - p[axis]) / d[axis]
                    if 0 <= t <= 1:
                        cands.append((p[0] + t * d[0], p[1] + t * d[1]))
    if mode == WEAK:
        return max(min(c[0] - v1, c[1] - v2) for c in cands)
    if len(hull) >= 3 and all(
        (q[0] - p[0]) * (v2 - p[1]) - (q[1] - p[1]) * (v1 - p[0]) >= 0 for p, q in _edges(hull)
    ):
        cands.append((v1, v2))
    inside = [c[0] - v1 + c[1] - v2 for c in cands if c[0] >= v1 and c[1] >= v2]
    return max(inside) if inside else Fraction(-1)


def hull_margin(points: Sequence[Sequence[Fraction]], values: Sequence, mode: str,
                use_lp: bool = False) -> Fraction:
    """Best domination margin over the convex hull of ``points``.

    ``WEAK``: max over the hull of the smallest gap to ``values``.
    ``STRICT``: max of the summed gaps over hull points with no negative gap,
    or -1 when no such point exists.  A positive margin means some hull point
    dominates.  Planar inputs use an exact geometric routine unless
    ``use_lp`` forces the linear program.
    """
    _check_mode(mode)
    pts = [tuple(as_rational(v) for v in p) for p in points]
    k, n = len(pts), len(values)
    values = [as_rational(v) for v in values]
    if n == 2 and not use_lp:
        return _hull_margin_2d(pts, values, mode)
    A_eq = [[Fraction(1)] * k + [Fraction(0)]]
    b_eq = [1]
    A_ub, b_ub = [], []
    if mode == WEAK:
        # t <= sum_c lam_c p_c[i] - v_i
        for i in range(n):
            A_ub.append([-p[i] for p in pts] + [Fraction(1)])
            b_ub.append(-values[i])
        res = lp.linprog([Fraction(0)] * k + [Fraction(1)], A_ub, b_ub, A_eq, b_eq, free=[k])
    else:
        for i in range(n):
            A_ub.append([-p[i] for p in pts] + [Fraction(0)])
            b_ub.append(-values[i])
        c = [sum(p[i] for i in range(n)) for p in pts] + [Fraction(0)]
        res = lp.linprog(c, A_ub, b_ub, A_eq, b_eq)
        if not res.ok:
            return Fraction(-1)
        return res.value - sum(values)
    return res.value


def hull_efficiency_certificate(game: BimatrixGame, values: Sequence, mode: str) -> bool:
    """True iff no point of the convex hull of the outcome points dominates
    ``values``.  True certifies efficiency for the grand coalition; False
    proves nothing, since independent mixing may not reach that hull point."""
    return hull_margin(game.points(), values, mode) <= 0


def _collinear_certificate(table: dict, values, mode: str) -> bool:
    """Exact test for two-member coalitions whose pure payoff pairs lie on a
    line: every reachable pair is on the same segment, so nothing dominates
    unless a segment end point does (the pure scan has already ruled that
    out) or the line leaves room in one coordinate only."""
    line = classify_points(list(table.values()))
    if line.kind in (NEGATIVE, POINT):
        return True
    return mode == WEAK and line.kind in (VERTICAL, HORIZONTAL)


def _segment_meets(p, q, values, closed: bool) -> bool:
    """Does the segment from p to q meet the quadrant above ``values``?"""
    lo, hi = Fraction(0), Fraction(1)
    lo_open = hi_open = False
    for a, b, v in zip(p, q, values):
        # a + t (b - a) > v   (or >=)
        slope, gap = b - a, a - v
        if slope == 0:
            if gap < 0 or (gap == 0 and not closed):
                return False
            continue
        t = -gap / slope
        if slope > 0:
            if t > lo or (t == lo and not closed):
                lo, lo_open = t, not closed
        else:
            if t < hi or (t == hi and not closed):
                hi, hi_open = t, not closed
    return lo < hi or (lo == hi and not lo_open and not hi_open)


def _block_may_dominate(corners, values, mode) -> bool:
    closed = mode == STRICT
    return any(_segment_meets(p, q, values, closed) for p, q in itertools.combinations(corners, 2))


def _rationalize(pt, check) -> tuple[Fraction, Fraction] | None:
    if all(isinstance(v, Fraction) for v in pt):
        return pt
    for denom in (10 ** k for k in range(2, 40, 2)):
        cand = tuple(Fraction(float(v)).limit_denominator(denom) if not isinstance(v, Fraction) else v for v in pt)
        if all(0 <= v <= 1 for v in cand) and check(cand):
            return cand
    return None


def _pair_blocks(game: Game, fixed: MixedProfile, coalition: Coalition, values, mode: str,
                 table: dict | None = None, blocks=None):
    """Exact domination search for a two-member coalition.

    If some deviation dominates, one using at most two actions per member
    does too: fixing one member's mixture, the other member's reachable pairs
    form a polygon, and pushing a dominating point along (1, 1) to its
    boundary keeps it dominating while moving onto an edge.  Hence checking
    every 2x2 action block with the exact bilinear test is a decision
    procedure.  Returns a :class:`Dominated` or None.
    """
    i, j = coalition.members
    if table is None:
        table = coalition_table(game, fixed, coalition.members)
    mi, mj = game.dims[i], game.dims[j]
    if blocks is None:
        rows = list(itertools.combinations(range(mi), 2)) or [(0, 0)]
        cols = list(itertools.combinations(range(mj), 2)) or [(0, 0)]
        blocks = itertools.product(rows, cols)
    strict = mode == WEAK
    for (a0, a1), (b0, b1) in blocks:
        corners = [table[(a0, b0)], table[(a0, b1)], table[(a1, b0)], table[(a1, b1)]]
        if not _block_may_dominate(corners, values, mode):
            continue
        gs = [
            bilinear.Bilinear.from_corners(*(c[k] for c in corners)).shift(values[k])
            for k in range(2)
        ]
        pt = bilinear.dominating_point(gs, strict)
        if pt is None:
            continue

        def to_strats(pq):
            p, q = pq
            x = [Fraction(0)] * mi
            y = [Fraction(0)] * mj
            x[a0] += p
            x[a1] += 1 - p
            y[b0] += q
            y[b1] += 1 - q
            return [tuple(x), tuple(y)]

        pt = _rationalize(pt, lambda c: _verified(game, fixed, coalition, to_strats(c), values, mode) is not None)
        if pt is None:   # pragma: no cover - a rational witness always exists
            raise ArithmeticError("no rational witness near an irrational dominating point")
        return _verified(game, fixed, coalition, to_strats(pt), values, mode)
    return None


def two_coalition_exact_2x2(game: Game, profile: MixedProfile, coalition, mode: str) -> EfficiencyVerdict:
    """Exact verdict for two deviators with two actions each; never
    ``Undetermined``.  Raises :class:`GameError` if the shape does not fit."""
    _check_mode(mode)
    coalition = _as_coalition(coalition, game.n_players)
    if len(coalition) != 2 or any(game.dims[i] != 2 for i in coalition.members):
        raise GameError("two_coalition_exact_2x2 needs two members with exactly two actions each")
    payoff = expected_payoff(game, profile)
    values = tuple(payoff[i] for i in coalition.members)
    hit = pure_domination_scan(game, values, coalition, profile, mode)
    if hit is None:
        hit = _pair_blocks(game, profile, coalition, values, mode)
    return hit if hit is not None else Efficient("exhaustive")


def _nlsat_triple(game, fixed, coalition, values, mode, params):
    table = coalition_table(game, fixed, coalition.members)
    tables = [{cell: v[k] for cell, v in table.items()} for k in range(3)]
    res = nra.binary_domination(tables, values, mode == WEAK, params.nlsat_timeout_ms)
    if res.status == nra.UNSAT:
        return Efficient("nlsat")
    if res.status == nra.SAT and res.point is not None:
        strategies = [(x, 1 - x) for x in res.point]
        return _verified(game, fixed, coalition, strategies, values, mode)
    return None


# ---------------------------------------------------------------- tier 3

def _simplex_grid(m: int, D: int) -> list[tuple[int, ...]]:
    """Compositions of D into m nonnegative parts, lexicographic."""
    if m == 1:
        return [(D,)]
    return [(k,) + rest for k in range(D, -1, -1) for rest in _simplex_grid(m - 1, D - k)]


def _grid_size(m: int, D: int) -> int:
    return math.comb(D + m - 1, m - 1)


def grid_domination_search(game: Game, values: Sequence, coalition, fixed: MixedProfile, mode: str,
                           resolution=Fraction(1, 32), max_refinements: int = 3,
                           max_grid_points: int = 2_000_000):
    """Search product strategies on a rational grid for a dominating deviation.

    Probabilities are multiples of ``resolution``; on failure the step is
    halved up to ``max_refinements`` times.  A fast floating-point pass picks
    candidates, which are then re-checked exactly in enumeration order, so
    the first exact hit in order is returned.  Returns ``(witness or None,
    finest resolution tried)``.
    """
    _check_mode(mode)
    coalition = _as_coalition(coalition, game.n_players)
    values = tuple(as_rational(v) for v in values)
    resolution = as_rational(resolution)
    table = coalition_table(game, fixed, coalition.members)
    dims = [game.dims[i] for i in coalition.members]
    k = len(dims)
    T = np.zeros(dims + [k])
    for joint, payoff in table.items():
        T[joint] = [float(v) for v in payoff]
    vf = np.array([float(v) for v in values])
    D = resolution.denominator
    reached = resolution
    for _ in range(max_refinements + 1):
        if math.prod(_grid_size(m, D) for m in dims) > max_grid_points:
            break
        reached = Fraction(1, D)
        grids = [np.array(_simplex_grid(m, D), dtype=float) / D for m in dims]
        # contract the last member first: P[g1, ..., gk, payoff]
        P = T
        for axis in range(k - 1, -1, -1):
            P = np.moveaxis(np.tensordot(grids[axis], P, axes=([1], [axis])), 0, axis)
        gaps = P - vf
        tol = 1e-9
        mask = np.all(gaps > -tol, axis=-1) & np.any(gaps > tol, axis=-1)
        if mask.any():
            int_grids = [_simplex_grid(m, D) for m in dims]
            for idx in np.argwhere(mask):   # row-major, i.e. enumeration order
                strategies = [tuple(Fraction(c, D) for c in int_grids[a][g]) for a, g in enumerate(idx)]
                hit = _verified(game, fixed, coalition, strategies, values, mode)
                if hit is not None:
                    return hit, reached
        D *= 2
    return None, reached


# ---------------------------------------------------------------- tiers together

def coalition_efficiency(game: Game, profile: MixedProfile, coalition, mode: str,
                         params: SearchParams | None = None) -> EfficiencyVerdict:
    """Tiered efficiency verdict for ``coalition`` at ``profile``."""
    _check_mode(mode)
    params = params or SearchParams()
    coalition = _as_coalition(coalition, game.n_players)
    payoff = expected_payoff(game, profile)
    values = tuple(payoff[i] for i in coalition.members)

    hit = pure_domination_scan(game, values, coalition, profile, mode)
    if hit is not None:
        return hit
    if len(coalition) == 1:
        return Efficient("best-response")

    table = coalition_table(game, profile, coalition.members)
    points = list(table.values())
    if len(coalition) == 2 and _collinear_certificate(table, values, mode):
        return Efficient("collinear-slope")
    if hull_margin(points, values, mode) <= 0:
        return Efficient("hull")
    if len(coalition) == 2:
        hit = _pair_blocks(game, profile, coalition, values, mode, table=table)
        return hit if hit is not None else Efficient("exhaustive")
    if len(coalition) == 3 and all(game.dims[i] == 2 for i in coalition.members):
        verdict = _nlsat_triple(game, profile, coalition, values, mode, params)
        if verdict is not None:
            return verdict

    hit, reached = grid_domination_search(
        game, values, coalition, profile, mode,
        params.resolution, params.max_refinements, params.max_grid_points,
    )
    if hit is not None:
        return hit
    return Undetermined(hull_margin(points, values, WEAK), reached)


def verdict_is_sound(game: Game, values: Sequence, coalition, mode: str, verdict: EfficiencyVerdict) -> bool:
    """Re-verify a Dominated verdict exactly; other verdicts pass trivially."""
    if not isinstance(verdict, Dominated):
        return True
    coalition = _as_coalition(coalition, game.n_players)
    payoff = expected_payoff(game, verdict.witness)
    return dominates(tuple(payoff[i] for i in coalition.members), values, mode)


__all__ = [
    "WEAK", "STRICT", "SearchParams", "Coalition", "Efficient", "Dominated", "Undetermined",
    "dominates", "coalition_table", "pure_domination_scan", "hull_margin",
    "hull_efficiency_certificate", "grid_domination_search", "two_coalition_exact_2x2",
    "coalition_efficiency", "verdict_is_sound",
]

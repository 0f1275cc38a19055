"""Nash equilibrium checks, support-restricted equilibrium LPs and KKT
multiplier certificates for fully mixed two-player profiles."""
from __future__ import annotations

import itertools
from dataclasses import dataclass
from fractions import Fraction
from typing import Sequence

from . import lp
from .game import (
    BimatrixGame,
    Game,
    GameError,
    MixedProfile,
    SupportProfile,
    deviation_payoffs,
    expected_payoff,
    normalize_to_zero,
    pure_profiles,
)


@dataclass(frozen=True)
class NashWitness:
    profile: MixedProfile
    values: tuple[Fraction, ...]
    support: SupportProfile


@dataclass(frozen=True)
class KktCertificate:
    """Multipliers for the full-support first-order system

        lambda2 * (B x2) + nu1 * 1 = 0,   lambda1 * (A^T x1) + nu2 * 1 = 0

    on the game normalised so the profile pays (0, 0).  ``lam`` is the
    multiplier vector maximising its smaller component.
    """

    lam: tuple[Fraction, Fraction]
    nu: tuple[Fraction, Fraction]
    strictly_positive: bool


def is_pure_nash(game: Game, cell: Sequence[int]) -> bool:
    cell = tuple(cell)
    if len(cell) != len(game.dims) or any(not 0 <= a < m for a, m in zip(cell, game.dims)):
        raise GameError(f"pure profile {cell} does not fit dims {tuple(game.dims)}")
    here = game.outcome(cell)
    for player, m in enumerate(game.dims):
        for a in range(m):
            if a != cell[player]:
                dev = cell[:player] + (a,) + cell[player + 1:]
                if game.outcome(dev)[player] > here[player]:
                    return False
    return True


def enumerate_pure_nash(game: Game) -> list[tuple[int, ...]]:
    return [cell for cell in pure_profiles(game.dims) if is_pure_nash(game, cell)]


def is_nash(game: Game, profile: MixedProfile) -> bool:
    """Exact check: every pure action earns at most the equilibrium value and
    in-support actions earn exactly it."""
    values = expected_payoff(game, profile)
    for player in range(game.n_players):
        payoffs = deviation_payoffs(game, profile, player)
        x = profile.strategies[player]
        for a, u in enumerate(payoffs):
            if u > values[player] or (x[a] > 0 and u != values[player]):
                return False
    return True


def _indifference_block(M, own: Sequence[int], opp: Sequence[int], n_opp: int):
    """Constraints on (y_opp_support..., v, t) for one player's indifference.

    ``M[a][b]`` is the player's payoff for own action a against opponent action b.
    Returns (A_ub, b_ub, A_eq, b_eq) over variables y (|opp|), v (free), t.
    """
    k = len(opp)
    own_set = set(own)
    A_ub, b_ub, A_eq, b_eq = [], [], [], []
    for a in range(len(M)):
        row = [M[a][b] for b in opp] + [Fraction(-1), Fraction(0)]
        if a in own_set:
            A_eq.append(row)
            b_eq.append(0)
        else:
            A_ub.append(row)
            b_ub.append(0)
    A_eq.append([Fraction(1)] * k + [Fraction(0), Fraction(0)])
    b_eq.append(1)
    # t <= y_b for every in-support opponent action
    for idx in range(k):
        row = [Fraction(0)] * (k + 2)
        row[idx] = Fraction(-1)
        row[k + 1] = Fraction(1)
        A_ub.append(row)
        b_ub.append(0)
    return A_ub, b_ub, A_eq, b_eq


def _solve_side(M, own, opp):
    """Opponent mixture on ``opp`` making ``own`` indifferent best responses.

    The first LP maximises the smallest in-support probability, which is
    positive iff some mixture has exactly this support.  The second keeps
    that minimum and maximises the value.  Returns (mixture over opp, value)
    or None.
    """
    k = len(opp)
    A_ub, b_ub, A_eq, b_eq = _indifference_block(M, own, opp, k)
    free = [k]
    c_pos = [Fraction(0)] * k + [Fraction(0), Fraction(1)]
    res = lp.linprog(c_pos, A_ub, b_ub, A_eq, b_eq, free=free)
    if not res.ok or res.x[k + 1] <= 0:
        return None
    A_ub2 = A_ub + [[Fraction(0)] * k + [Fraction(0), Fraction(-1)]]
    b_ub2 = b_ub + [-res.x[k + 1]]
    c_value = [Fraction(0)] * k + [Fraction(1), Fraction(0)]
    res2 = lp.linprog(c_value, A_ub2, b_ub2, A_eq, b_eq, free=free)
    return res2.x[:k], res2.x[k]


def nash_on_support(game: BimatrixGame, support: SupportProfile) -> NashWitness | None:
    """An equilibrium whose support is exactly ``support``, or None.

    Player 1's indifference only involves player 2's mixture and vice versa,
    so each side is solved on its own.  When a side admits many mixtures the
    most interior one (largest smallest probability) is chosen, ties going to
    the higher value.
    """
    support.check(game.dims)
    rows, cols = support.sets
    side1 = _solve_side(game.u1, rows, cols)
    if side1 is None:
        return None
    u2_t = [[game.u2[i][j] for i in range(game.m1)] for j in range(game.m2)]
    side2 = _solve_side(u2_t, cols, rows)
    if side2 is None:
        return None
    (y2, v1), (y1, v2) = side1, side2
    x1 = [Fraction(0)] * game.m1
    x2 = [Fraction(0)] * game.m2
    for a, p in zip(rows, y1):
        x1[a] = p
    for b, q in zip(cols, y2):
        x2[b] = q
    profile = MixedProfile((tuple(x1), tuple(x2)))
    return NashWitness(profile, (v1, v2), support)


def supports_by_size(dims: Sequence[int], include_pure: bool = False):
    """Support profiles in ascending total size, then lexicographic order."""
    m1, m2 = dims
    out = []
    for s1 in range(1, m1 + 1):
        for s2 in range(1, m2 + 1):
            if s1 == s2 == 1 and not include_pure:
                continue
            for rows in itertools.combinations(range(m1), s1):
                for cols in itertools.combinations(range(m2), s2):
                    out.append((s1 + s2, rows, cols))
    out.sort()
    return [SupportProfile((rows, cols)) for _, rows, cols in out]


def enumerate_support_equilibria(game: BimatrixGame, include_pure: bool = True) -> list[NashWitness]:
    found = []
    for support in supports_by_size(game.dims, include_pure=include_pure):
        w = nash_on_support(game, support)
        if w is not None:
            found.append(w)
    return found


def kkt_certificate(game: BimatrixGame, profile: MixedProfile, values: Sequence) -> KktCertificate | None:
    """Search for multipliers certifying the first-order conditions of weak
    Pareto efficiency at a fully mixed profile.

    ``values`` are the players' payoffs at the profile; the game is shifted so
    they become zero before the system is assembled.  ``None`` means the system
    is infeasible, which rules out weak Pareto efficiency of the profile.
    """
    if not profile.is_fully_mixed():
        raise GameError("kkt_certificate needs a fully mixed profile; restrict the game to the support first")
    g = normalize_to_zero(game, values)
    x1, x2 = profile.strategies
    bx2 = [sum((q * g.u2[i][j] for j, q in enumerate(x2)), Fraction(0)) for i in range(g.m1)]
    atx1 = [sum((p * g.u1[i][j] for i, p in enumerate(x1)), Fraction(0)) for j in range(g.m2)]
    # variables: lam1, lam2, nu1 (free), nu2 (free), t
    A_eq, b_eq = [], []
    for v in bx2:
        A_eq.append([0, v, 1, 0, 0])
        b_eq.append(0)
    for v in atx1:
        A_eq.append([v, 0, 0, 1, 0])
        b_eq.append(0)
    A_eq.append([1, 1, 0, 0, 0])
    b_eq.append(1)
    A_ub = [[-1, 0, 0, 0, 1], [0, -1, 0, 0, 1]]
    b_ub = [0, 0]
    res = lp.linprog([0, 0, 0, 0, 1], A_ub, b_ub, A_eq, b_eq, free=[2, 3])
    if not res.ok:
        return None
    lam1, lam2, nu1, nu2, t = res.x
    return KktCertificate((lam1, lam2), (nu1, nu2), t > 0)

"""Exact game model: bimatrix and n-player tensor games over the rationals.

Every payoff and probability is a :class:`fractions.Fraction`.  Action indices
are 0-based throughout the package.

A bimatrix game stores its two grids *cell aligned*: ``u1[i][j]`` and
``u2[i][j]`` are the payoffs of the row and column player when the row player
picks ``i`` and the column player picks ``j``.  The pair ``(u1[i][j], u2[i][j])``
is the outcome point of cell ``(i, j)`` in the payoff plane.
"""
from __future__ import annotations

import itertools
import math
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Iterable, Iterator, Sequence, Union


class GameError(ValueError):
    """Raised on malformed games, profiles or supports."""


def as_rational(value) -> Fraction:
    """Promote ints, Fractions and ``"p/q"`` strings to a Fraction.

    Floats are rejected: payoffs and probabilities must be exact.
    """
    if isinstance(value, Fraction):
        return value
    if isinstance(value, bool):
        raise GameError(f"not a rational: {value!r}")
    if isinstance(value, int):
        return Fraction(value)
    if isinstance(value, str):
        token = value.strip().replace("−", "-")
        try:
            return Fraction(token)
        except (ValueError, ZeroDivisionError) as exc:
            raise GameError(f"not a rational: {value!r}") from exc
    raise GameError(f"not an exact rational: {value!r}")


def _identity_labels(dims: Sequence[int]) -> tuple[tuple[int, ...], ...]:
    return tuple(tuple(range(m)) for m in dims)


@dataclass(frozen=True)
class BimatrixGame:
    """Two-player game with cell-aligned payoff grids."""

    u1: tuple[tuple[Fraction, ...], ...]
    u2: tuple[tuple[Fraction, ...], ...]
    # original action indices, kept after restriction; not part of equality
    labels: tuple[tuple[int, ...], ...] = field(default=None, compare=False, repr=False)

    def __post_init__(self):
        u1 = tuple(tuple(as_rational(v) for v in row) for row in self.u1)
        u2 = tuple(tuple(as_rational(v) for v in row) for row in self.u2)
        if not u1 or not u1[0]:
            raise GameError("bimatrix needs m1 >= 1 and m2 >= 1")
        m2 = len(u1[0])
        if any(len(row) != m2 for row in u1) or len(u2) != len(u1) or any(len(row) != m2 for row in u2):
            raise GameError("payoff grids must both be m1 x m2")
        object.__setattr__(self, "u1", u1)
        object.__setattr__(self, "u2", u2)
        if self.labels is None:
            object.__setattr__(self, "labels", _identity_labels((len(u1), m2)))

    @classmethod
    def from_pairs(cls, cells: Sequence[Sequence[Sequence]]) -> "BimatrixGame":
        """Build from a grid of outcome pairs, e.g. ``[[(3, 3), (0, 5)], ...]``."""
        u1 = [[pair[0] for pair in row] for row in cells]
        u2 = [[pair[1] for pair in row] for row in cells]
        return cls(u1, u2)

    @property
    def n_players(self) -> int:
        return 2

    @property
    def m1(self) -> int:
        return len(self.u1)

    @property
    def m2(self) -> int:
        return len(self.u1[0])

    @property
    def dims(self) -> tuple[int, int]:
        return (self.m1, self.m2)

    def outcome(self, cell: Sequence[int]) -> tuple[Fraction, Fraction]:
        i, j = cell
        return (self.u1[i][j], self.u2[i][j])

    def points(self) -> list[tuple[Fraction, Fraction]]:
        """Outcome points of all cells, row-major."""
        return [(self.u1[i][j], self.u2[i][j]) for i in range(self.m1) for j in range(self.m2)]

    def to_tensor(self) -> "TensorGame":
        return TensorGame(self.dims, [
            [v for row in self.u1 for v in row],
            [v for row in self.u2 for v in row],
        ], labels=self.labels)


@dataclass(frozen=True)
class TensorGame:
    """n-player game; each player's payoffs are stored flat, row-major with the
    last player's action varying fastest."""

    dims: tuple[int, ...]
    payoffs: tuple[tuple[Fraction, ...], ...]
    labels: tuple[tuple[int, ...], ...] = field(default=None, compare=False, repr=False)

    def __post_init__(self):
        dims = tuple(int(m) for m in self.dims)
        if len(dims) < 2:
            raise GameError("a tensor game needs at least two players")
        if any(m < 1 for m in dims):
            raise GameError(f"action counts must be >= 1, got {dims}")
        size = math.prod(dims)
        payoffs = tuple(tuple(as_rational(v) for v in flat) for flat in self.payoffs)
        if len(payoffs) != len(dims):
            raise GameError(f"expected {len(dims)} payoff tensors, got {len(payoffs)}")
        for i, flat in enumerate(payoffs):
            if len(flat) != size:
                raise GameError(f"player {i + 1}: expected {size} entries, got {len(flat)}")
        object.__setattr__(self, "dims", dims)
        object.__setattr__(self, "payoffs", payoffs)
        if self.labels is None:
            object.__setattr__(self, "labels", _identity_labels(dims))

    @property
    def n_players(self) -> int:
        return len(self.dims)

    def _offset(self, cell: Sequence[int]) -> int:
        k = 0
        for a, m in zip(cell, self.dims):
            k = k * m + a
        return k

    def outcome(self, cell: Sequence[int]) -> tuple[Fraction, ...]:
        k = self._offset(cell)
        return tuple(flat[k] for flat in self.payoffs)

    def cells(self) -> Iterator[tuple[int, ...]]:
        return itertools.product(*(range(m) for m in self.dims))


Game = Union[BimatrixGame, TensorGame]


@dataclass(frozen=True)
class MixedProfile:
    """One exact probability vector per player."""

    strategies: tuple[tuple[Fraction, ...], ...]

    def __post_init__(self):
        strategies = tuple(tuple(as_rational(v) for v in x) for x in self.strategies)
        for i, x in enumerate(strategies):
            if not x:
                raise GameError(f"player {i + 1} has an empty strategy")
            if any(v < 0 for v in x):
                raise GameError(f"player {i + 1} has a negative probability")
            if sum(x) != 1:
                raise GameError(f"player {i + 1}'s probabilities sum to {sum(x)}, not 1")
        object.__setattr__(self, "strategies", strategies)

    @classmethod
    def pure(cls, dims: Sequence[int], actions: Sequence[int]) -> "MixedProfile":
        return cls(tuple(
            tuple(Fraction(int(k == a)) for k in range(m)) for m, a in zip(dims, actions)
        ))

    @property
    def n_players(self) -> int:
        return len(self.strategies)

    @property
    def dims(self) -> tuple[int, ...]:
        return tuple(len(x) for x in self.strategies)

    def support(self) -> "SupportProfile":
        return SupportProfile(tuple(
            tuple(j for j, v in enumerate(x) if v > 0) for x in self.strategies
        ))

    def is_pure(self) -> bool:
        return all(sum(1 for v in x if v > 0) == 1 for x in self.strategies)

    def is_fully_mixed(self) -> bool:
        return all(all(v > 0 for v in x) for x in self.strategies)

    def replace(self, player: int, strategy: Sequence) -> "MixedProfile":
        s = list(self.strategies)
        s[player] = tuple(strategy)
        return MixedProfile(tuple(s))

    def __str__(self) -> str:
        return ";".join(",".join(str(v) for v in x) for x in self.strategies)


@dataclass(frozen=True)
class SupportProfile:
    """Sorted in-support action indices per player."""

    sets: tuple[tuple[int, ...], ...]

    def __post_init__(self):
        sets = tuple(tuple(int(a) for a in s) for s in self.sets)
        for i, s in enumerate(sets):
            if not s:
                raise GameError(f"player {i + 1} has an empty support")
            if any(b <= a for a, b in zip(s, s[1:])):
                raise GameError(f"player {i + 1}'s support is not strictly increasing: {s}")
        object.__setattr__(self, "sets", sets)

    def check(self, dims: Sequence[int]) -> None:
        if len(dims) != len(self.sets):
            raise GameError(f"support has {len(self.sets)} players, game has {len(dims)}")
        for i, (s, m) in enumerate(zip(self.sets, dims)):
            if s[0] < 0 or s[-1] >= m:
                raise GameError(f"player {i + 1}'s support {s} is out of range 0..{m - 1}")

    @property
    def sizes(self) -> tuple[int, ...]:
        return tuple(len(s) for s in self.sets)

    def embed(self, profile: MixedProfile, dims: Sequence[int]) -> MixedProfile:
        """Lift a profile of the restricted game back to the full game."""
        out = []
        for s, x, m in zip(self.sets, profile.strategies, dims):
            full = [Fraction(0)] * m
            for a, v in zip(s, x):
                full[a] = v
            out.append(tuple(full))
        return MixedProfile(tuple(out))

    def project(self, profile: MixedProfile) -> MixedProfile:
        """Drop out-of-support coordinates of a profile supported within self."""
        out = []
        for s, x in zip(self.sets, profile.strategies):
            if sum(x[a] for a in s) != 1:
                raise GameError("profile is not supported within the support profile")
            out.append(tuple(x[a] for a in s))
        return MixedProfile(tuple(out))


def _check_profile(game: Game, profile: MixedProfile) -> None:
    if tuple(profile.dims) != tuple(game.dims):
        raise GameError(f"profile dims {profile.dims} do not match game dims {tuple(game.dims)}")


def expected_payoff(game: Game, profile: MixedProfile) -> tuple[Fraction, ...]:
    """Exact expected payoff of every player under independent mixing."""
    _check_profile(game, profile)
    if isinstance(game, BimatrixGame):
        x1, x2 = profile.strategies
        v1 = v2 = Fraction(0)
        for i, p in enumerate(x1):
            if not p:
                continue
            r1, r2 = game.u1[i], game.u2[i]
            for j, q in enumerate(x2):
                if q:
                    w = p * q
                    v1 += w * r1[j]
                    v2 += w * r2[j]
        return (v1, v2)
    totals = [Fraction(0)] * game.n_players
    supports = profile.support().sets
    for cell in itertools.product(*supports):
        w = math.prod((profile.strategies[i][a] for i, a in enumerate(cell)), start=Fraction(1))
        for i, u in enumerate(game.outcome(cell)):
            totals[i] += w * u
    return tuple(totals)


def deviation_payoffs(game: Game, profile: MixedProfile, player: int) -> list[Fraction]:
    """Payoff of each pure action of ``player`` against the others' strategies."""
    _check_profile(game, profile)
    if isinstance(game, BimatrixGame):
        x1, x2 = profile.strategies
        if player == 0:
            return [sum((q * row[j] for j, q in enumerate(x2) if q), Fraction(0)) for row in game.u1]
        return [
            sum((p * game.u2[i][j] for i, p in enumerate(x1) if p), Fraction(0))
            for j in range(game.m2)
        ]
    others = [range(m) if i == player else profile.support().sets[i] for i, m in enumerate(game.dims)]
    out = [Fraction(0)] * game.dims[player]
    for cell in itertools.product(*others):
        w = math.prod(
            (profile.strategies[i][a] for i, a in enumerate(cell) if i != player), start=Fraction(1)
        )
        out[cell[player]] += w * game.payoffs[player][game._offset(cell)]
    return out


def restrict(game: Game, support: SupportProfile) -> Game:
    """Sub-game keeping only in-support actions; ``labels`` maps back to the
    original action indices."""
    support.check(game.dims)
    labels = tuple(tuple(game.labels[i][a] for a in s) for i, s in enumerate(support.sets))
    if isinstance(game, BimatrixGame):
        rows, cols = support.sets
        return BimatrixGame(
            tuple(tuple(game.u1[i][j] for j in cols) for i in rows),
            tuple(tuple(game.u2[i][j] for j in cols) for i in rows),
            labels=labels,
        )
    cells = list(itertools.product(*support.sets))
    payoffs = [[game.payoffs[p][game._offset(c)] for c in cells] for p in range(game.n_players)]
    return TensorGame(support.sizes, payoffs, labels=labels)


def normalize_to_zero(game: BimatrixGame, values: Sequence) -> BimatrixGame:
    """Shift each player's payoffs so that ``values`` becomes the origin."""
    a, b = (as_rational(v) for v in values)
    return BimatrixGame(
        tuple(tuple(v - a for v in row) for row in game.u1),
        tuple(tuple(v - b for v in row) for row in game.u2),
        labels=game.labels,
    )


def pure_profiles(dims: Iterable[int]) -> Iterator[tuple[int, ...]]:
    """All pure profiles in lexicographic order of action indices."""
    return itertools.product(*(range(m) for m in dims))

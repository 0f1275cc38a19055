"""Seeded experiments: runtime of ``find_sne`` on perturbed random games and
how often strong equilibria involve mixing.

Randomness comes from counter-based Philox streams keyed by
``(seed ^ trial, m1 << 16 | m2)``, so any trial can be regenerated on its own
and the order in which trials run does not matter.
"""
from __future__ import annotations

import csv
import gc
import io
import itertools
import statistics
import time
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Sequence

import numpy as np

from . import nra
from .engine import (
    SNE,
    KStrongQuery,
    NonExistence,
    UndeterminedOutcome,
    find_sne,
    full_support_candidates,
    indifference_system,
    verify_k_strong,
)
from .game import BimatrixGame, Game, GameError, MixedProfile, TensorGame, as_rational
from .nash import enumerate_pure_nash
from .pareto import SearchParams

_MASK64 = (1 << 64) - 1


@dataclass(frozen=True)
class PerturbSpec:
    """Uniform perturbation on the grain ``1/grain`` within ``[-sigma, sigma]``."""

    sigma: Fraction = Fraction(1, 10)
    grain: int = 1_000_000
    seed: int = 0

    def __post_init__(self):
        sigma = as_rational(self.sigma)
        if sigma < 0:
            raise GameError("sigma must be nonnegative")
        if int(self.grain) < 1:
            raise GameError("grain must be >= 1")
        object.__setattr__(self, "sigma", sigma)
        object.__setattr__(self, "grain", int(self.grain))

    @property
    def max_step(self) -> int:
        return int(self.sigma * self.grain)   # floor, sigma >= 0


def stream(seed: int, trial: int = 0, tag: int = 0) -> np.random.Generator:
    key = np.array([(seed ^ trial) & _MASK64, tag & _MASK64], dtype=np.uint64)
    return np.random.Generator(np.random.Philox(key=key))


def _noise(rng: np.random.Generator, count: int, spec: PerturbSpec) -> list[Fraction]:
    K = spec.max_step
    ks = rng.integers(-K, K + 1, size=count) if K else np.zeros(count, dtype=np.int64)
    return [Fraction(int(k), spec.grain) for k in ks]


def perturb(game: Game, spec: PerturbSpec, rng: np.random.Generator | None = None) -> Game:
    """Add independent grain-aligned noise to every payoff entry, player by
    player in row-major order."""
    rng = rng if rng is not None else stream(spec.seed)
    if isinstance(game, BimatrixGame):
        size = game.m1 * game.m2
        out = []
        for grid in (game.u1, game.u2):
            noise = iter(_noise(rng, size, spec))
            out.append(tuple(tuple(v + next(noise) for v in row) for row in grid))
        return BimatrixGame(out[0], out[1], labels=game.labels)
    flat = []
    for table in game.payoffs:
        noise = _noise(rng, len(table), spec)
        flat.append(tuple(v + e for v, e in zip(table, noise)))
    return TensorGame(game.dims, flat, labels=game.labels)


def random_game(dims: Sequence[int], rng: np.random.Generator, low: int = -10, high: int = 10) -> Game:
    """Integer payoffs drawn uniformly from ``[low, high]``."""
    dims = tuple(dims)
    size = int(np.prod(dims))
    tables = [[int(v) for v in rng.integers(low, high + 1, size=size)] for _ in dims]
    if len(dims) == 2:
        m1, m2 = dims
        return BimatrixGame(
            tuple(tuple(tables[0][i * m2:(i + 1) * m2]) for i in range(m1)),
            tuple(tuple(tables[1][i * m2:(i + 1) * m2]) for i in range(m1)),
        )
    return TensorGame(dims, tables)


def trial_game(dims: Sequence[int], trial: int, spec: PerturbSpec, base: Game | str = "random") -> Game:
    """The game of one trial: base game (random, zero or given) plus noise."""
    dims = tuple(dims)
    tag = (dims[0] << 16) | dims[1] if len(dims) == 2 else sum(m << (8 * k) for k, m in enumerate(dims))
    rng = stream(spec.seed, trial, tag)
    if isinstance(base, str):
        if base == "random":
            base = random_game(dims, rng)
        elif base == "zero":
            zero = [[0] * dims[1] for _ in range(dims[0])]
            base = BimatrixGame(zero, zero) if len(dims) == 2 else TensorGame(dims, [[0] * int(np.prod(dims))] * len(dims))
        else:
            raise GameError(f"unknown base {base!r}")
    return perturb(base, spec, rng)


@dataclass
class BenchStats:
    m1: int
    m2: int
    trials: int = 0
    times_us: list = field(default_factory=list, repr=False)
    pure_sne: int = 0
    mixed_sne: int = 0
    nonexistence: int = 0
    undetermined: int = 0
    cond1_hits: int = 0
    cond2_hits: int = 0
    mixed_branch_runs: int = 0
    anomalies: list = field(default_factory=list, repr=False)

    @property
    def mean_us(self) -> float:
        return statistics.fmean(self.times_us) if self.times_us else 0.0

    @property
    def median_us(self) -> float:
        return statistics.median(self.times_us) if self.times_us else 0.0

    @property
    def max_us(self) -> float:
        return max(self.times_us) if self.times_us else 0.0


CSV_HEADER = (
    "m1", "m2", "trials", "mean_us", "median_us", "max_us", "pure_sne", "mixed_sne",
    "nonexistence", "undetermined", "cond1_hits", "cond2_hits", "mixed_branch_runs",
)


def run_smoothed_bench(sizes: Sequence[tuple[int, int]], trials: int, spec: PerturbSpec,
                       base: Game | str = "random", params: SearchParams | None = None,
                       mode: str = "strong") -> list[BenchStats]:
    """Run ``find_sne`` on ``trials`` perturbed games per size.

    Any trial that triggers a geometric gate or the mixed branch is kept in
    ``anomalies`` with its game, for inspection.
    """
    if trials < 1:
        raise GameError("trials must be >= 1")
    out = [BenchStats(m1, m2) for m1, m2 in sizes]
    # sizes run round-robin within each trial so slow spells on the host
    # spread over all sizes instead of inflating one of them
    for trial in range(trials):
        for stats in out:
            game = trial_game((stats.m1, stats.m2), trial, spec, base)
            # as in timeit, keep collector pauses out of the measurement
            gc_was_enabled = gc.isenabled()
            gc.disable()
            try:
                t0 = time.perf_counter()
                report = find_sne(game, mode, params)
                stats.times_us.append((time.perf_counter() - t0) * 1e6)
            finally:
                if gc_was_enabled:
                    gc.enable()
            stats.trials += 1
            d = report.diagnostics
            outcome = report.outcome
            if isinstance(outcome, SNE):
                if outcome.witness.profile.is_pure():
                    stats.pure_sne += 1
                else:
                    stats.mixed_sne += 1
            elif isinstance(outcome, NonExistence):
                stats.nonexistence += 1
            elif isinstance(outcome, UndeterminedOutcome):
                stats.undetermined += 1
            stats.cond1_hits += d.condition1_hit
            stats.cond2_hits += d.condition2_hit
            stats.mixed_branch_runs += d.mixed_branch_run
            if d.condition1_hit or d.condition2_hit or d.mixed_branch_run:
                stats.anomalies.append((trial, game))
    return out


def write_csv(stats: Sequence[BenchStats], fh=None, timing: bool = True) -> str:
    """CSV with one row per size.  ``timing=False`` zeroes the wall-clock
    columns so the file depends on the seed alone."""
    buf = io.StringIO()
    w = csv.writer(buf, lineterminator="\n")
    w.writerow(CSV_HEADER)
    for s in stats:
        t = (f"{s.mean_us:.1f}", f"{s.median_us:.1f}", f"{s.max_us:.1f}") if timing else ("0", "0", "0")
        w.writerow([s.m1, s.m2, s.trials, *t, s.pure_sne, s.mixed_sne, s.nonexistence,
                    s.undetermined, s.cond1_hits, s.cond2_hits, s.mixed_branch_runs])
    text = buf.getvalue()
    if fh is not None:
        fh.write(text)
    return text


def polynomial_fit(xs: Sequence[float], ys: Sequence[float], degree: int = 3):
    """Least-squares fit in relative error (weights 1/y); returns
    (coefficients, relative residuals)."""
    xs, ys = np.asarray(xs, float), np.asarray(ys, float)
    deg = min(degree, len(xs) - 1)
    coef = np.polyfit(xs, ys, deg, w=1 / ys)
    resid = np.abs(np.polyval(coef, xs) - ys) / ys
    return coef, resid


@dataclass
class GenericitySummary:
    trials: int = 0
    with_sne: int = 0
    mixed_hits: int = 0
    undetermined: int = 0
    unverified_candidates: int = 0
    audit: list = field(default_factory=list, repr=False)

    @property
    def mixed_fraction(self) -> float:
        return self.mixed_hits / self.trials if self.trials else 0.0


def _candidate_is_pair_strong(game: TensorGame, cand, params: SearchParams) -> str:
    """'yes', 'no' or 'unknown' for 2-strength of a fully mixed candidate."""
    if cand.profile is not None:
        res = verify_k_strong(KStrongQuery(game, cand.profile, 2, "strong", params))
        return {"Efficient": "yes", "Dominated": "no"}.get(res.overall, "unknown")
    xs, eqs = indifference_system(game)
    any_unknown = False
    for pair in itertools.combinations(range(3), 2):
        status = nra.algebraic_pair_domination(
            game.payoffs, eqs, xs, cand.approx, pair, True, cand.pins, params.nlsat_timeout_ms,
        )
        if status == nra.SAT:
            return "no"
        any_unknown |= status != nra.UNSAT
    return "unknown" if any_unknown else "yes"


def run_genericity_experiment(n: int, dims: Sequence[int], trials: int, spec: PerturbSpec | None,
                              base: Game | str = "random",
                              params: SearchParams | None = None) -> GenericitySummary:
    """Fraction of trials whose strong (n = 2) or 2-strong (n = 3, 2x2x2)
    equilibria involve mixing.  ``spec=None`` leaves ``base`` unperturbed."""
    dims = tuple(dims)
    if len(dims) != n:
        raise GameError(f"dims {dims} do not describe {n} players")
    params = params or SearchParams()
    summary = GenericitySummary()
    for trial in range(trials):
        if spec is None:
            if isinstance(base, str):
                raise GameError("an unperturbed run needs an explicit base game")
            game = base
        else:
            game = trial_game(dims, trial, spec, base)
        summary.trials += 1
        if n == 2:
            report = find_sne(game, "strong", params)
            outcome = report.outcome
            if isinstance(outcome, SNE):
                summary.with_sne += 1
                if not outcome.witness.profile.is_pure():
                    summary.mixed_hits += 1
                    summary.audit.append((trial, game, outcome.witness.profile))
            elif isinstance(outcome, UndeterminedOutcome):
                summary.undetermined += 1
            continue
        if dims != (2, 2, 2):
            raise GameError("three-player genericity runs are limited to 2x2x2 games")
        found_pure = any(
            verify_k_strong(KStrongQuery(game, MixedProfile.pure(dims, cell), 2, "strong", params)).holds
            for cell in enumerate_pure_nash(game)
        )
        mixed = []
        for cand in full_support_candidates(game):
            verdict = _candidate_is_pair_strong(game, cand, params)
            if verdict == "yes":
                mixed.append(cand)
            elif verdict == "unknown":
                summary.unverified_candidates += 1
        if found_pure or mixed:
            summary.with_sne += 1
        if mixed:
            summary.mixed_hits += 1
            summary.audit.append((trial, game, mixed[0].profile or mixed[0].approx))
    return summary

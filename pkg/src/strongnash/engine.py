"""Strong and super strong equilibrium search for bimatrix games, and
k-strong verification of given profiles in n-player games.

``find_sne`` first scans pure profiles; the mixed support enumeration only
runs when one of the two geometric gates holds, since without them no fully
mixed strong equilibrium can exist on any support.
"""
from __future__ import annotations

import itertools
import time
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Union

from .game import BimatrixGame, Game, GameError, MixedProfile, expected_payoff, restrict
from .geometry import Condition1Witness, Condition2Witness, condition1, condition2, theorem1_report
from .nash import NashWitness, is_nash, is_pure_nash, nash_on_support, supports_by_size
from .pareto import (
    STRICT,
    WEAK,
    Coalition,
    Dominated,
    Efficient,
    EfficiencyVerdict,
    SearchParams,
    Undetermined,
    coalition_efficiency,
    two_coalition_exact_2x2,
)

STRONG = "strong"
SUPER = "super"

_PARETO_MODE = {STRONG: WEAK, SUPER: STRICT, WEAK: WEAK, STRICT: STRICT}


def pareto_mode(mode: str) -> str:
    """Map ``strong``/``super`` (or ``weak``/``strict``) to a Pareto query mode."""
    try:
        return _PARETO_MODE[mode]
    except KeyError:
        raise GameError(f"mode must be 'strong' or 'super', got {mode!r}") from None


@dataclass
class Diagnostics:
    pure_profiles_scanned: int = 0
    pure_nash_found: int = 0
    condition1_hit: bool = False
    condition1_witness: Condition1Witness | None = None
    condition2_hit: bool = False
    condition2_witness: Condition2Witness | None = None
    mixed_branch_run: bool = False
    supports_enumerated: int = 0
    support_equilibria: int = 0
    theorem1_rejections: int = 0
    elapsed_s: float = 0.0


@dataclass(frozen=True)
class SNE:
    witness: NashWitness
    efficiency: dict
    tag = "SNE"


@dataclass(frozen=True)
class NonExistence:
    tag = "NonExistence"


@dataclass(frozen=True)
class UndeterminedOutcome:
    candidates: tuple
    tag = "Undetermined"


Outcome = Union[SNE, NonExistence, UndeterminedOutcome]


@dataclass
class SolveReport:
    outcome: Outcome
    mode: str
    diagnostics: Diagnostics = field(default_factory=Diagnostics)

    @property
    def tag(self) -> str:
        return self.outcome.tag


def _grand_verdicts(verdict: EfficiencyVerdict) -> dict:
    # singletons hold at any Nash equilibrium
    return {(0,): Efficient("best-response"), (1,): Efficient("best-response"), (0, 1): verdict}


def find_sne(game: BimatrixGame, mode: str = STRONG, params: SearchParams | None = None) -> SolveReport:
    """Find a strong (``mode='strong'``) or super strong (``'super'``) Nash
    equilibrium of a bimatrix game.

    Returns the first hit in a fixed order: pure profiles lexicographically,
    then supports by total size and lexicographically.  Mixed candidates must
    satisfy the line condition on their restricted game before the full-game
    grand coalition check runs.
    """
    if not isinstance(game, BimatrixGame):
        raise GameError("find_sne handles two-player games only; use verify_k_strong for n >= 3")
    pmode = pareto_mode(mode)
    params = params or SearchParams()
    diag = Diagnostics()
    start = time.perf_counter()
    undecided = []

    def done(outcome):
        diag.elapsed_s = time.perf_counter() - start
        return SolveReport(outcome, mode, diag)

    for cell in itertools.product(range(game.m1), range(game.m2)):
        diag.pure_profiles_scanned += 1
        if not is_pure_nash(game, cell):
            continue
        diag.pure_nash_found += 1
        profile = MixedProfile.pure(game.dims, cell)
        verdict = coalition_efficiency(game, profile, (0, 1), pmode, params)
        witness = NashWitness(profile, game.outcome(cell), profile.support())
        if isinstance(verdict, Efficient):
            return done(SNE(witness, _grand_verdicts(verdict)))
        if isinstance(verdict, Undetermined):
            undecided.append((witness, verdict))

    c1, c2 = condition1(game), condition2(game)
    diag.condition1_hit, diag.condition1_witness = c1 is not None, c1
    diag.condition2_hit, diag.condition2_witness = c2 is not None, c2
    if c1 is None and c2 is None:
        return done(UndeterminedOutcome(tuple(undecided)) if undecided else NonExistence())

    diag.mixed_branch_run = True
    for support in supports_by_size(game.dims, include_pure=False):
        diag.supports_enumerated += 1
        witness = nash_on_support(game, support)
        if witness is None:
            continue
        diag.support_equilibria += 1
        sub = restrict(game, support)
        report = theorem1_report(sub, support.project(witness.profile))
        if not (report.super_condition if pmode == STRICT else report.strong_condition):
            diag.theorem1_rejections += 1
            continue
        verdict = coalition_efficiency(game, witness.profile, (0, 1), pmode, params)
        if isinstance(verdict, Efficient):
            return done(SNE(witness, _grand_verdicts(verdict)))
        if isinstance(verdict, Undetermined):
            undecided.append((witness, verdict))
    return done(UndeterminedOutcome(tuple(undecided)) if undecided else NonExistence())


@dataclass(frozen=True)
class KStrongQuery:
    game: Game
    profile: MixedProfile
    k: int
    mode: str = STRONG
    params: SearchParams = field(default_factory=SearchParams)

    def __post_init__(self):
        if not 1 <= self.k <= self.game.n_players:
            raise GameError(f"k must be between 1 and {self.game.n_players}, got {self.k}")
        pareto_mode(self.mode)
        if tuple(self.profile.dims) != tuple(self.game.dims):
            raise GameError(f"profile dims {self.profile.dims} do not match game dims {tuple(self.game.dims)}")


EFFICIENT, DOMINATED, UNDETERMINED, NOT_NASH = "Efficient", "Dominated", "Undetermined", "NotNash"


@dataclass(frozen=True)
class KStrongResult:
    is_nash: bool
    values: tuple[Fraction, ...]
    verdicts: dict
    overall: str

    @property
    def holds(self) -> bool:
        return self.overall == EFFICIENT


def verify_k_strong(query: KStrongQuery) -> KStrongResult:
    """Check Nash plus efficiency for every coalition of size 2..k.

    Two-member coalitions of two-action players get the exact bilinear
    decision; the others go through the tiered verdict.  ``overall`` is
    ``NotNash``, ``Dominated`` if any coalition is refuted, else
    ``Undetermined`` if any is open, else ``Efficient``.
    """
    game, profile = query.game, query.profile
    pmode = pareto_mode(query.mode)
    values = expected_payoff(game, profile)
    if not is_nash(game, profile):
        return KStrongResult(False, values, {}, NOT_NASH)
    verdicts = {}
    for size in range(2, query.k + 1):
        for members in itertools.combinations(range(game.n_players), size):
            if size == 2 and all(game.dims[i] == 2 for i in members):
                verdicts[members] = two_coalition_exact_2x2(game, profile, members, pmode)
            else:
                verdicts[members] = coalition_efficiency(game, profile, Coalition(members), pmode, query.params)
    kinds = {type(v) for v in verdicts.values()}
    overall = DOMINATED if Dominated in kinds else UNDETERMINED if Undetermined in kinds else EFFICIENT
    return KStrongResult(True, values, verdicts, overall)


def dominated_outcome_witness(game: Game, profile: MixedProfile):
    """First supported pure outcome (lexicographic) whose payoffs are all
    strictly below the profile's values, as ``(cell, payoff)``, or None."""
    values = expected_payoff(game, profile)
    for cell in itertools.product(*profile.support().sets):
        out = game.outcome(cell)
        if all(a < b for a, b in zip(out, values)):
            return cell, out
    return None


__all__ = [
    "STRONG", "SUPER", "Diagnostics", "SNE", "NonExistence", "UndeterminedOutcome", "SolveReport",
    "find_sne", "KStrongQuery", "KStrongResult", "verify_k_strong", "dominated_outcome_witness",
    "pareto_mode", "FullSupportCandidate", "indifference_system", "full_support_candidates",
]


@dataclass(frozen=True)
class FullSupportCandidate:
    """A fully mixed equilibrium of a 2x2x2 game.  ``profile`` is set when
    the probabilities are rational; otherwise ``approx`` locates the point
    and ``equations`` define it exactly."""

    profile: MixedProfile | None
    approx: tuple[float, float, float]
    pins: dict


_FAMILY_SAMPLES = (Fraction(1, 2), Fraction(1, 3), Fraction(2, 3), Fraction(1, 4), Fraction(3, 4))


def indifference_system(game: Game):
    """Sympy symbols ``x0, x1, x2`` (probability of action 0) and the three
    indifference polynomials of a 2x2x2 game."""
    import sympy

    if tuple(game.dims) != (2, 2, 2):
        raise GameError("indifference_system needs a 2x2x2 game")
    xs = sympy.symbols("x0 x1 x2")
    weight = lambda k, a: xs[k] if a == 0 else 1 - xs[k]  # noqa: E731
    eqs = []
    for i in range(3):
        diff = 0
        for cell in itertools.product((0, 1), repeat=3):
            w = 1 if cell[i] == 0 else -1
            for k in range(3):
                if k != i:
                    w = w * weight(k, cell[k])
            diff += w * sympy.Rational(game.outcome(cell)[i])
        eqs.append(sympy.expand(diff))
    return xs, eqs


def full_support_candidates(game: Game) -> list[FullSupportCandidate]:
    """Solve the indifference system of a 2x2x2 game for fully mixed
    equilibria.  One-parameter families are sampled at a few rational
    parameter values."""
    import sympy

    xs, eqs = indifference_system(game)
    out = []
    for sol in sympy.solve(eqs, xs, dict=True):
        free = sorted(set().union(*(sympy.sympify(v).free_symbols for v in sol.values())) | (set(xs) - set(sol)), key=str)
        samples = [dict()] if not free else [
            dict(zip(free, combo)) for combo in itertools.product(_FAMILY_SAMPLES, repeat=len(free))
        ]
        for pins in samples:
            point = []
            for x in xs:
                expr = sympy.sympify(sol.get(x, x)).subs({k: sympy.Rational(v) for k, v in pins.items()})
                point.append(expr if expr.is_number else None)
            if any(v is None or not v.is_real for v in point):
                continue
            if not all(0 < v < 1 for v in point):
                continue
            approx = tuple(float(v) for v in point)
            if all(v.is_Rational for v in point):
                probs = [Fraction(int(v.p), int(v.q)) for v in point]
                profile = MixedProfile(tuple((p, 1 - p) for p in probs))
                out.append(FullSupportCandidate(profile, approx, {k: Fraction(v) for k, v in pins.items()}))
            else:
                out.append(FullSupportCandidate(None, approx, {k: Fraction(v) for k, v in pins.items()}))
    return out

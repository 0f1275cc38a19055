"""Exact strong Nash equilibrium toolkit.

Rational-arithmetic models of bimatrix and n-player games, equilibrium
search, coalition Pareto analysis and the experiments built on them.
"""
from .engine import KStrongQuery, dominated_outcome_witness, find_sne, verify_k_strong
from .game import BimatrixGame, GameError, MixedProfile, SupportProfile, TensorGame, expected_payoff
from .gamefile import ParseError, load_game, parse_game, parse_profile, serialize_game
from .pareto import STRICT, WEAK, Coalition, SearchParams, coalition_efficiency

__all__ = [
    "BimatrixGame", "TensorGame", "MixedProfile", "SupportProfile", "GameError", "ParseError",
    "expected_payoff", "parse_game", "load_game", "parse_profile", "serialize_game",
    "WEAK", "STRICT", "Coalition", "SearchParams", "coalition_efficiency",
    "find_sne", "KStrongQuery", "verify_k_strong", "dominated_outcome_witness",
]

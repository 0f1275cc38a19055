"""Exact nonlinear real arithmetic for coalitions of more than two scalars.

Wraps z3's nlsat procedure, which decides polynomial sign systems over the
reals exactly.  Used where the planar bilinear analysis no longer applies:
three two-action deviators, and deviations from equilibria whose
probabilities are algebraic rather than rational.
"""
from __future__ import annotations

import itertools
from dataclasses import dataclass
from fractions import Fraction
from typing import Mapping, Sequence

import z3

SAT, UNSAT, UNKNOWN = "sat", "unsat", "unknown"


def _q(x) -> z3.ArithRef:
    x = Fraction(x)
    return z3.RealVal(f"{x.numerator}/{x.denominator}")


def multilinear(F: Mapping[tuple[int, ...], object], probs: Sequence) -> object:
    """Expected value of a table over binary action tuples, where ``probs[k]``
    is the probability of action 0 for the k-th deviator."""
    total = 0
    for cell, value in F.items():
        w = 1
        for a, x in zip(cell, probs):
            w = w * (x if a == 0 else 1 - x)
        total = total + w * value
    return total


def _domination(payoffs, values, strict):
    gaps = [f - v for f, v in zip(payoffs, values)]
    if strict:
        return [g > 0 for g in gaps]
    return [g >= 0 for g in gaps] + [z3.Or(*[g > 0 for g in gaps])]


def _rational_model(model, xs) -> list[Fraction] | None:
    out = []
    for x in xs:
        val = model.eval(x, model_completion=True)
        if not z3.is_rational_value(val):
            return None
        out.append(Fraction(val.numerator_as_long(), val.denominator_as_long()))
    return out


@dataclass(frozen=True)
class NraResult:
    status: str
    point: tuple[Fraction, ...] | None = None


def binary_domination(
    tables: Sequence[Mapping[tuple[int, ...], Fraction]],
    values: Sequence[Fraction],
    strict: bool,
    timeout_ms: int = 20000,
) -> NraResult:
    """Is there a product of two-action mixtures whose payoffs dominate?

    ``tables[i]`` maps each joint binary action of the deviators to deviator
    i's payoff.  ``strict`` asks for ``>>`` domination, otherwise ``>``.
    A ``sat`` answer carries a rational witness when z3's model is rational;
    algebraic models leave ``point`` as None.
    """
    k = len(next(iter(tables[0])))
    xs = [z3.Real(f"x{i}") for i in range(k)]
    payoffs = [multilinear({c: _q(v) for c, v in t.items()}, xs) for t in tables]
    s = z3.SolverFor("QF_NRA")
    s.set(timeout=timeout_ms)
    for x in xs:
        s.add(x >= 0, x <= 1)
    s.add(*_domination(payoffs, [_q(v) for v in values], strict))
    res = s.check()
    if res == z3.unsat:
        return NraResult(UNSAT)
    if res == z3.sat:
        pt = _rational_model(s.model(), xs)
        return NraResult(SAT, tuple(pt) if pt is not None else None)
    return NraResult(UNKNOWN)


def _z3_poly(expr_sympy, symbols, zvars):
    """Convert a sympy polynomial with rational coefficients to z3."""
    import sympy

    poly = sympy.Poly(sympy.expand(expr_sympy), *symbols)
    total = 0
    for monom, coeff in poly.terms():
        term = _q(Fraction(int(coeff.p), int(coeff.q)))
        for z, e in zip(zvars, monom):
            for _ in range(e):
                term = term * z
        total = total + term
    return total


def algebraic_pair_domination(
    tables: Sequence[Sequence[Fraction]],
    equations: Sequence,
    symbols: Sequence,
    approx: Sequence[float],
    coalition: tuple[int, int],
    strict: bool,
    pins: Mapping = None,
    timeout_ms: int = 20000,
) -> str:
    """Decide coalition domination at an equilibrium given only implicitly.

    The equilibrium of a 2x2x2 game is the unique solution of ``equations``
    (sympy polynomials in ``symbols``, one probability of action 0 per player)
    inside a small box around ``approx``; optional ``pins`` fix parameters of
    a non-isolated family exactly.  ``tables[i]`` is player i's flat payoff
    tensor (last player fastest).  Returns SAT (dominated), UNSAT (efficient)
    or UNKNOWN (box not isolating, or solver timeout).
    """
    zx = [z3.Real(f"x{i}") for i in range(3)]
    eqs = [_z3_poly(e, symbols, zx) == 0 for e in equations]
    pins = pins or {}
    for sym, val in pins.items():
        eqs.append(zx[list(symbols).index(sym)] == _q(val))
    # isolating box
    eps = Fraction(1, 10 ** 9)
    box = []
    for z, a in zip(zx, approx):
        c = Fraction(a).limit_denominator(10 ** 15)
        box += [z > c - eps, z < c + eps]

    # isolation check: no second solution inside the box
    zy = [z3.Real(f"y{i}") for i in range(3)]
    s = z3.SolverFor("QF_NRA")
    s.set(timeout=timeout_ms)
    s.add(*eqs, *box)
    s.add(*[z3.substitute(e, *zip(zx, zy)) for e in eqs + box])
    s.add(z3.Or(*[a != b for a, b in zip(zx, zy)]))
    if s.check() != z3.unsat:
        return UNKNOWN

    F = [{cell: _q(t[n]) for n, cell in enumerate(itertools.product((0, 1), repeat=3))} for t in tables]
    values = [multilinear(F[i], zx) for i in coalition]
    fixed = [k for k in range(3) if k not in coalition]
    dev = [z3.Real("d0"), z3.Real("d1")]
    probs = list(zx)
    for k, d in zip(coalition, dev):
        probs[k] = d
    payoffs = [multilinear(F[i], probs) for i in coalition]
    s = z3.SolverFor("QF_NRA")
    s.set(timeout=timeout_ms)
    s.add(*eqs, *box)
    for d in dev:
        s.add(d >= 0, d <= 1)
    s.add(*_domination(payoffs, values, strict))
    assert len(fixed) == 1
    res = s.check()
    return SAT if res == z3.sat else UNSAT if res == z3.unsat else UNKNOWN


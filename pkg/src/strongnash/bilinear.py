"""Exact feasibility of bilinear sign systems on the unit square.

A constraint is ``g(p, q) = a*p*q + b*p + c*q + d`` together with a flag
saying whether ``g > 0`` or ``g >= 0`` is required; ``p`` and ``q`` range
over ``[0, 1]``.

Writing ``g = alpha(p) * q + beta(p)`` with ``alpha, beta`` affine in ``p``,
the set of admissible ``q`` at a fixed ``p`` is an interval whose end points
are ``0``, ``1`` or ``-beta_i/alpha_i``.  Which of these bind, and how they
are ordered, depends only on the signs of ``alpha_i``, ``beta_i``,
``alpha_i + beta_i`` and ``beta_i*alpha_j - beta_j*alpha_i``.  Between
consecutive roots of those polynomials the answer is constant, so testing
every root and one rational point per open cell decides the system.  Roots
are rational or quadratic surds; surds are evaluated exactly in
``Q(sqrt(D))``.
"""
from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from typing import Sequence, Union


def _rational_sqrt(x: Fraction) -> Fraction | None:
    if x < 0:
        return None
    n, d = x.numerator, x.denominator
    rn, rd = math.isqrt(n), math.isqrt(d)
    if rn * rn == n and rd * rd == d:
        return Fraction(rn, rd)
    return None


@dataclass(frozen=True)
class QuadSurd:
    """``a + b*sqrt(d)`` with ``d`` a positive non-square rational."""

    a: Fraction
    b: Fraction
    d: Fraction

    def _lift(self, other) -> "QuadSurd":
        if isinstance(other, QuadSurd):
            if other.d != self.d:
                raise ValueError("mixing surds of different fields")
            return other
        return QuadSurd(Fraction(other), Fraction(0), self.d)

    def __add__(self, other):
        o = self._lift(other)
        return QuadSurd(self.a + o.a, self.b + o.b, self.d)

    __radd__ = __add__

    def __neg__(self):
        return QuadSurd(-self.a, -self.b, self.d)

    def __sub__(self, other):
        return self + (-self._lift(other))

    def __rsub__(self, other):
        return self._lift(other) - self

    def __mul__(self, other):
        o = self._lift(other)
        return QuadSurd(self.a * o.a + self.b * o.b * self.d, self.a * o.b + self.b * o.a, self.d)

    __rmul__ = __mul__

    def __truediv__(self, other):
        o = self._lift(other)
        norm = o.a * o.a - o.b * o.b * self.d
        if norm == 0:
            raise ZeroDivisionError("division by zero surd")
        conj = QuadSurd(o.a / norm, -o.b / norm, self.d)
        return self * conj

    def __rtruediv__(self, other):
        return self._lift(other) / self

    def sign(self) -> int:
        sa = (self.a > 0) - (self.a < 0)
        sb = (self.b > 0) - (self.b < 0)
        if sb == 0:
            return sa
        if sa == 0 or sa == sb:
            return sb
        # opposite signs: compare a^2 with b^2 d
        diff = self.a * self.a - self.b * self.b * self.d
        return sa if diff > 0 else sb

    def __float__(self):
        return float(self.a) + float(self.b) * math.sqrt(self.d)

    def _cmp(self, other) -> int:
        return (self - other).sign()

    def __lt__(self, other):
        return self._cmp(other) < 0

    def __le__(self, other):
        return self._cmp(other) <= 0

    def __gt__(self, other):
        return self._cmp(other) > 0

    def __ge__(self, other):
        return self._cmp(other) >= 0

    def __eq__(self, other):
        if isinstance(other, (QuadSurd, Fraction, int)):
            return self._cmp(other) == 0
        return NotImplemented

    def __hash__(self):
        return hash((self.a, self.b, self.d))


Number = Union[Fraction, QuadSurd]


def sign(x: Number) -> int:
    if isinstance(x, QuadSurd):
        return x.sign()
    return (x > 0) - (x < 0)


@dataclass(frozen=True)
class Bilinear:
    """``a*p*q + b*p + c*q + d``."""

    a: Fraction
    b: Fraction
    c: Fraction
    d: Fraction

    def __call__(self, p, q):
        return self.a * p * q + self.b * p + self.c * q + self.d

    def shift(self, k) -> "Bilinear":
        return Bilinear(self.a, self.b, self.c, self.d - Fraction(k))

    @classmethod
    def from_corners(cls, f00, f01, f10, f11) -> "Bilinear":
        """Interpolant with ``f(1,1)=f00, f(1,0)=f01, f(0,1)=f10, f(0,0)=f11``:
        ``p`` weights the first row action, ``q`` the first column action."""
        f00, f01, f10, f11 = (Fraction(v) for v in (f00, f01, f10, f11))
        return cls(f00 - f01 - f10 + f11, f01 - f11, f10 - f11, f11)


Constraint = tuple[Bilinear, bool]   # (g, strict)


class _Root:
    """A critical abscissa: exact value plus a rational isolating interval."""

    def __init__(self, value: Number, key, lo: Fraction, hi: Fraction, poly=None):
        self.value, self.key, self.lo, self.hi, self.poly = value, key, lo, hi, poly

    def refine(self) -> None:
        A, B, C = self.poly
        mid = (self.lo + self.hi) / 2
        f = lambda x: (A * x + B) * x + C  # noqa: E731
        if f(mid) == 0:   # cannot happen for an irrational root, kept for safety
            self.lo = self.hi = mid
        elif (f(self.lo) > 0) == (f(mid) > 0):
            self.lo = mid
        else:
            self.hi = mid


def _linear_roots(k1: Fraction, k0: Fraction) -> list[Fraction]:
    if k1 == 0:
        return []
    return [-k0 / k1]


def _quadratic_roots(A: Fraction, B: Fraction, C: Fraction) -> list[_Root]:
    if A == 0:
        return [_Root(r, r, r, r) for r in _linear_roots(B, C)]
    disc = B * B - 4 * A * C
    if disc < 0:
        return []
    s = _rational_sqrt(disc)
    if s is not None:
        return [_Root(r, r, r, r) for r in {(-B + s) / (2 * A), (-B - s) / (2 * A)}]
    # normalise so the leading coefficient is 1: same root -> same key
    b, c = B / A, C / A
    vertex = -b / 2
    half = Fraction(1, 2)
    out = []
    for sgn in (1, -1):
        value = QuadSurd(vertex, sgn * half, b * b - 4 * c)
        # isolating interval: between the vertex and a bound on |root|
        bound = abs(vertex) + 1 + abs(c) + abs(b)
        lo, hi = (vertex, bound) if sgn > 0 else (-bound, vertex)
        out.append(_Root(value, ("surd", b, c, sgn), lo, hi, (Fraction(1), b, c)))
    return out


def _critical_points(cons: Sequence[Constraint]) -> list[_Root]:
    roots: list[_Root] = []
    parts = []
    for g, _ in cons:
        # alpha(p) = a p + c ; beta(p) = b p + d
        parts.append(((g.a, g.c), (g.b, g.d)))
        for k1, k0 in ((g.a, g.c), (g.b, g.d), (g.a + g.b, g.c + g.d)):
            roots.extend(_Root(r, r, r, r) for r in _linear_roots(k1, k0))
    for i in range(len(parts)):
        (ai, ci), (bi, di) = parts[i]
        for j in range(i + 1, len(parts)):
            (aj, cj), (bj, dj) = parts[j]
            A = bi * aj - bj * ai
            B = bi * cj + di * aj - bj * ci - dj * ai
            C = di * cj - dj * ci
            if A == B == C == 0:
                continue
            roots.extend(_quadratic_roots(A, B, C))
    roots.extend([_Root(Fraction(0), Fraction(0), Fraction(0), Fraction(0)),
                  _Root(Fraction(1), Fraction(1), Fraction(1), Fraction(1))])
    unique = {}
    for r in roots:
        unique.setdefault(r.key, r)
    inside = [r for r in unique.values() if 0 <= r.value <= 1]
    # refine surd intervals until no interval overlaps another
    while True:
        inside.sort(key=lambda r: (r.lo, r.hi))
        clash = False
        for left, right in zip(inside, inside[1:]):
            if right.lo <= left.hi:
                for r in (left, right):
                    if r.poly is not None:
                        r.refine()
                clash = True
        if not clash:
            return inside


def _q_interval(cons: Sequence[Constraint], p: Number):
    """Feasible q at fixed p: returns a witness q or None."""
    lo, lo_strict = Fraction(0), False
    hi, hi_strict = Fraction(1), False
    for g, strict in cons:
        alpha = g.a * p + g.c
        beta = g.b * p + g.d
        s = sign(alpha)
        if s == 0:
            sb = sign(beta)
            if sb < 0 or (sb == 0 and strict):
                return None
            continue
        bound = -beta / alpha
        if s > 0:      # q > bound
            c = sign(bound - lo)
            if c > 0 or (c == 0 and strict):
                lo, lo_strict = bound, strict
        else:          # q < bound
            c = sign(bound - hi)
            if c < 0 or (c == 0 and strict):
                hi, hi_strict = bound, strict
    gap = sign(hi - lo)
    if gap > 0:
        return (lo + hi) / 2
    if gap == 0 and not lo_strict and not hi_strict:
        return lo
    return None


def feasible_point(cons: Sequence[Constraint]):
    """Return ``(p, q)`` in the unit square satisfying every constraint, or
    None when the system is infeasible.

    Rational points are preferred: open cells and rational critical abscissae
    are tried first, irrational ones last (those may return QuadSurd values).
    """
    cons = list(cons)
    crit = _critical_points(cons)
    rational, irrational = [], []
    for k, r in enumerate(crit):
        (irrational if isinstance(r.value, QuadSurd) else rational).append(r.value)
        if k + 1 < len(crit):
            rational.append((r.hi + crit[k + 1].lo) / 2)
    rational.sort()
    for p in rational + irrational:
        q = _q_interval(cons, p)
        if q is not None:
            return (p, q)
    return None


def dominating_point(gs: Sequence[Bilinear], strict: bool):
    """Point where every ``g`` is positive (``strict``), or where all are
    nonnegative and at least one positive (not ``strict``)."""
    if strict:
        return feasible_point([(g, True) for g in gs])
    for j in range(len(gs)):
        pt = feasible_point([(g, i == j) for i, g in enumerate(gs)])
        if pt is not None:
            return pt
    return None

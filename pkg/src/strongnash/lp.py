"""Dense two-phase tableau simplex over the rationals.

Bland's rule (lowest-index entering column, lowest-index leaving variable on
ratio ties) rules out cycling, so every call terminates with an exact answer.
Problems here are tiny; clarity wins over sparse tricks.
"""
from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Sequence

OPTIMAL = "optimal"
INFEASIBLE = "infeasible"
UNBOUNDED = "unbounded"

_ZERO = Fraction(0)


@dataclass(frozen=True)
class LPResult:
    status: str
    x: tuple[Fraction, ...] | None = None
    value: Fraction | None = None

    @property
    def ok(self) -> bool:
        return self.status == OPTIMAL


class _Tableau:
    def __init__(self, rows, rhs, basis):
        self.rows = rows      # constraint rows, list of lists of Fraction
        self.rhs = rhs
        self.basis = basis    # basic column per row

    def pivot(self, r: int, c: int) -> None:
        row = self.rows[r]
        piv = row[c]
        if piv != 1:
            inv = 1 / piv
            row[:] = [v * inv for v in row]
            self.rhs[r] *= inv
        for k, other in enumerate(self.rows):
            f = other[c]
            if k != r and f:
                other[:] = [a - f * b for a, b in zip(other, row)]
                self.rhs[k] -= f * self.rhs[r]
        self.basis[r] = c

    def reduced_costs(self, cost: Sequence[Fraction]) -> list[Fraction]:
        # maximisation: d_j = c_j - c_B . B^-1 A_j
        d = list(cost)
        for r, b in enumerate(self.basis):
            cb = cost[b]
            if cb:
                d = [dj - cb * a for dj, a in zip(d, self.rows[r])]
        return d

    def optimise(self, cost: Sequence[Fraction], allowed: int) -> bool:
        """Maximise cost over columns < allowed.  False when unbounded."""
        while True:
            d = self.reduced_costs(cost)
            enter = next((j for j in range(allowed) if d[j] > 0), None)
            if enter is None:
                return True
            best = None
            for r, row in enumerate(self.rows):
                a = row[enter]
                if a > 0:
                    ratio = self.rhs[r] / a
                    key = (ratio, self.basis[r])
                    if best is None or key < best[0]:
                        best = (key, r)
            if best is None:
                return False
            self.pivot(best[1], enter)


def linprog(
    c: Sequence,
    A_ub: Sequence[Sequence] = (),
    b_ub: Sequence = (),
    A_eq: Sequence[Sequence] = (),
    b_eq: Sequence = (),
    free: Sequence[int] = (),
) -> LPResult:
    """Maximise ``c @ x`` subject to ``A_ub @ x <= b_ub``, ``A_eq @ x == b_eq``
    and ``x >= 0`` except for the indices listed in ``free``.

    All inputs are converted to Fractions; the result is exact.
    """
    n = len(c)
    free = sorted(set(free))
    # free variable j is split into x_j - y_j; y columns are appended
    split = {j: n + k for k, j in enumerate(free)}
    n_struct = n + len(free)

    def expand(row):
        row = [Fraction(v) for v in row]
        if len(row) != n:
            raise ValueError(f"constraint row has {len(row)} entries, expected {n}")
        return row + [-row[j] for j in free]

    cons = []   # (coeffs, rhs, kind) with kind in {'le', 'eq'}
    for row, b in zip(A_ub, b_ub):
        cons.append((expand(row), Fraction(b), "le"))
    for row, b in zip(A_eq, b_eq):
        cons.append((expand(row), Fraction(b), "eq"))
    if len(A_ub) != len(b_ub) or len(A_eq) != len(b_eq):
        raise ValueError("constraint matrix and right-hand side lengths differ")

    m = len(cons)
    n_slack = sum(1 for _, _, kind in cons if kind == "le")
    n_cols = n_struct + n_slack + m           # one artificial column per row (may stay unused)
    rows, rhs, basis = [], [], []
    artificial = []
    s = n_struct
    for r, (coeffs, b, kind) in enumerate(cons):
        row = coeffs + [_ZERO] * (n_cols - n_struct)
        if kind == "le":
            row[s] = Fraction(1)
            slack_col = s
            s += 1
        if b < 0:
            row = [-v for v in row]
            b = -b
        art_col = n_struct + n_slack + r
        if kind == "le" and row[slack_col] == 1:
            basis.append(slack_col)
        else:
            row[art_col] = Fraction(1)
            basis.append(art_col)
            artificial.append(art_col)
        rows.append(row)
        rhs.append(b)
    tab = _Tableau(rows, rhs, basis)

    if artificial:
        phase1 = [_ZERO] * n_cols
        for j in artificial:
            phase1[j] = Fraction(-1)
        tab.optimise(phase1, n_cols)
        if sum(tab.rhs[r] for r, b in enumerate(tab.basis) if b in artificial) != 0:
            return LPResult(INFEASIBLE)
        # drive zero-level artificials out of the basis
        art = set(artificial)
        for r in range(len(tab.rows)):
            if tab.basis[r] in art:
                col = next((j for j in range(n_struct + n_slack) if tab.rows[r][j] != 0), None)
                if col is not None:
                    tab.pivot(r, col)
        keep = [r for r in range(len(tab.rows)) if tab.basis[r] not in art]
        tab.rows = [tab.rows[r] for r in keep]
        tab.rhs = [tab.rhs[r] for r in keep]
        tab.basis = [tab.basis[r] for r in keep]

    allowed = n_struct + n_slack
    cost = [Fraction(v) for v in c] + [-Fraction(c[j]) for j in free]
    cost += [_ZERO] * (n_cols - n_struct)
    if not tab.optimise(cost, allowed):
        return LPResult(UNBOUNDED)

    values = [_ZERO] * n_cols
    for r, b in enumerate(tab.basis):
        values[b] = tab.rhs[r]
    x = [values[j] - (values[split[j]] if j in split else 0) for j in range(n)]
    value = sum((Fraction(cj) * xj for cj, xj in zip(c, x)), _ZERO)
    return LPResult(OPTIMAL, tuple(x), value)

"""Exact rational linear programming.

Two-phase tableau simplex over ``fractions.Fraction`` with Bland's rule.
Infeasible programs come back with a Farkas certificate read off the
phase-one duals; :func:`check_farkas` and :func:`check_point` re-verify
results independently of the solver.
"""
from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from typing import Optional

EQ = "=="
LE = "<="


@dataclass
class Row:
    name: str
    coeffs: dict
    sense: str
    rhs: Fraction


@dataclass
class LinearProgram:
    """Variables are nonnegative; rows are ``==`` or ``<=`` constraints."""

    variables: list = field(default_factory=list)
    rows: list = field(default_factory=list)
    objective: dict = field(default_factory=dict)

    def add_variable(self, name) -> None:
        self.variables.append(name)

    def add_row(self, name: str, coeffs: dict, sense: str, rhs) -> None:
        if sense not in (EQ, LE):
            raise ValueError(f"bad constraint sense {sense!r}")
        clean = {k: Fraction(v) for k, v in coeffs.items() if v}
        self.rows.append(Row(name, clean, sense, Fraction(rhs)))

    def maximize(self, coeffs: dict) -> None:
        self.objective = {k: Fraction(v) for k, v in coeffs.items() if v}

    def solve(self) -> "LPResult":
        return solve(self)


@dataclass
class LPResult:
    feasible: bool
    values: Optional[dict] = None
    objective: Optional[Fraction] = None
    farkas: Optional[dict] = None
    unbounded: bool = False


class _Tableau:
    def __init__(self, rows, ncols):
        self.rows = rows          # list of lists, last entry is rhs
        self.ncols = ncols
        self.basis = []

    def pivot(self, r, c):
        prow = self.rows[r]
        piv = prow[c]
        if piv != 1:
            inv = 1 / piv
            for j in range(len(prow)):
                if prow[j]:
                    prow[j] *= inv
        nz = [j for j in range(len(prow)) if prow[j]]
        for i, row in enumerate(self.rows):
            if i == r:
                continue
            f = row[c]
            if f:
                for j in nz:
                    row[j] -= f * prow[j]
        self.basis[r] = c


def _reduced_costs(tab, cost, active):
    """Reduced cost per active column and current objective value."""
    red = {}
    for j in active:
        r = cost[j]
        for i, b in enumerate(tab.basis):
            cb = cost[b]
            if cb:
                r -= cb * tab.rows[i][j]
        red[j] = r
    value = sum((cost[b] * tab.rows[i][-1] for i, b in enumerate(tab.basis)), Fraction(0))
    return red, value


def _run(tab, cost, active):
    """Minimize ``cost`` over the tableau with Bland's rule; False if unbounded."""
    while True:
        red, _ = _reduced_costs(tab, cost, active)
        enter = next((j for j in sorted(active) if red[j] < 0), None)
        if enter is None:
            return True
        best = None
        for i, row in enumerate(tab.rows):
            a = row[enter]
            if a > 0:
                ratio = row[-1] / a
                key = (ratio, tab.basis[i])
                if best is None or key < best[0]:
                    best = (key, i)
        if best is None:
            return False
        tab.pivot(best[1], enter)


def solve(lp: LinearProgram) -> LPResult:
    var_index = {v: i for i, v in enumerate(lp.variables)}
    n = len(lp.variables)
    slack_of = {}
    for r_i, row in enumerate(lp.rows):
        if row.sense == LE:
            slack_of[r_i] = n + len(slack_of)
    nstd = n + len(slack_of)
    m = len(lp.rows)
    signs = []
    rows = []
    for r_i, row in enumerate(lp.rows):
        sigma = -1 if row.rhs < 0 else 1
        signs.append(sigma)
        dense = [Fraction(0)] * (nstd + m + 1)
        for k, v in row.coeffs.items():
            try:
                dense[var_index[k]] += sigma * v
            except KeyError:
                raise ValueError(f"row {row.name} uses unknown variable {k!r}") from None
        if r_i in slack_of:
            dense[slack_of[r_i]] = Fraction(sigma)
        dense[nstd + r_i] = Fraction(1)
        dense[-1] = sigma * row.rhs
        rows.append(dense)
    tab = _Tableau(rows, nstd + m)
    tab.basis = [nstd + i for i in range(m)]

    # phase one: minimize the sum of artificials
    cost1 = [Fraction(0)] * nstd + [Fraction(1)] * m
    _run(tab, cost1, range(nstd + m))
    red, value = _reduced_costs(tab, cost1, range(nstd + m))
    if value > 0:
        y_std = [1 - red[nstd + i] for i in range(m)]
        farkas = {}
        for i, row in enumerate(lp.rows):
            z = -signs[i] * y_std[i]
            if z:
                farkas[row.name] = z
        # scale so the combined right-hand side is -1
        total = sum((z * lp.rows[i].rhs for i, z in
                     ((i, farkas.get(r.name, 0)) for i, r in enumerate(lp.rows))), Fraction(0))
        if total < 0:
            farkas = {k: v / -total for k, v in farkas.items()}
        return LPResult(False, farkas=farkas)

    # drive zero-level artificials out of the basis, dropping redundant rows
    keep = []
    for i in range(len(tab.rows)):
        b = tab.basis[i]
        if b >= nstd:
            col = next((j for j in range(nstd) if tab.rows[i][j] != 0), None)
            if col is None:
                continue
            tab.pivot(i, col)
        keep.append(i)
    tab.rows = [[x for j, x in enumerate(tab.rows[i]) if j < nstd or j == len(tab.rows[i]) - 1]
                for i in keep]
    tab.basis = [tab.basis[i] for i in keep]

    cost2 = [Fraction(0)] * nstd
    for k, v in lp.objective.items():
        cost2[var_index[k]] = -v
    bounded = _run(tab, cost2, range(nstd))
    x = [Fraction(0)] * nstd
    for i, b in enumerate(tab.basis):
        x[b] = tab.rows[i][-1]
    values = {v: x[i] for i, v in enumerate(lp.variables)}
    obj = sum((c * values[k] for k, c in lp.objective.items()), Fraction(0))
    return LPResult(True, values=values, objective=obj if bounded else None, unbounded=not bounded)


def check_point(lp: LinearProgram, values: dict) -> bool:
    """Exact feasibility check of an assignment."""
    for v in lp.variables:
        if Fraction(values.get(v, 0)) < 0:
            return False
    for row in lp.rows:
        lhs = sum((c * Fraction(values.get(k, 0)) for k, c in row.coeffs.items()), Fraction(0))
        if row.sense == EQ and lhs != row.rhs:
            return False
        if row.sense == LE and lhs > row.rhs:
            return False
    return True


def check_farkas(lp: LinearProgram, farkas: dict) -> bool:
    """True iff the multipliers derive ``0 <= (negative number)``.

    Multipliers on ``<=`` rows must be nonnegative; the combined row must
    have every variable coefficient >= 0 and a negative right-hand side.
    """
    by_name = {r.name: r for r in lp.rows}
    combined: dict = {}
    rhs = Fraction(0)
    for name, y in farkas.items():
        row = by_name.get(name)
        if row is None:
            return False
        y = Fraction(y)
        if row.sense == LE and y < 0:
            return False
        for k, c in row.coeffs.items():
            combined[k] = combined.get(k, Fraction(0)) + y * c
        rhs += y * row.rhs
    if any(c < 0 for c in combined.values()):
        return False
    return rhs < 0

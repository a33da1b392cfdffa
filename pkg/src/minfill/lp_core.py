"""Exact rational linear programming.

Two-phase primal simplex over a dense tableau with Bland's rule.  Rows are
kept as lists of Python integers, each row scaled by its own positive factor;
a row's equation is unaffected by positive scaling, so no division happens in
the pivot loop and nothing is ever rounded.

Problems are stated as::

    minimize    c . x
    subject to  a_i . x >= b_i     for every constraint i
                x_j >= 0           where nonneg[j] is true (free otherwise)
"""

from __future__ import annotations

import enum
import math
from dataclasses import dataclass, field
from functools import cached_property
from fractions import Fraction
from typing import Optional, Sequence


class Status(enum.Enum):
    OPTIMAL = "optimal"
    UNBOUNDED = "unbounded"
    INFEASIBLE = "infeasible"


def _rational(v):
    # ints are exact rationals already and much cheaper than Fraction
    if type(v) is int or type(v) is Fraction:
        return v
    return Fraction(v)


@dataclass(frozen=True)
class LinearProgram:
    objective: tuple
    constraints: tuple  # of (coefficients, rhs) meaning coefficients . x >= rhs
    nonneg: tuple

    def __init__(self, objective, constraints=(), nonneg=None):
        obj = tuple(_rational(c) for c in objective)
        cons = tuple(
            (tuple(_rational(a) for a in coeffs), _rational(rhs)) for coeffs, rhs in constraints
        )
        mask = tuple(bool(m) for m in nonneg) if nonneg is not None else (True,) * len(obj)
        for i, (coeffs, _) in enumerate(cons):
            if len(coeffs) != len(obj):
                raise ValueError(
                    f"constraint {i} has {len(coeffs)} coefficients, expected {len(obj)}"
                )
        if len(mask) != len(obj):
            raise ValueError(f"nonneg mask has length {len(mask)}, expected {len(obj)}")
        object.__setattr__(self, "objective", obj)
        object.__setattr__(self, "constraints", cons)
        object.__setattr__(self, "nonneg", mask)

    @property
    def num_vars(self) -> int:
        return len(self.objective)

    @cached_property
    def scaled_rows(self) -> list:
        """Constraints as ``(int coefficients, int rhs)``, each row scaled positively."""
        out = []
        for coeffs, rhs in self.constraints:
            scale = _lcm_denominators(coeffs + (rhs,))
            out.append((
                [a.numerator * (scale // a.denominator) for a in coeffs],
                rhs.numerator * (scale // rhs.denominator),
            ))
        return out

    def value_at(self, x: Sequence[Fraction]) -> Fraction:
        return sum((c * v for c, v in zip(self.objective, x) if c), Fraction(0))

    def is_feasible(self, x: Sequence[Fraction]) -> bool:
        if any(m and v < 0 for m, v in zip(self.nonneg, x)):
            return False
        den = _lcm_denominators(x)
        xs = [v.numerator * (den // v.denominator) for v in x]
        return all(
            sum(a * v for a, v in zip(coeffs, xs) if a) >= rhs * den
            for coeffs, rhs in self.scaled_rows
        )


@dataclass(frozen=True)
class LpOutcome:
    """Result of :func:`solve`.

    ``point``/``value`` are set when optimal.  ``ray`` is an improving
    recession direction when unbounded.  ``farkas`` holds non-negative
    constraint multipliers proving infeasibility.
    """

    status: Status
    value: Optional[Fraction] = None
    point: Optional[tuple] = None
    ray: Optional[tuple] = None
    farkas: Optional[tuple] = None
    pivots: int = field(default=0, compare=False)

    @property
    def is_optimal(self) -> bool:
        return self.status is Status.OPTIMAL


def _lcm_denominators(values) -> int:
    m = 1
    for v in values:
        d = v.denominator
        if d != 1:
            m = m * d // math.gcd(m, d)
    return m


def _reduce(row: list) -> list:
    g = math.gcd(*row)
    if g > 1:
        return [v // g for v in row]
    return row


class _Tableau:
    """Row-scaled integer tableau.  Column ``ncols`` of each row is the rhs."""

    def __init__(self, rows, basis, ncols):
        self.rows = rows
        self.basis = basis
        self.ncols = ncols
        self.obj = None
        self.obj_scale = 1
        self.pivots = 0

    def set_objective(self, costs: Sequence[int]):
        # obj_scale * z + sum(obj[j] * z_j) = obj[rhs]
        obj = [-c for c in costs] + [0]
        scale = 1
        for i, b in enumerate(self.basis):
            f = obj[b]
            if f:
                row = self.rows[i]
                k = row[b]
                obj = [k * o - f * r for o, r in zip(obj, row)]
                scale *= k
                g = math.gcd(*obj, scale)
                if g > 1:
                    obj = [o // g for o in obj]
                    scale //= g
        self.obj = obj
        self.obj_scale = scale

    def pivot(self, r: int, c: int):
        prow = self.rows[r]
        p = prow[c]
        for i, row in enumerate(self.rows):
            if i != r:
                f = row[c]
                if f:
                    self.rows[i] = _reduce([p * a - f * b for a, b in zip(row, prow)])
        f = self.obj[c]
        if f:
            obj = [p * a - f * b for a, b in zip(self.obj, prow)]
            scale = self.obj_scale * p
            g = math.gcd(*obj, scale)
            if g > 1:
                obj = [o // g for o in obj]
                scale //= g
            self.obj = obj
            self.obj_scale = scale
        self.basis[r] = c
        self.pivots += 1

    def entering(self, allowed: int) -> Optional[int]:
        # Bland: lowest-index column with a positive objective coefficient
        obj = self.obj
        for j in range(allowed):
            if obj[j] > 0:
                return j
        return None

    def leaving(self, c: int) -> Optional[int]:
        best = None
        best_num = best_den = 0
        for i, row in enumerate(self.rows):
            a = row[c]
            if a > 0:
                rhs = row[-1]
                if best is None:
                    best, best_num, best_den = i, rhs, a
                    continue
                lhs, rhs_cmp = rhs * best_den, best_num * a
                if lhs < rhs_cmp or (lhs == rhs_cmp and self.basis[i] < self.basis[best]):
                    best, best_num, best_den = i, rhs, a
        return best

    def run(self, allowed: int) -> Optional[int]:
        """Pivot to optimality.  Returns an unbounded entering column, or None."""
        while True:
            c = self.entering(allowed)
            if c is None:
                return None
            r = self.leaving(c)
            if r is None:
                return c
            self.pivot(r, c)

    def basic_values(self) -> dict:
        return {b: Fraction(row[-1], row[b]) for b, row in zip(self.basis, self.rows)}

    def reduced_cost(self, j: int) -> Fraction:
        return Fraction(-self.obj[j], self.obj_scale)


def solve(lp: LinearProgram) -> LpOutcome:
    """Minimize ``lp`` exactly.

    Free variables are split as x = x+ - x-.  Phase one minimizes the sum of
    artificial variables; phase two the real objective.  Entering and
    leaving choices follow Bland's rule, so identical inputs always produce
    identical witnesses.
    """
    n = lp.num_vars
    # structural columns: one per nonneg variable, two per free variable
    split: list[tuple[int, int]] = []
    for j in range(n):
        split.append((j, 1))
        if not lp.nonneg[j]:
            split.append((j, -1))
    ns = len(split)
    m = len(lp.constraints)
    # columns: [structural ns][surplus m]; artificial variables get basis ids
    # ns + m + k but no stored column, since they never re-enter.
    rows: list[list[int]] = []
    basis: list[int] = []
    phase1 = [0] * (ns + m + 1)
    n_art = 0
    for i, (coeffs, rhs) in enumerate(lp.scaled_rows):
        sign = -1 if rhs <= 0 else 1
        row = [0] * (ns + m)
        for k, (j, s) in enumerate(split):
            a = coeffs[j]
            if a:
                row[k] = a * s * sign
        row[ns + i] = -sign
        row.append(rhs * sign)
        if sign < 0:
            basis.append(ns + i)  # surplus is already a unit column
        else:
            basis.append(ns + m + n_art)
            n_art += 1
            phase1 = [p + r for p, r in zip(phase1, row)]
        rows.append(_reduce(row))
    tab = _Tableau(rows, basis, ns + m)

    if n_art:
        tab.obj = phase1
        tab.run(ns + m)
        if tab.obj[-1] != 0:
            # surplus i has cost 0 and column -e_i in the >= form, so its
            # reduced cost equals the multiplier of constraint i
            # row i was multiplied by its scale before entering the tableau
            scales = [_lcm_denominators(coeffs + (rhs,)) for coeffs, rhs in lp.constraints]
            cert = tuple(tab.reduced_cost(ns + i) * scales[i] for i in range(m))
            _check_farkas(lp, cert)
            return LpOutcome(Status.INFEASIBLE, farkas=cert, pivots=tab.pivots)
        _drive_out_artificials(tab, ns + m)

    costs_frac = [lp.objective[j] * s for j, s in split]
    cscale = _lcm_denominators(costs_frac)
    costs = [c.numerator * (cscale // c.denominator) for c in costs_frac] + [0] * m
    tab.set_objective(costs)
    tab.obj_scale *= cscale  # costs were multiplied by cscale
    unbounded_col = tab.run(ns + m)
    if unbounded_col is not None:
        direction = [Fraction(0)] * (ns + m)
        direction[unbounded_col] = Fraction(1)
        for b, row in zip(tab.basis, tab.rows):
            if row[unbounded_col]:
                direction[b] = Fraction(-row[unbounded_col], row[b])
        ray = _merge_split(direction, split, n)
        return LpOutcome(Status.UNBOUNDED, ray=ray, pivots=tab.pivots)

    values = [Fraction(0)] * (ns + m)
    for b, v in tab.basic_values().items():
        values[b] = v
    point = _merge_split(values, split, n)
    value = lp.value_at(point)
    if value != Fraction(tab.obj[-1], tab.obj_scale) or not lp.is_feasible(point):
        raise AssertionError("simplex produced an inconsistent optimum")
    return LpOutcome(Status.OPTIMAL, value=value, point=point, pivots=tab.pivots)


def _merge_split(values, split, n) -> tuple:
    x = [Fraction(0)] * n
    for k, (j, s) in enumerate(split):
        if values[k]:
            x[j] += s * values[k]
    return tuple(x)


def _drive_out_artificials(tab: _Tableau, first_art: int):
    keep = []
    for i, b in enumerate(tab.basis):
        if b < first_art:
            keep.append(i)
            continue
        row = tab.rows[i]
        c = next((j for j in range(first_art) if row[j]), None)
        if c is None:
            continue  # redundant equation
        if row[c] < 0:
            tab.rows[i] = row = [-v for v in row]
        tab.pivot(i, c)
        keep.append(i)
    tab.rows = [tab.rows[i] for i in keep]
    tab.basis = [tab.basis[i] for i in keep]


def _check_farkas(lp: LinearProgram, y: Sequence[Fraction]):
    if any(v < 0 for v in y):
        raise AssertionError("negative Farkas multiplier")
    if sum((v * rhs for v, (_, rhs) in zip(y, lp.constraints)), Fraction(0)) <= 0:
        raise AssertionError("Farkas certificate has non-positive rhs combination")
    for j in range(lp.num_vars):
        s = sum((v * coeffs[j] for v, (coeffs, _) in zip(y, lp.constraints)), Fraction(0))
        if s > 0 or (s != 0 and not lp.nonneg[j]):
            raise AssertionError("Farkas certificate does not cancel the variables")


def check_ray(lp: LinearProgram, ray: Sequence[Fraction]) -> bool:
    """True when ``ray`` is an improving direction of the recession cone."""
    if any(m and d < 0 for m, d in zip(lp.nonneg, ray)):
        return False
    for coeffs, _ in lp.constraints:
        if sum((a * d for a, d in zip(coeffs, ray)), Fraction(0)) < 0:
            return False
    return lp.value_at(ray) < 0

"""Exact two-phase simplex over free variables.

Problems are given as: optimize c.x subject to a_i.x <= b_i, x free.
Internally the solver splits x into nonnegative parts, adds slacks and
artificials, and pivots with Bland's rule, so it always terminates and is
bit-for-bit reproducible. Optimal outcomes carry an exact dual certificate:
y >= 0 with y^T A = c and y^T b = value for sense "max", and y^T A = -c,
y^T b = -value for sense "min".

The public ``lp_solve`` additionally purifies the optimum to the
lexicographically smallest point of the optimal face, which is a vertex of
the feasible region whenever the region is pointed (always the case for the
bounded regions this library generates).
"""

from __future__ import annotations

from dataclasses import dataclass

from .errors import InputError
from .rationals import ONE, ZERO, rat
from .linalg import Vector, dot, vec

OPTIMAL = "optimal"
INFEASIBLE = "infeasible"
UNBOUNDED = "unbounded"


@dataclass(frozen=True)
class LpResult:
    status: str
    value: object = None
    point: Vector = None
    dual: Vector = None

    @property
    def optimal(self) -> bool:
        return self.status == OPTIMAL


def _pivot(rows, cost, basis, prow, pcol):
    piv = rows[prow][pcol]
    inv = ONE / piv
    rows[prow] = [inv * x for x in rows[prow]]
    pivot_row = rows[prow]
    for i, row in enumerate(rows):
        if i != prow and row[pcol] != 0:
            f = row[pcol]
            rows[i] = [x - f * y for x, y in zip(row, pivot_row)]
    if cost[pcol] != 0:
        f = cost[pcol]
        for j, y in enumerate(pivot_row):
            cost[j] = cost[j] - f * y
    basis[prow] = pcol


def _run_simplex(rows, cost, basis, allowed):
    """Minimize: pivot until every allowed reduced cost is >= 0.

    Returns "optimal" or "unbounded". Bland's rule on both choices.
    """
    ncols = len(cost) - 1
    while True:
        pcol = None
        for j in range(ncols):
            if allowed[j] and cost[j] < 0:
                pcol = j
                break
        if pcol is None:
            return OPTIMAL
        prow = None
        best = None
        for i, row in enumerate(rows):
            coef = row[pcol]
            if coef > 0:
                ratio = row[-1] / coef
                if best is None or ratio < best or (ratio == best and basis[i] < basis[prow]):
                    best = ratio
                    prow = i
        if prow is None:
            return UNBOUNDED
        _pivot(rows, cost, basis, prow, pcol)


def _simplex_max(objective, rows_in, rhs_in):
    """Maximize objective over {A x <= b}. Returns (status, value, x, dual)."""
    n = len(objective)
    m = len(rows_in)
    # columns: u (n) | v (n) | slacks (m) | artificials
    base_cols = 2 * n + m
    tableau = []
    basis = []
    flips = []
    art_of_row = {}
    for i in range(m):
        sign = -ONE if rhs_in[i] < 0 else ONE
        flips.append(sign)
        row = [sign * a for a in rows_in[i]] + [-sign * a for a in rows_in[i]]
        row += [sign if k == i else ZERO for k in range(m)]
        row.append(sign * rhs_in[i])
        tableau.append(row)
        if sign < 0:
            art_of_row[i] = base_cols + len(art_of_row)
    n_art = len(art_of_row)
    total_cols = base_cols + n_art
    for i in range(m):
        body, rhs = tableau[i][:-1], tableau[i][-1]
        arts = [ZERO] * n_art
        if i in art_of_row:
            arts[art_of_row[i] - base_cols] = ONE
            basis.append(art_of_row[i])
        else:
            basis.append(2 * n + i)
        tableau[i] = body + arts + [rhs]

    row_ids = list(range(m))
    if n_art:
        art_set = set(art_of_row.values())
        cost1 = [ZERO] * (total_cols + 1)
        for c in art_set:
            cost1[c] = ONE
        for i, b in enumerate(basis):
            if cost1[b] != 0:
                f = cost1[b]
                cost1 = [x - f * y for x, y in zip(cost1, tableau[i])]
        allowed = [True] * total_cols
        _run_simplex(tableau, cost1, basis, allowed)
        if cost1[-1] < 0:
            return INFEASIBLE, None, None, None
        # drive leftover artificials out of the basis; all-zero rows are
        # redundant equations and get dropped (their dual multiplier is 0)
        keep = []
        for i in range(len(tableau)):
            if basis[i] in art_set:
                done = False
                for j in range(base_cols):
                    if tableau[i][j] != 0:
                        _pivot(tableau, cost1, basis, i, j)
                        done = True
                        break
                if not done:
                    continue
            keep.append(i)
        tableau = [tableau[i] for i in keep]
        basis = [basis[i] for i in keep]
        row_ids = [row_ids[i] for i in keep]

    # phase 2: minimize -objective; artificial columns locked out
    cost2 = [ZERO] * (total_cols + 1)
    for j in range(n):
        cost2[j] = -objective[j]
        cost2[n + j] = objective[j]
    for i, b in enumerate(basis):
        if cost2[b] != 0:
            f = cost2[b]
            cost2 = [x - f * y for x, y in zip(cost2, tableau[i])]
    allowed = [j < base_cols for j in range(total_cols)]
    status = _run_simplex(tableau, cost2, basis, allowed)
    if status == UNBOUNDED:
        return UNBOUNDED, None, None, None
    values = {}
    for i, b in enumerate(basis):
        values[b] = tableau[i][-1]
    x = tuple(values.get(j, ZERO) - values.get(n + j, ZERO) for j in range(n))
    value = cost2[-1]
    # the reduced cost of row i's slack is exactly its dual multiplier
    dual = tuple(cost2[2 * n + i] for i in range(m))
    return OPTIMAL, value, x, dual


def _coerce(objective, constraints):
    obj = vec(objective)
    cons = []
    for a, b in constraints:
        a = vec(a)
        if len(a) != len(obj):
            raise InputError("constraint row width does not match objective")
        cons.append((a, rat(b)))
    return obj, cons


def _solve_raw(objective, constraints, sense):
    if sense not in ("max", "min"):
        raise InputError(f"sense must be 'max' or 'min', got {sense!r}")
    rows = [a for a, _ in constraints]
    rhs = [b for _, b in constraints]
    if sense == "min":
        status, value, x, dual = _simplex_max(tuple(-c for c in objective), rows, rhs)
        if status != OPTIMAL:
            return LpResult(status)
        return LpResult(OPTIMAL, -value, x, dual)
    status, value, x, dual = _simplex_max(objective, rows, rhs)
    if status != OPTIMAL:
        return LpResult(status)
    return LpResult(OPTIMAL, value, x, dual)


def lp_value(objective, constraints, sense="max") -> LpResult:
    """Solve without vertex purification (fast path for norm computations)."""
    objective, constraints = _coerce(objective, constraints)
    return _solve_raw(objective, constraints, sense)


def lp_solve(objective, constraints, sense="max") -> LpResult:
    """Solve and return the lexicographically smallest optimal point.

    The returned point is a vertex of the feasible region whenever the
    region has vertices; the dual certificate comes from the initial solve
    (purification never changes the optimal value).
    """
    objective, constraints = _coerce(objective, constraints)
    first = _solve_raw(objective, constraints, sense)
    if not first.optimal:
        return first
    n = len(objective)
    # pin the objective value, then settle coordinates left to right
    work = list(constraints)
    work.append((objective, first.value))
    work.append((vec(-c for c in objective), -first.value))
    point = []
    for i in range(n):
        e_i = tuple(ONE if j == i else ZERO for j in range(n))
        sub = _solve_raw(e_i, work, "min")
        if sub.optimal:
            coord = sub.value
        else:
            sub = _solve_raw(e_i, work, "max")
            coord = sub.value if sub.optimal else ZERO
        point.append(coord)
        work.append((e_i, coord))
        work.append((tuple(-x for x in e_i), -coord))
    return LpResult(OPTIMAL, first.value, tuple(point), first.dual)


def check_dual_certificate(objective, constraints, result, sense="max") -> bool:
    """Exactly verify the optimality certificate carried by a result."""
    if not result.optimal or result.dual is None or result.point is None:
        return False
    objective, constraints = _coerce(objective, constraints)
    y = result.dual
    if len(y) != len(constraints) or any(yi < 0 for yi in y):
        return False
    for a, b in constraints:
        if dot(a, result.point) > b:
            return False
    if dot(objective, result.point) != result.value:
        return False
    n = len(objective)
    combo = [ZERO] * n
    bound = ZERO
    for yi, (a, b) in zip(y, constraints):
        for j in range(n):
            combo[j] += yi * a[j]
        bound += yi * b
    if sense == "max":
        return tuple(combo) == tuple(objective) and bound == result.value
    return tuple(combo) == tuple(-c for c in objective) and bound == -result.value

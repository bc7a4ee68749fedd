"""Dense two-phase tableau simplex over exact rationals.

Bland's rule is used for every pivot, so the solver terminates on
degenerate programs and is deterministic for a given input. Each outcome
carries a certificate that :func:`check_outcome` re-verifies from the
original program alone:

* ``Optimal`` carries a primal point and dual multipliers with equal
  objective values.
* ``Infeasible`` carries Farkas multipliers ``y``: sign-feasible for the
  row relations, with ``y @ A`` nonpositive on nonnegative variables, zero
  on free ones, and ``y @ b > 0``. Any feasible ``x`` would give
  ``0 >= (y @ A) @ x >= y @ b > 0``.
* ``Unbounded`` carries a feasible point and an improving recession ray.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Sequence, Union

from .errors import DimensionMismatch

LE, GE, EQ = "<=", ">=", "=="
_FLIP = {LE: GE, GE: LE, EQ: EQ}

_ZERO = Fraction(0)
_ONE = Fraction(1)


@dataclass(frozen=True)
class Constraint:
    coeffs: tuple[Fraction, ...]
    relation: str
    rhs: Fraction

    def __post_init__(self):
        if self.relation not in _FLIP:
            raise ValueError(f"unknown relation {self.relation!r}")
        object.__setattr__(self, "coeffs", tuple(Fraction(c) for c in self.coeffs))
        object.__setattr__(self, "rhs", Fraction(self.rhs))


@dataclass(frozen=True)
class LinearProgram:
    """``direction`` is ``"min"`` or ``"max"``; ``free[j]`` marks a variable
    with no lower bound, all others are ``>= 0``."""

    direction: str
    objective: tuple[Fraction, ...]
    constraints: tuple[Constraint, ...]
    free: tuple[bool, ...] = ()

    def __post_init__(self):
        if self.direction not in ("min", "max"):
            raise ValueError(f"direction must be 'min' or 'max', not {self.direction!r}")
        obj = tuple(Fraction(c) for c in self.objective)
        object.__setattr__(self, "objective", obj)
        object.__setattr__(self, "constraints", tuple(self.constraints))
        free = tuple(self.free) or (False,) * len(obj)
        object.__setattr__(self, "free", free)
        if len(free) != len(obj):
            raise DimensionMismatch(f"{len(free)} bound flags for {len(obj)} variables")
        for k, row in enumerate(self.constraints):
            if len(row.coeffs) != len(obj):
                raise DimensionMismatch(
                    f"constraint {k} has {len(row.coeffs)} coefficients, expected {len(obj)}")

    @property
    def num_vars(self) -> int:
        return len(self.objective)


def lp(direction: str, objective: Sequence, rows: Sequence[tuple], free: Sequence[bool] = ()) -> LinearProgram:
    """Shorthand: ``rows`` are ``(coeffs, relation, rhs)`` triples."""
    return LinearProgram(direction, tuple(objective),
                         tuple(Constraint(tuple(a), rel, b) for a, rel, b in rows),
                         tuple(free))


@dataclass(frozen=True)
class Optimal:
    value: Fraction
    point: tuple[Fraction, ...]
    duals: tuple[Fraction, ...]


@dataclass(frozen=True)
class Infeasible:
    farkas: tuple[Fraction, ...]


@dataclass(frozen=True)
class Unbounded:
    point: tuple[Fraction, ...]
    ray: tuple[Fraction, ...]


LPOutcome = Union[Optimal, Infeasible, Unbounded]


class _Tableau:
    """Equality-form tableau ``T = B^-1 [A | b]`` with a reduced-cost row."""

    def __init__(self, rows: list[list[Fraction]], basis: list[int], ncols: int):
        self.rows = rows          # each row has ncols entries plus the rhs
        self.basis = basis
        self.ncols = ncols
        self.cost: list[Fraction] = []
        self.reduced: list[Fraction] = []
        self.pivots = 0

    def set_cost(self, cost: list[Fraction]) -> None:
        self.cost = cost
        red = list(cost) + [_ZERO]
        for row, b in zip(self.rows, self.basis):
            cb = cost[b]
            if cb:
                for j, a in enumerate(row):
                    if a:
                        red[j] -= cb * a
        self.reduced = red    # last entry is -objective value

    def value(self) -> Fraction:
        return -self.reduced[-1]

    def pivot(self, r: int, c: int) -> None:
        prow = self.rows[r]
        piv = prow[c]
        if piv != 1:
            prow = [a / piv for a in prow]
            self.rows[r] = prow
        nz = [(j, a) for j, a in enumerate(prow) if a]
        for k, row in enumerate(self.rows):
            if k != r:
                f = row[c]
                if f:
                    for j, a in nz:
                        row[j] -= f * a
        f = self.reduced[c]
        if f:
            for j, a in nz:
                self.reduced[j] -= f * a
        self.basis[r] = c
        self.pivots += 1

    def run(self, allowed: Sequence[bool]) -> int | None:
        """Minimize with Bland's rule. Returns an unbounded entering column, or None."""
        while True:
            enter = next((j for j in range(self.ncols)
                          if allowed[j] and self.reduced[j] < 0), None)
            if enter is None:
                return None
            best = None
            for r, row in enumerate(self.rows):
                a = row[enter]
                if a > 0:
                    ratio = row[-1] / a
                    key = (ratio, self.basis[r])
                    if best is None or key < best[0]:
                        best = (key, r)
            if best is None:
                return enter
            self.pivot(best[1], enter)

    def snapshot(self, phase: str) -> dict:
        return {
            "phase": phase,
            "basis": list(self.basis),
            "pivots": self.pivots,
            "reduced_costs": [str(a) for a in self.reduced],
            "rows": [[str(a) for a in row] for row in self.rows],
        }


def solve(program: LinearProgram, trace: list | None = None) -> LPOutcome:
    """Solve ``program`` exactly.

    If ``trace`` is a list, a JSON-ready snapshot of the tableau after each
    phase is appended to it.
    """
    n = program.num_vars
    # structural columns: one per nonnegative variable, two per free variable
    colmap: list[tuple[int, int]] = []
    for j in range(n):
        colmap.append((j, 1))
        if program.free[j]:
            colmap.append((j, -1))
    nstruct = len(colmap)

    signs, rels, std_rows, rhs = [], [], [], []
    for con in program.constraints:
        s = -1 if con.rhs < 0 else 1
        signs.append(s)
        rels.append(con.relation if s == 1 else _FLIP[con.relation])
        std_rows.append([s * sg * con.coeffs[j] for j, sg in colmap])
        rhs.append(s * con.rhs)
    m = len(std_rows)

    # slack / surplus columns, then artificial columns
    extra: list[tuple[int, Fraction]] = []    # (row, coefficient)
    unit_col = [0] * m
    for i, rel in enumerate(rels):
        if rel == LE:
            unit_col[i] = nstruct + len(extra)
            extra.append((i, _ONE))
        elif rel == GE:
            extra.append((i, -_ONE))
    first_art = nstruct + len(extra)
    arts = [i for i, rel in enumerate(rels) if rel != LE]
    for k, i in enumerate(arts):
        unit_col[i] = first_art + k
    ncols = first_art + len(arts)

    rows = []
    for i in range(m):
        row = std_rows[i] + [_ZERO] * (ncols - nstruct) + [rhs[i]]
        for k, (ri, a) in enumerate(extra):
            if ri == i:
                row[nstruct + k] = a
        row[unit_col[i]] = _ONE
        rows.append(row)
    tab = _Tableau(rows, list(unit_col), ncols)
    is_art = [j >= first_art for j in range(ncols)]

    # phase one
    tab.set_cost([_ONE if a else _ZERO for a in is_art])
    tab.run([True] * ncols)
    if trace is not None:
        trace.append(tab.snapshot("phase1"))
    if tab.value() > 0:
        # y'_i = c_u - reduced_u for the unit column of row i
        y = [signs[i] * ((_ONE if is_art[unit_col[i]] else _ZERO) - tab.reduced[unit_col[i]])
             for i in range(m)]
        return Infeasible(tuple(y))

    # drive zero-level artificials out of the basis where possible
    for r in range(m):
        if is_art[tab.basis[r]]:
            c = next((j for j in range(first_art) if tab.rows[r][j] != 0), None)
            if c is not None:
                tab.pivot(r, c)

    sense = 1 if program.direction == "min" else -1
    cost = [_ZERO] * ncols
    for k, (j, sg) in enumerate(colmap):
        cost[k] = sense * sg * program.objective[j]
    tab.set_cost(cost)
    enter = tab.run([not a for a in is_art])
    if trace is not None:
        trace.append(tab.snapshot("phase2"))

    xcol = [_ZERO] * ncols
    for r, b in enumerate(tab.basis):
        xcol[b] = tab.rows[r][-1]
    point = _fold(xcol, colmap, n)
    if enter is not None:
        dcol = [_ZERO] * ncols
        dcol[enter] = _ONE
        for r, b in enumerate(tab.basis):
            dcol[b] = -tab.rows[r][enter]
        return Unbounded(point, _fold(dcol, colmap, n))

    duals = tuple(-sense * signs[i] * tab.reduced[unit_col[i]] for i in range(m))
    value = sense * tab.value()
    return Optimal(value, point, duals)


def _fold(cols: list[Fraction], colmap: list[tuple[int, int]], n: int) -> tuple[Fraction, ...]:
    x = [_ZERO] * n
    for k, (j, sg) in enumerate(colmap):
        x[j] += sg * cols[k]
    return tuple(x)


# --- independent verification ------------------------------------------------

def _dot(a: Sequence[Fraction], b: Sequence[Fraction]) -> Fraction:
    return sum((x * y for x, y in zip(a, b)), _ZERO)


def _holds(lhs: Fraction, rel: str, rhs: Fraction) -> bool:
    if rel == LE:
        return lhs <= rhs
    if rel == GE:
        return lhs >= rhs
    return lhs == rhs


def is_feasible(program: LinearProgram, x: Sequence[Fraction]) -> bool:
    if len(x) != program.num_vars:
        return False
    if any(v < 0 for v, fr in zip(x, program.free) if not fr):
        return False
    return all(_holds(_dot(c.coeffs, x), c.relation, c.rhs) for c in program.constraints)


def _column_sums(program: LinearProgram, y: Sequence[Fraction]) -> list[Fraction]:
    return [sum((yi * c.coeffs[j] for yi, c in zip(y, program.constraints)), _ZERO)
            for j in range(program.num_vars)]


def _dual_feasible(program: LinearProgram, y: Sequence[Fraction]) -> bool:
    if len(y) != len(program.constraints):
        return False
    # min: y >= 0 on >= rows, <= 0 on <= rows; max: the reverse
    pos = GE if program.direction == "min" else LE
    for yi, c in zip(y, program.constraints):
        if c.relation == EQ:
            continue
        if (c.relation == pos and yi < 0) or (c.relation != pos and yi > 0):
            return False
    for s, cj, fr in zip(_column_sums(program, y), program.objective, program.free):
        if fr:
            if s != cj:
                return False
        elif program.direction == "min" and s > cj:
            return False
        elif program.direction == "max" and s < cj:
            return False
    return True


def check_outcome(program: LinearProgram, outcome: LPOutcome) -> bool:
    """Re-verify an outcome's certificate by substitution into ``program``."""
    if isinstance(outcome, Optimal):
        if not is_feasible(program, outcome.point):
            return False
        if _dot(program.objective, outcome.point) != outcome.value:
            return False
        if not _dual_feasible(program, outcome.duals):
            return False
        return _dot(outcome.duals, [c.rhs for c in program.constraints]) == outcome.value
    if isinstance(outcome, Infeasible):
        y = outcome.farkas
        if len(y) != len(program.constraints):
            return False
        for yi, c in zip(y, program.constraints):
            if (c.relation == GE and yi < 0) or (c.relation == LE and yi > 0):
                return False
        for s, fr in zip(_column_sums(program, y), program.free):
            if (fr and s != 0) or (not fr and s > 0):
                return False
        return _dot(y, [c.rhs for c in program.constraints]) > 0
    if isinstance(outcome, Unbounded):
        d = outcome.ray
        if not is_feasible(program, outcome.point) or len(d) != program.num_vars:
            return False
        if any(v < 0 for v, fr in zip(d, program.free) if not fr):
            return False
        if not all(_holds(_dot(c.coeffs, d), c.relation, _ZERO) for c in program.constraints):
            return False
        gain = _dot(program.objective, d)
        return gain < 0 if program.direction == "min" else gain > 0
    return False


def dump_program(program: LinearProgram) -> dict:
    return {
        "direction": program.direction,
        "objective": [str(c) for c in program.objective],
        "free": list(program.free),
        "constraints": [{"coeffs": [str(a) for a in c.coeffs], "relation": c.relation,
                         "rhs": str(c.rhs)} for c in program.constraints],
    }

"""Balancedness, core elements and violation certificates.

The core of ``nu`` is the polytope ``{mu >= 0 : mu(A) >= nu(A) for all A,
mu(X) = 1}``. Rather than a feasibility test we solve

    minimize  sum_x mu_x   subject to  mu(A) >= nu(A)  for nonempty A,  mu >= 0

whose LP dual is the balancedness program

    maximize  sum_A lam_A nu(A)   subject to  sum_{A ni x} lam_A <= 1,  lam >= 0.

The row ``A = X`` forces both optima to be at least 1. The core is
nonempty exactly when the optimum equals 1; otherwise the optimal dual
multipliers form a weighted collection with coverage at most 1 and
weighted value above 1. Rows of the core program are generated lazily:
only the most violated subset constraints are added until the current
optimum satisfies all ``2^n - 1`` of them.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Union

from .domain import (
    ONE,
    ZERO,
    Capacity,
    GeneratedCapacity,
    GroundSet,
    ProbMeasure,
    same_ground,
    bits,
)
from .simplex import GE, LE, LinearProgram, Optimal, check_outcome, lp, solve


@dataclass(frozen=True)
class BalancedViolation:
    """Subsets with positive weights, pointwise coverage <= 1 and weighted value > 1."""

    ground: GroundSet
    items: tuple[tuple[int, Fraction], ...]
    value: Fraction

    def coverage(self) -> list[Fraction]:
        cov = [ZERO] * self.ground.n
        for mask, lam in self.items:
            for i in bits(mask):
                cov[i] += lam
        return cov

    def certifies(self, nu: Capacity) -> bool:
        if nu.ground != self.ground:
            return False
        if any(lam <= 0 for _, lam in self.items):
            return False
        if any(c > 1 for c in self.coverage()):
            return False
        total = sum((lam * nu(mask) for mask, lam in self.items), ZERO)
        return total == self.value and total > 1


@dataclass(frozen=True)
class Balanced:
    witness: ProbMeasure

    balanced = True


@dataclass(frozen=True)
class Unbalanced:
    cert: BalancedViolation

    balanced = False


Verdict = Union[Balanced, Unbalanced]


@dataclass(frozen=True)
class CoreSolution:
    """Optimum of the core program; ``multipliers`` maps subset masks to duals."""

    value: Fraction
    point: tuple[Fraction, ...]
    multipliers: dict[int, Fraction]
    program: LinearProgram


def in_core(mu: ProbMeasure, nu: Capacity) -> bool:
    same_ground(mu.ground, nu.ground)
    return all(m >= v for m, v in zip(mu.subset_table(), nu.values))


def core_program(ground: GroundSet, masks, value_of) -> LinearProgram:
    n = ground.n
    rows = [([ONE if m >> i & 1 else ZERO for i in range(n)], GE, value_of(m))
            for m in masks]
    return lp("min", [ONE] * n, rows)


def balancedness_program(nu: Capacity) -> LinearProgram:
    """The weighting program over every nonempty subset, including ``X``."""
    n = nu.ground.n
    masks = range(1, 1 << n)
    rows = [([ONE if m >> i & 1 else ZERO for m in masks], LE, ONE) for i in range(n)]
    return lp("max", [nu(m) for m in masks], rows)


def _subset_sums(weights, n: int) -> list[Fraction]:
    table = [ZERO] * (1 << n)
    for m in range(1, 1 << n):
        low = m & -m
        table[m] = table[m ^ low] + weights[low.bit_length() - 1]
    return table


def solve_core(nu: Capacity, batch: int | None = None, trace: list | None = None) -> CoreSolution:
    """Solve the core program for a dense capacity by lazy row generation."""
    ground = nu.ground
    n = ground.n
    batch = batch or n
    masks = [ground.full]
    while True:
        program = core_program(ground, masks, nu)
        out = solve(program, trace)
        assert isinstance(out, Optimal), out
        sums = _subset_sums(out.point, n)
        present = set(masks)
        violated = sorted((sums[m] - nu(m), m) for m in range(1, 1 << n)
                          if m not in present and nu(m) > sums[m])
        if not violated:
            break
        masks.extend(m for _, m in violated[:batch])
    mults = {m: y for m, y in zip(masks, out.duals)}
    return CoreSolution(out.value, out.point, mults, program)


def _verdict(ground: GroundSet, sol: CoreSolution, value_of) -> Verdict:
    if sol.value == 1:
        return Balanced(ProbMeasure(ground, sol.point))
    items = tuple(sorted((m, y) for m, y in sol.multipliers.items() if y > 0))
    total = sum((y * value_of(m) for m, y in items), ZERO)
    return Unbalanced(BalancedViolation(ground, items, total))


def check_balanced(nu: Capacity, trace: list | None = None) -> Verdict:
    """Decide balancedness; the verdict carries a core element or a violation."""
    sol = solve_core(nu, trace=trace)
    verdict = _verdict(nu.ground, sol, nu)
    # both arms are re-verified against nu directly
    if isinstance(verdict, Balanced):
        if not in_core(verdict.witness, nu):
            raise AssertionError("core witness fails the core inequalities")
    else:
        if not verdict.cert.certifies(nu) or verdict.cert.value != sol.value:
            raise AssertionError("violation certificate does not verify")
    return verdict


def core_element(nu: Capacity) -> ProbMeasure | None:
    verdict = check_balanced(nu)
    return verdict.witness if isinstance(verdict, Balanced) else None


def balancedness_value(nu: Capacity, trace: list | None = None) -> Fraction:
    """Supremum of ``sum lam_A nu(A)`` over weightings with coverage at most 1.

    Solved directly on the weighting program (not through the core
    program), so comparing the two optima is a genuine duality check.
    """
    program = balancedness_program(nu)
    out = solve(program, trace)
    assert isinstance(out, Optimal) and check_outcome(program, out)
    return out.value


def core_element_generated(gen: GeneratedCapacity, trace: list | None = None) -> ProbMeasure | None:
    """Core element of the least capacity above the generators.

    For ``F != X`` the least capacity takes the value ``v_j`` of some
    generator with ``A_j`` inside ``F`` (or 0), and a measure satisfies
    ``mu(F) >= mu(A_j) >= v_j``; so the generator rows plus the row for
    ``X`` already imply every subset constraint.
    """
    ground = gen.ground
    n = ground.n
    rows = [([ONE] * n, GE, ONE)]
    rows += [([ONE if a >> i & 1 else ZERO for i in range(n)], GE, v) for a, v in gen.generators]
    program = lp("min", [ONE] * n, rows)
    out = solve(program, trace)
    assert isinstance(out, Optimal) and check_outcome(program, out)
    if out.value != 1:
        return None
    return ProbMeasure(ground, out.point)

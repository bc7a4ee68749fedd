"""Fourier-Motzkin elimination over exact rationals.

Used as an oracle for core non-emptiness that shares no code with the
simplex solver. Rows are ``(coeffs, rhs)`` meaning ``coeffs @ x >= rhs``.
"""

from __future__ import annotations

from fractions import Fraction

from .domain import ZERO, Capacity

Row = tuple[tuple[Fraction, ...], Fraction]


def _normalize(rows) -> list[Row]:
    """Scale each row so its first nonzero coefficient is +-1; keep the tightest rhs per direction."""
    best: dict[tuple[Fraction, ...], Fraction] = {}
    for coeffs, rhs in rows:
        lead = next((abs(c) for c in coeffs if c), None)
        if lead is None:
            key = coeffs
        else:
            coeffs = tuple(c / lead for c in coeffs)
            rhs = rhs / lead
            key = coeffs
        if key not in best or rhs > best[key]:
            best[key] = rhs
    return sorted(best.items())


def eliminate(rows, var: int) -> list[Row]:
    pos, neg, rest = [], [], []
    for coeffs, rhs in rows:
        c = coeffs[var]
        (pos if c > 0 else neg if c < 0 else rest).append((coeffs, rhs))
    out = list(rest)
    for pc, pr in pos:
        for nc, nr in neg:
            a, b = -nc[var], pc[var]
            out.append((tuple(a * x + b * y for x, y in zip(pc, nc)), a * pr + b * nr))
    return _normalize(out)


def feasible(rows) -> bool:
    rows = _normalize(rows)
    if not rows:
        return True
    n = len(rows[0][0])
    for var in range(n):
        rows = eliminate(rows, var)
    return all(rhs <= 0 for _, rhs in rows)


def core_nonempty(nu: Capacity) -> bool:
    """Feasibility of ``mu >= 0, sum(mu) = 1, mu(A) >= nu(A)`` by elimination.

    The last weight is substituted as ``1 - sum(others)`` so only
    inequalities remain.
    """
    n = nu.ground.n
    last = n - 1
    rows = []
    for mask in range(1, 1 << n):
        if mask >> last & 1:
            # 1 - sum_{x not in A} mu_x >= nu(A)
            coeffs = tuple(Fraction(-1) if not mask >> i & 1 else ZERO for i in range(last))
            rows.append((coeffs, nu(mask) - 1))
        else:
            coeffs = tuple(Fraction(1) if mask >> i & 1 else ZERO for i in range(last))
            rows.append((coeffs, nu(mask)))
    for i in range(last):
        rows.append((tuple(Fraction(int(i == j)) for j in range(last)), ZERO))
    # mu_last = 1 - sum(others) >= 0
    rows.append((tuple(Fraction(-1) for _ in range(last)), Fraction(-1)))
    if last == 0:
        return all(rhs <= 0 for _, rhs in rows)
    return feasible(rows)

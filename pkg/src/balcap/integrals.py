"""Choquet and t-normed integrals on a finite ground set."""

from __future__ import annotations

import enum
import random
from fractions import Fraction

from .balance import Balanced, Unbalanced, check_balanced
from .domain import ONE, ZERO, Capacity, FuncOnX, same_ground
from .errors import NegativeFunction, OutOfRange


class TNorm(enum.Enum):
    """The supported continuous t-norms."""

    MIN = "min"
    PRODUCT = "product"
    LUKASIEWICZ = "lukasiewicz"

    def __call__(self, a: Fraction, b: Fraction) -> Fraction:
        return apply_tnorm(self, a, b)


def apply_tnorm(tnorm: TNorm, a: Fraction, b: Fraction) -> Fraction:
    a, b = Fraction(a), Fraction(b)
    if not (0 <= a <= 1 and 0 <= b <= 1):
        raise OutOfRange(f"t-norm arguments must lie in [0, 1], got {a}, {b}")
    if tnorm is TNorm.MIN:
        return min(a, b)
    if tnorm is TNorm.PRODUCT:
        return a * b
    return max(ZERO, a + b - 1)


def choquet(nu: Capacity, f: FuncOnX) -> Fraction:
    """Layer-cake sum ``sum_j (v_j - v_{j-1}) nu({f >= v_j})`` over the distinct values of ``f``."""
    same_ground(nu.ground, f.ground)
    if any(v < 0 for v in f.values):
        raise NegativeFunction("Choquet integral needs a nonnegative function")
    total = ZERO
    prev = ZERO
    for v in sorted(set(f.values)):
        if v > 0:
            total += (v - prev) * nu(f.level_set(v))
            prev = v
    return total


def tnorm_integral(nu: Capacity, f: FuncOnX, tnorm: TNorm) -> Fraction:
    """``max_{t in [0,1]} nu({f >= t}) * t`` evaluated on finitely many levels.

    With the distinct values ``0 = v_0 < v_1 < ... < v_k`` of ``f`` (0
    added), the level set ``{f >= t}`` is the same set for every ``t`` in
    ``(v_{j-1}, v_j]``, so there ``t -> nu({f >= t}) * t`` is nondecreasing
    (the t-norm is monotone) and its supremum is attained at ``t = v_j``.
    Above ``v_k`` the level set is empty and the term is 0. Hence the
    maximum over ``t in {0} union values(f)`` is exact.
    """
    same_ground(nu.ground, f.ground)
    if any(not 0 <= v <= 1 for v in f.values):
        raise OutOfRange("t-normed integral needs a function with values in [0, 1]")
    levels = {ZERO, *f.values}
    return max(tnorm(nu(f.level_set(t)), t) for t in levels)


# --- axiom sampling ----------------------------------------------------------

def random_rational(rng: random.Random, denominators=(1, 2, 3, 4, 5, 6, 8, 12), high=1) -> Fraction:
    d = rng.choice(denominators)
    return Fraction(rng.randint(0, d * high), d)


def random_comonotone_pair(rng: random.Random, ground, high=1) -> tuple[FuncOnX, FuncOnX]:
    """Two functions nondecreasing along one random ordering of the points."""
    n = ground.n
    order = list(range(n))
    rng.shuffle(order)
    pair = []
    for _ in range(2):
        steps = sorted(random_rational(rng, high=high) for _ in range(n))
        vals = [ZERO] * n
        for rank, i in enumerate(order):
            vals[i] = steps[rank]
        pair.append(FuncOnX(ground, tuple(vals)))
    return pair[0], pair[1]


def is_comonotone_additive_sample(nu: Capacity, trials: int, seed: int = 0) -> bool:
    """Check additivity on comonotone pairs and positive homogeneity of ``choquet``."""
    rng = random.Random(seed)
    g = nu.ground
    if choquet(nu, FuncOnX.constant(g, ONE)) != 1:
        return False
    for _ in range(trials):
        f, h = random_comonotone_pair(rng, g, high=3)
        if choquet(nu, f.combine(h, lambda a, b: a + b)) != choquet(nu, f) + choquet(nu, h):
            return False
        c = random_rational(rng, high=4)
        if choquet(nu, f.map(lambda v: c * v)) != c * choquet(nu, f):
            return False
        if f <= f.combine(h, max) and choquet(nu, f) > choquet(nu, f.combine(h, max)):
            return False
    return True


def is_comonotone_maxitive_sample(nu: Capacity, tnorm: TNorm, trials: int, seed: int = 0) -> bool:
    """Check maxitivity on comonotone pairs and ``c * f`` homogeneity of ``tnorm_integral``."""
    rng = random.Random(seed)
    g = nu.ground
    if tnorm_integral(nu, FuncOnX.constant(g, ONE), tnorm) != 1:
        return False
    for _ in range(trials):
        f, h = random_comonotone_pair(rng, g)
        joined = f.combine(h, max)
        if tnorm_integral(nu, joined, tnorm) != max(tnorm_integral(nu, f, tnorm),
                                                    tnorm_integral(nu, h, tnorm)):
            return False
        c = random_rational(rng)
        if tnorm_integral(nu, f.map(lambda v: tnorm(c, v)), tnorm) != tnorm(c, tnorm_integral(nu, f, tnorm)):
            return False
    return True


def balanced_functional(nu: Capacity, kind: TNorm | None = None) -> bool:
    """Whether the integral functional of ``nu`` is balanced.

    ``kind=None`` selects the Choquet integral, a :class:`TNorm` the
    t-normed one. On a finite discrete space indicators are continuous,
    so ``phi_i = chi_{A_i}`` is an admissible choice, and the functional
    sends ``chi_A`` to ``nu(A)``: it is balanced iff ``nu`` is. For an
    unbalanced ``nu`` the violation is re-checked through the integral,
    since any ``phi_i >= chi_{A_i}`` only raises each term.
    """
    verdict = check_balanced(nu)
    if isinstance(verdict, Balanced):
        return True
    assert isinstance(verdict, Unbalanced)
    g = nu.ground
    if kind is None:
        total = sum((lam * choquet(nu, FuncOnX.indicator(g, a)) for a, lam in verdict.cert.items), ZERO)
    else:
        total = sum((lam * tnorm_integral(nu, FuncOnX.indicator(g, a), kind)
                     for a, lam in verdict.cert.items), ZERO)
    assert total > 1
    return False

"""Dirac unit, pushforward along point maps, and monad multiplication.

Monad multiplication collapses a capacity on capacity-space to a capacity
on the base set:

    mult(C)(F) = sup{ t in [0,1] : C({c : c(F) >= t}) >= t }.

Capacity-space is infinite, so only second-level capacities presented by
generators are supported here: ``C`` is the least capacity with
``C({c : c(A_j) >= s_j}) >= v_j`` for each generator ``(A_j, s_j, v_j)``.
"""

from __future__ import annotations

import functools
from dataclasses import dataclass
from fractions import Fraction

from .balance import Balanced, Unbalanced, check_balanced, in_core
from .domain import (
    ONE,
    ZERO,
    Capacity,
    GeneratedCapacity,
    GroundSet,
    ProbMeasure,
    bits,
    is_subset,
    realize,
    render_rational,
    same_ground,
)
from .errors import BadPoint, GroundMismatch, OutOfRange, TooLarge


@dataclass(frozen=True)
class PointMap:
    source: GroundSet
    target: GroundSet
    images: tuple[int, ...]

    def __post_init__(self):
        images = tuple(int(y) for y in self.images)
        object.__setattr__(self, "images", images)
        if len(images) != self.source.n:
            raise GroundMismatch(f"map needs {self.source.n} images, got {len(images)}")
        if any(not 0 <= y < self.target.n for y in images):
            raise BadPoint("map image outside the target ground set")

    @classmethod
    def identity(cls, ground: GroundSet) -> PointMap:
        return cls(ground, ground, tuple(range(ground.n)))

    def __call__(self, x: int) -> int:
        return self.images[x]

    def preimage(self, mask: int) -> int:
        return sum(1 << x for x, y in enumerate(self.images) if mask >> y & 1)

    def then(self, g: PointMap) -> PointMap:
        """The composite ``g . self``."""
        same_ground(self.target, g.source)
        return PointMap(self.source, g.target, tuple(g(y) for y in self.images))


def dirac(ground: GroundSet, x: int) -> Capacity:
    if not 0 <= x < ground.n:
        raise BadPoint(f"point index {x} outside ground set of size {ground.n}")
    return Capacity.from_function(ground, lambda m: ONE if m >> x & 1 else ZERO)


def pushforward(f: PointMap, nu: Capacity) -> Capacity:
    same_ground(f.source, nu.ground)
    return Capacity.from_function(f.target, lambda m: nu(f.preimage(m)))


def push_measure(f: PointMap, mu: ProbMeasure) -> ProbMeasure:
    same_ground(f.source, mu.ground)
    w = [ZERO] * f.target.n
    for x, y in enumerate(f.images):
        w[y] += mu.weights[x]
    return ProbMeasure(f.target, tuple(w))


@dataclass(frozen=True)
class SecondLevelCapacity:
    """Generators ``(A_j, s_j, v_j)``: value at least ``v_j`` on ``{c : c(A_j) >= s_j}``."""

    ground: GroundSet
    generators: tuple[tuple[int, Fraction, Fraction], ...] = ()

    def __post_init__(self):
        gens = tuple((int(a), Fraction(s), Fraction(v)) for a, s, v in self.generators)
        object.__setattr__(self, "generators", gens)
        for a, s, v in gens:
            if a == 0 or a > self.ground.full:
                raise BadPoint(f"generator set mask {a} is empty or outside the ground set")
            if not (0 < s <= 1 and 0 < v <= 1):
                raise OutOfRange("generator threshold and value must lie in (0, 1]")


def monad_mult(big: SecondLevelCapacity) -> Capacity:
    """Closed form of the multiplication for a generator-presented capacity.

    Write ``G_j = {c : c(A_j) >= s_j}`` and ``F^t = {c : c(F) >= t}``.
    For ``F != X`` and ``t > 0``:

    * ``F^t`` is never all of capacity-space: the Dirac capacity at a
      point outside ``F`` has value 0 on ``F``. So ``C(F^t)`` is the
      largest ``v_j`` with ``G_j`` inside ``F^t`` (or 0).
    * ``G_j`` lies inside ``F^t`` iff ``A_j`` is inside ``F`` and
      ``s_j >= t``. If ``A_j`` is inside ``F``, monotonicity gives
      ``c(F) >= c(A_j) >= s_j >= t``. If some ``x`` in ``A_j`` is outside
      ``F``, the Dirac capacity at ``x`` is in ``G_j`` but not in ``F^t``.
      If ``s_j < t``, the least capacity with value ``s_j`` on ``A_j`` is
      in ``G_j`` and has value at most ``s_j`` on ``F``.

    Thus ``C(F^t) >= t`` iff some generator with ``A_j`` inside ``F`` has
    ``t <= s_j`` and ``t <= v_j``, and the supremum is the largest
    ``min(s_j, v_j)`` over such generators (0 if none). For ``F = X``
    every ``F^t`` is the whole space and the value is 1.
    """
    g = big.ground

    def value(mask: int) -> Fraction:
        if mask == g.full:
            return ONE
        return max((min(s, v) for a, s, v in big.generators if is_subset(a, mask)), default=ZERO)

    return Capacity.from_function(g, value)


def grid_capacities(ground: GroundSet, k: int) -> list[tuple[Fraction, ...]]:
    """All capacities on ``ground`` with values in ``{0, 1/k, ..., 1}``."""
    return list(_grid_family(ground.n, k))


@functools.lru_cache(maxsize=None)
def _grid_family(n: int, k: int) -> tuple[tuple[Fraction, ...], ...]:
    size = 1 << n
    grid = [Fraction(i, k) for i in range(k + 1)]
    out = []
    vals = [ZERO] * size

    def fill(m: int) -> None:
        if m == size - 1:
            vals[m] = ONE
            out.append(tuple(vals))
            return
        # numeric order visits every subset of m before m
        floor = max((vals[m ^ (1 << i)] for i in bits(m)), default=ZERO)
        for q in grid:
            if q >= floor:
                vals[m] = q
                fill(m + 1)

    fill(1)
    return tuple(out)


def monad_mult_oracle(big: SecondLevelCapacity, k: int, balanced_only: bool = False) -> Capacity:
    """Evaluate the sup formula by brute force over a finite grid of capacities.

    The grid family stands in for capacity-space; the second-level
    capacity is realized as the least set function on that family above
    the generators, and the sup runs over ``t`` in ``{0, 1/k, ..., 1}``.
    """
    g = big.ground
    if g.n > 3 or k > 4:
        raise TooLarge("oracle limited to 3 points and grid denominator 4")
    family = grid_capacities(g, k)
    if balanced_only:
        family = [c for c in family if check_balanced(Capacity(g, c)).balanced]
    everything = frozenset(range(len(family)))
    upper_sets = [(frozenset(i for i, c in enumerate(family) if c[a] >= s), v)
                  for a, s, v in big.generators]

    def second_level(members: frozenset) -> Fraction:
        if members == everything:
            return ONE
        return max((v for gen, v in upper_sets if gen <= members), default=ZERO)

    levels = [Fraction(i, k) for i in range(k + 1)]

    def value(mask: int) -> Fraction:
        best = ZERO
        for t in levels:
            level = frozenset(i for i, c in enumerate(family) if c[mask] >= t)
            if second_level(level) >= t:
                best = max(best, t)
        return best

    return Capacity.from_function(g, value)


# --- the non-submonad construction -------------------------------------------

PAPER_LABELS = ("1", "2", "3", "4", "5", "6")
PAPER_SETS = (("1", "2", "3"), ("1", "4", "5"), ("2", "5", "6"), ("3", "4", "6"))
TWO_THIRDS = Fraction(2, 3)


def paper_ground() -> GroundSet:
    return GroundSet(PAPER_LABELS)


def nu0_generators(sets=PAPER_SETS) -> GeneratedCapacity:
    g = paper_ground()
    return GeneratedCapacity(g, tuple((g.mask(s), TWO_THIRDS) for s in sets))


def nu_l_generators(l: int, sets=PAPER_SETS) -> GeneratedCapacity:
    """Generators of ``nu_l``: every set except the ``l``-th (1-based) at 2/3."""
    g = paper_ground()
    return GeneratedCapacity(g, tuple((g.mask(s), TWO_THIRDS)
                                      for j, s in enumerate(sets, 1) if j != l))


def paper_second_level(sets=PAPER_SETS) -> SecondLevelCapacity:
    g = paper_ground()
    return SecondLevelCapacity(g, tuple((g.mask(s), TWO_THIRDS, TWO_THIRDS) for s in sets))


def _check(name: str, ok: bool, detail: str) -> dict:
    return {"name": name, "pass": bool(ok), "detail": detail}


def repro_counterexample(sets=PAPER_SETS, step_b=None) -> dict:
    """Replay the construction showing balanced capacities are not closed
    under monad multiplication.

    ``sets`` replaces the four generating sets and ``step_b`` the
    generators tested for unbalancedness; both exist for negative controls.
    """
    g = paper_ground()
    masks = [g.mask(s) for s in sets]
    half = Fraction(1, 2)
    nu0 = realize(nu0_generators(sets))
    checks = []

    cover = [sum((half for m in masks if m >> x & 1), ZERO) for x in range(g.n)]
    weighted = sum((half * nu0(m) for m in masks), ZERO)
    checks.append(_check(
        "half-weights cover every point exactly once", all(c == 1 for c in cover),
        "coverage " + " ".join(f"{lab}:{render_rational(c)}" for lab, c in zip(g.labels, cover))
        + f"; sum of (1/2)nu0(A_i) = {render_rational(weighted)}"))

    gen_b = nu0_generators(sets) if step_b is None else step_b
    verdict = check_balanced(realize(gen_b))
    if isinstance(verdict, Unbalanced):
        items = ", ".join(f"{{{g.key(m)}}}:{render_rational(lam)}" for m, lam in verdict.cert.items)
        detail = f"unbalanced, LP value {render_rational(verdict.cert.value)}, certificate {items}"
    else:
        detail = "balanced, core witness " + " ".join(render_rational(w) for w in verdict.witness.weights)
    checks.append(_check("nu0 is unbalanced", isinstance(verdict, Unbalanced), detail))

    ok, parts = True, []
    for l in range(1, len(sets) + 1):
        nu_l = realize(nu_l_generators(l, sets))
        v = check_balanced(nu_l)
        good = isinstance(v, Balanced) and in_core(v.witness, nu_l)
        ok &= good
        parts.append(f"nu_{l}: " + ("balanced, witness " + " ".join(render_rational(w) for w in v.witness.weights)
                                   if good else "NOT balanced"))
    checks.append(_check("every nu_l is balanced", ok, "; ".join(parts)))

    mult = monad_mult(paper_second_level(sets))
    diff = [m for m in g.subsets() if mult(m) != nu0(m)]
    checks.append(_check(
        "monad multiplication of the second-level capacity equals nu0", not diff,
        "equal on all 64 subsets" if not diff else
        f"differs on {len(diff)} subsets, first {{{g.key(diff[0])}}}"))

    m = len(sets)
    coeff = TWO_THIRDS * Fraction(m, m - 1)
    checks.append(_check(
        "final inequality of the second-level balancedness argument", coeff <= 1,
        f"a + {render_rational(coeff)} b <= a + b = 1 for a, b >= 0; only this "
        "inequality is checked, not balancedness on the infinite capacity-space"))
    return {"checks": checks}

"""Ground sets, subsets as bitmasks, capacities, measures and functions.

Every scalar is a :class:`fractions.Fraction`. A subset of an ``n``-point
ground set is an ``int`` mask whose bit ``i`` marks the point with index
``i``. On a finite discrete space every subset is closed and the
upper-semicontinuity axiom of a capacity holds trivially, so only
normalization, monotonicity and the range ``[0, 1]`` are checked.
"""

from __future__ import annotations

import re
import warnings
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Callable, Iterable, Iterator, Mapping, Sequence

from .errors import (
    BadPoint,
    EmptyNotZero,
    FullNotOne,
    GroundMismatch,
    GroundTooLarge,
    MissingEntry,
    NotMonotone,
    OutOfRange,
    ParseError,
    ValueOutOfRange,
)

DEFAULT_MAX_N = 16

ZERO = Fraction(0)
ONE = Fraction(1)

_RATIONAL_RE = re.compile(r"^\s*(-?\d+)(?:\s*/\s*(\d+))?\s*$")


# --- rationals ---------------------------------------------------------------

def parse_rational(text: str | int | Fraction) -> Fraction:
    """Parse ``"p/q"`` or ``"p"``; the denominator must be positive."""
    if isinstance(text, Fraction):
        return text
    if isinstance(text, int) and not isinstance(text, bool):
        return Fraction(text)
    if not isinstance(text, str):
        raise ParseError(f"expected a rational string 'p/q', got {text!r}")
    m = _RATIONAL_RE.match(text)
    if m is None:
        raise ParseError(f"malformed rational {text!r}")
    num = int(m.group(1))
    den = int(m.group(2)) if m.group(2) is not None else 1
    if den <= 0:
        raise ParseError(f"denominator must be positive in {text!r}")
    return Fraction(num, den)


def render_rational(q: Fraction) -> str:
    q = Fraction(q)
    if q.denominator == 1:
        return str(q.numerator)
    return f"{q.numerator}/{q.denominator}"


# --- masks -------------------------------------------------------------------

def popcount(mask: int) -> int:
    return bin(mask).count("1")


def bits(mask: int) -> Iterator[int]:
    """Indices of the set bits of ``mask`` in increasing order."""
    i = 0
    while mask:
        if mask & 1:
            yield i
        mask >>= 1
        i += 1


def is_subset(a: int, b: int) -> bool:
    return a & ~b == 0


# --- ground sets -------------------------------------------------------------

@dataclass(frozen=True)
class GroundSet:
    labels: tuple[str, ...]
    max_n: int = field(default=DEFAULT_MAX_N, compare=False, repr=False)

    def __post_init__(self):
        labels = tuple(str(x) for x in self.labels)
        object.__setattr__(self, "labels", labels)
        if not labels:
            raise BadPoint("ground set needs at least one point")
        if len(set(labels)) != len(labels):
            raise BadPoint(f"duplicate labels in {list(labels)}")
        if len(labels) > self.max_n:
            raise GroundTooLarge(
                f"ground set has {len(labels)} points; cap is {self.max_n} "
                "(raise it with --max-n)")
        if self.max_n > DEFAULT_MAX_N and len(labels) > DEFAULT_MAX_N:
            warnings.warn(
                f"dense tables on {len(labels)} points hold "
                f"{1 << len(labels)} entries", ResourceWarning, stacklevel=3)

    @classmethod
    def of_size(cls, n: int, max_n: int = DEFAULT_MAX_N) -> GroundSet:
        return cls(tuple(str(i) for i in range(n)), max_n=max_n)

    @property
    def n(self) -> int:
        return len(self.labels)

    @property
    def full(self) -> int:
        return (1 << self.n) - 1

    def index(self, label: str) -> int:
        try:
            return self.labels.index(str(label))
        except ValueError:
            raise BadPoint(f"unknown label {label!r}") from None

    def mask(self, labels: Iterable[str]) -> int:
        m = 0
        for lab in labels:
            m |= 1 << self.index(lab)
        return m

    def labels_of(self, mask: int) -> list[str]:
        return [self.labels[i] for i in bits(mask)]

    def key(self, mask: int) -> str:
        """Comma-joined labels of ``mask`` in ground order; ``""`` for the empty set."""
        return ",".join(self.labels_of(mask))

    def subsets(self) -> range:
        return range(1 << self.n)


def same_ground(a: GroundSet, b: GroundSet) -> None:
    if a != b:
        raise GroundMismatch(f"ground sets differ: {list(a.labels)} vs {list(b.labels)}")


# --- capacities --------------------------------------------------------------

@dataclass(frozen=True)
class Capacity:
    """Monotone set function with value 0 on the empty set and 1 on the ground.

    ``values[mask]`` is the value of the subset ``mask``. Construction
    validates every axiom.
    """

    ground: GroundSet
    values: tuple[Fraction, ...]

    def __post_init__(self):
        vals = tuple(Fraction(v) for v in self.values)
        object.__setattr__(self, "values", vals)
        if len(vals) != 1 << self.ground.n:
            raise MissingEntry(
                f"expected {1 << self.ground.n} values, got {len(vals)}")
        _check_axioms(self.ground, vals)

    def __call__(self, mask: int) -> Fraction:
        return self.values[mask]

    @classmethod
    def from_function(cls, ground: GroundSet, fn: Callable[[int], Fraction]) -> Capacity:
        return cls(ground, tuple(Fraction(fn(m)) for m in ground.subsets()))

    def is_additive(self) -> bool:
        singles = [self.values[1 << i] for i in range(self.ground.n)]
        return all(v == sum((singles[i] for i in bits(m)), ZERO)
                   for m, v in enumerate(self.values))


def _check_axioms(ground: GroundSet, vals: Sequence[Fraction]) -> None:
    if vals[0] != 0:
        raise EmptyNotZero(f"value of the empty set is {render_rational(vals[0])}, not 0")
    full = ground.full
    if vals[full] != 1:
        raise FullNotOne(
            f"value of the whole ground set is {render_rational(vals[full])}, not 1")
    for m, v in enumerate(vals):
        if not 0 <= v <= 1:
            raise ValueOutOfRange(
                f"value {render_rational(v)} of {{{ground.key(m)}}} is outside [0, 1]", m)
    # checking each cover relation S < S+x is enough for monotonicity
    for m, v in enumerate(vals):
        for i in range(ground.n):
            bit = 1 << i
            if not m & bit and vals[m | bit] < v:
                raise NotMonotone(
                    f"not monotone: {{{ground.key(m)}}} has value {render_rational(v)} "
                    f"but its superset {{{ground.key(m | bit)}}} has "
                    f"{render_rational(vals[m | bit])}", m, m | bit)


def validate_capacity(table: Mapping[int, Fraction], ground: GroundSet) -> Capacity:
    """Build a :class:`Capacity` from a mask-keyed table, rejecting missing entries."""
    missing = [m for m in ground.subsets() if m not in table]
    if missing:
        raise MissingEntry(f"no value given for subset {{{ground.key(missing[0])}}}")
    return Capacity(ground, tuple(table[m] for m in ground.subsets()))


@dataclass(frozen=True)
class GeneratedCapacity:
    """The least capacity with ``value(A_j) >= v_j`` for each generator ``(A_j, v_j)``."""

    ground: GroundSet
    generators: tuple[tuple[int, Fraction], ...] = ()

    def __post_init__(self):
        gens = tuple((int(a), Fraction(v)) for a, v in self.generators)
        object.__setattr__(self, "generators", gens)
        for a, v in gens:
            if a == 0 or a > self.ground.full:
                raise BadPoint(f"generator set mask {a} is empty or outside the ground set")
            if not 0 < v <= 1:
                raise OutOfRange(f"generator value {render_rational(v)} not in (0, 1]")

    def __call__(self, mask: int) -> Fraction:
        if mask == self.ground.full:
            return ONE
        return max((v for a, v in self.generators if is_subset(a, mask)), default=ZERO)


def realize(gen: GeneratedCapacity, max_n: int = DEFAULT_MAX_N) -> Capacity:
    if gen.ground.n > max_n:
        raise GroundTooLarge(
            f"dense table would need 2^{gen.ground.n} entries; cap is 2^{max_n}")
    return Capacity.from_function(gen.ground, gen)


# --- probability measures ----------------------------------------------------

@dataclass(frozen=True)
class ProbMeasure:
    ground: GroundSet
    weights: tuple[Fraction, ...]

    def __post_init__(self):
        w = tuple(Fraction(x) for x in self.weights)
        object.__setattr__(self, "weights", w)
        if len(w) != self.ground.n:
            raise GroundMismatch(f"expected {self.ground.n} weights, got {len(w)}")
        if any(x < 0 for x in w):
            raise OutOfRange("measure weights must be nonnegative")
        if sum(w, ZERO) != 1:
            raise OutOfRange(f"measure weights sum to {render_rational(sum(w, ZERO))}, not 1")

    @classmethod
    def uniform(cls, ground: GroundSet, support: int | None = None) -> ProbMeasure:
        support = ground.full if support is None else support
        k = popcount(support)
        return cls(ground, tuple(Fraction(1, k) if support >> i & 1 else ZERO
                                 for i in range(ground.n)))

    @classmethod
    def point_mass(cls, ground: GroundSet, x: int) -> ProbMeasure:
        if not 0 <= x < ground.n:
            raise BadPoint(f"point index {x} outside ground set")
        return cls(ground, tuple(ONE if i == x else ZERO for i in range(ground.n)))

    def __call__(self, mask: int) -> Fraction:
        return measure_of(self, mask)

    def subset_table(self) -> list[Fraction]:
        """Measure of every subset, indexed by mask."""
        table = [ZERO] * (1 << self.ground.n)
        for m in range(1, len(table)):
            low = m & -m
            table[m] = table[m ^ low] + self.weights[low.bit_length() - 1]
        return table

    def as_capacity(self) -> Capacity:
        return Capacity(self.ground, tuple(self.subset_table()))


def measure_of(mu: ProbMeasure, mask: int) -> Fraction:
    return sum((mu.weights[i] for i in bits(mask)), ZERO)


# --- functions on the ground set ---------------------------------------------

@dataclass(frozen=True)
class FuncOnX:
    ground: GroundSet
    values: tuple[Fraction, ...]

    def __post_init__(self):
        vals = tuple(Fraction(v) for v in self.values)
        object.__setattr__(self, "values", vals)
        if len(vals) != self.ground.n:
            raise GroundMismatch(f"expected {self.ground.n} values, got {len(vals)}")

    @classmethod
    def constant(cls, ground: GroundSet, c) -> FuncOnX:
        return cls(ground, (Fraction(c),) * ground.n)

    @classmethod
    def indicator(cls, ground: GroundSet, mask: int, height=ONE) -> FuncOnX:
        return cls(ground, tuple(Fraction(height) if mask >> i & 1 else ZERO
                                 for i in range(ground.n)))

    def level_set(self, t: Fraction) -> int:
        """Mask of ``{x : f(x) >= t}``."""
        return sum(1 << i for i, v in enumerate(self.values) if v >= t)

    def map(self, fn: Callable[[Fraction], Fraction]) -> FuncOnX:
        return FuncOnX(self.ground, tuple(fn(v) for v in self.values))

    def combine(self, other: FuncOnX, fn: Callable[[Fraction, Fraction], Fraction]) -> FuncOnX:
        same_ground(self.ground, other.ground)
        return FuncOnX(self.ground, tuple(fn(a, b) for a, b in zip(self.values, other.values)))

    def __le__(self, other: FuncOnX) -> bool:
        same_ground(self.ground, other.ground)
        return all(a <= b for a, b in zip(self.values, other.values))


def comonotone(f: FuncOnX, g: FuncOnX) -> bool:
    same_ground(f.ground, g.ground)
    fv, gv = f.values, g.values
    n = len(fv)
    return all((fv[i] - fv[j]) * (gv[i] - gv[j]) >= 0
               for i in range(n) for j in range(i + 1, n))

import random
from fractions import Fraction

import pytest
from hypothesis import given
from hypothesis import strategies as st

import corpus
from balcap.domain import (
    Capacity,
    FuncOnX,
    GeneratedCapacity,
    GroundSet,
    ProbMeasure,
    comonotone,
    is_subset,
    measure_of,
    parse_rational,
    realize,
    render_rational,
    validate_capacity,
)
from balcap.errors import (
    BadPoint,
    EmptyNotZero,
    FullNotOne,
    GroundMismatch,
    GroundTooLarge,
    MissingEntry,
    NotMonotone,
    ParseError,
    ValueOutOfRange,
)

fractions = st.fractions(max_denominator=10**6)


@given(fractions)
def test_rational_round_trip(q):
    assert parse_rational(render_rational(q)) == q


@pytest.mark.parametrize("text,expected", [("2/3", Fraction(2, 3)), ("-4/6", Fraction(-2, 3)),
                                           ("7", Fraction(7)), ("0/5", Fraction(0))])
def test_parse_rational(text, expected):
    assert parse_rational(text) == expected


@pytest.mark.parametrize("text", ["2/0", "1/-2", "a/b", "1.5", "", "1//2"])
def test_parse_rational_rejects(text):
    with pytest.raises(ParseError):
        parse_rational(text)


def test_render_reduces():
    assert render_rational(Fraction(4, 6)) == "2/3"
    assert render_rational(Fraction(6, 3)) == "2"


def test_ground_set_limits():
    with pytest.raises(BadPoint):
        GroundSet(())
    with pytest.raises(BadPoint):
        GroundSet(("a", "a"))
    with pytest.raises(GroundTooLarge):
        GroundSet.of_size(17)
    with pytest.warns(ResourceWarning):
        assert GroundSet.of_size(17, max_n=17).n == 17


def test_ground_keys(paper):
    m = paper.mask(["3", "1"])
    assert m == 0b101
    assert paper.key(m) == "1,3"
    assert paper.key(0) == ""


def test_validate_nu0_dense_table(paper, nu0):
    table = {m: nu0(m) for m in paper.subsets()}
    assert validate_capacity(table, paper) == nu0


def _table(g, **overrides):
    vals = {m: Fraction(0) for m in g.subsets()}
    vals[g.full] = Fraction(1)
    vals.update(overrides)
    return vals


def test_validate_empty_not_zero():
    g = GroundSet.of_size(2)
    with pytest.raises(EmptyNotZero):
        validate_capacity(_table(g, **{}) | {0: Fraction(1, 10)}, g)


def test_validate_full_not_one():
    g = GroundSet.of_size(2)
    with pytest.raises(FullNotOne):
        validate_capacity(_table(g) | {3: Fraction(1, 2)}, g)


def test_validate_not_monotone_names_pair():
    g = GroundSet.of_size(3)
    table = _table(g) | {0b001: Fraction(1, 2), 0b011: Fraction(1, 4)}
    with pytest.raises(NotMonotone) as info:
        validate_capacity(table, g)
    assert (info.value.smaller, info.value.larger) == (0b001, 0b011)
    assert "{0}" in str(info.value) and "{0,1}" in str(info.value)


def test_validate_out_of_range():
    g = GroundSet.of_size(2)
    with pytest.raises(ValueOutOfRange):
        validate_capacity(_table(g) | {1: Fraction(3, 2), 2: Fraction(0)}, g)


def test_validate_missing_entry():
    g = GroundSet.of_size(2)
    table = _table(g)
    del table[2]
    with pytest.raises(MissingEntry):
        validate_capacity(table, g)


def test_realize_nu0(paper, nu0):
    assert nu0(paper.mask("123")) == Fraction(2, 3)
    assert nu0(paper.mask("12")) == 0
    assert nu0(paper.full) == 1
    # 2/3 exactly on proper supersets of some A_i
    sets = [paper.mask(s) for s in ("123", "145", "256", "346")]
    for m in paper.subsets():
        if m == paper.full:
            continue
        expected = Fraction(2, 3) if any(is_subset(a, m) for a in sets) else 0
        assert nu0(m) == expected


def test_realize_empty_generators():
    g = GroundSet.of_size(3)
    nu = realize(GeneratedCapacity(g, ()))
    assert all(v == 0 for v in nu.values[:-1]) and nu.values[-1] == 1


def test_realize_single_point_is_dirac():
    g = GroundSet.of_size(3)
    nu = realize(GeneratedCapacity(g, ((0b010, Fraction(1)),)))
    assert all(nu(m) == (1 if m & 0b010 else 0) for m in g.subsets())


def test_realize_cap():
    g = GroundSet.of_size(5)
    with pytest.raises(GroundTooLarge):
        realize(GeneratedCapacity(g, ()), max_n=4)


def test_generator_validation():
    g = GroundSet.of_size(2)
    with pytest.raises(BadPoint):
        GeneratedCapacity(g, ((0, Fraction(1, 2)),))
    with pytest.raises(ValueError):
        GeneratedCapacity(g, ((1, Fraction(0)),))


@pytest.mark.parametrize("seed", range(40))
def test_realize_is_minimal(seed):
    rng = random.Random(seed)
    g = corpus.ground(rng.randint(1, 4))
    gens = tuple((rng.randint(1, g.full), corpus.rational(rng) or Fraction(1))
                 for _ in range(rng.randint(0, 3)))
    least = realize(GeneratedCapacity(g, gens))
    for _ in range(100):
        other = corpus.capacity(rng, g)
        if not all(other(a) >= v for a, v in gens):
            # lift it above the generators: the pointwise max is again a capacity
            bump = Capacity.from_function(
                g, lambda m: max([other(m)] + [v for a, v in gens if is_subset(a, m)]))
            other = bump
        assert all(other(a) >= v for a, v in gens)
        assert all(least(m) <= other(m) for m in g.subsets())


def test_measure_of():
    g = GroundSet.of_size(6)
    u = ProbMeasure.uniform(g)
    assert measure_of(u, 0b111) == Fraction(1, 2)
    assert measure_of(u, 0) == 0
    assert measure_of(u, g.full) == 1


@given(st.integers(0, 63), st.integers(0, 63), st.lists(st.integers(0, 9), min_size=6, max_size=6))
def test_measure_additivity(s, t, raw):
    g = GroundSet.of_size(6)
    if not any(raw):
        raw[0] = 1
    mu = ProbMeasure(g, tuple(Fraction(r, sum(raw)) for r in raw))
    assert mu(s | t) + mu(s & t) == mu(s) + mu(t)


def test_prob_measure_validation():
    g = GroundSet.of_size(2)
    with pytest.raises(ValueError):
        ProbMeasure(g, (Fraction(1, 2), Fraction(1, 3)))
    with pytest.raises(ValueError):
        ProbMeasure(g, (Fraction(3, 2), Fraction(-1, 2)))


def test_subset_table_matches_measure_of():
    g = GroundSet.of_size(4)
    mu = corpus.measure(random.Random(3), g)
    assert mu.subset_table() == [measure_of(mu, m) for m in g.subsets()]
    assert mu.as_capacity().is_additive()


def test_comonotone_examples():
    g = GroundSet.of_size(4)
    rng = random.Random(0)
    arbitrary = corpus.function(rng, g)
    assert comonotone(FuncOnX.constant(g, Fraction(1, 3)), arbitrary)
    a = 0b0011
    assert not comonotone(FuncOnX.indicator(g, a), FuncOnX.indicator(g, g.full ^ a))
    assert comonotone(arbitrary, arbitrary)


def test_comonotone_ground_mismatch():
    with pytest.raises(GroundMismatch):
        comonotone(FuncOnX.constant(GroundSet.of_size(2), 1), FuncOnX.constant(GroundSet.of_size(3), 1))


vectors = st.lists(st.fractions(0, 5, max_denominator=6), min_size=4, max_size=4)


@given(vectors, vectors)
def test_comonotone_symmetric(a, b):
    g = GroundSet.of_size(4)
    f, h = FuncOnX(g, a), FuncOnX(g, b)
    assert comonotone(f, h) == comonotone(h, f)


@given(st.permutations(range(4)), vectors, vectors)
def test_monotone_along_common_order_is_comonotone(order, a, b):
    g = GroundSet.of_size(4)
    fv, hv = [0] * 4, [0] * 4
    for rank, i in enumerate(order):
        fv[i], hv[i] = sorted(a)[rank], sorted(b)[rank]
    assert comonotone(FuncOnX(g, fv), FuncOnX(g, hv))


def test_level_set():
    g = GroundSet.of_size(3)
    f = FuncOnX(g, (Fraction(0), Fraction(1, 2), Fraction(1)))
    assert f.level_set(Fraction(1, 2)) == 0b110
    assert f.level_set(Fraction(0)) == 0b111
    assert f.level_set(Fraction(2)) == 0


def test_capacity_is_hashable_and_immutable(nu0):
    assert hash(nu0) == hash(Capacity(nu0.ground, nu0.values))
    with pytest.raises(AttributeError):
        nu0.values = ()

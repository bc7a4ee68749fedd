"""Exit criteria. Each test is one criterion; the terminal summary prints one
PASS/FAIL line per criterion."""

import itertools
import json
import random
import subprocess
import sys
import time
from fractions import Fraction

import pytest

import corpus
from balcap.balance import Balanced, Unbalanced, balancedness_value, check_balanced, in_core, solve_core
from balcap.domain import FuncOnX, GroundSet, realize
from balcap.fme import core_nonempty
from balcap.functor import (
    PAPER_SETS,
    PointMap,
    SecondLevelCapacity,
    dirac,
    monad_mult,
    monad_mult_oracle,
    nu0_generators,
    nu_l_generators,
    paper_ground,
    paper_second_level,
    push_measure,
    pushforward,
    repro_counterexample,
)
from balcap.integrals import TNorm, choquet, random_comonotone_pair, tnorm_integral

HALF = Fraction(1, 2)


@pytest.mark.acceptance(1, "nu0 violation: value 4/3 with certificate {(A_i, 1/2)}, coverage exactly 1")
def test_criterion_1_nu0_violation():
    start = time.perf_counter()
    g = paper_ground()
    nu0 = realize(nu0_generators())
    assert balancedness_value(nu0) == Fraction(4, 3)
    verdict = check_balanced(nu0)
    assert isinstance(verdict, Unbalanced)
    assert set(verdict.cert.items) == {(g.mask(s), HALF) for s in PAPER_SETS}
    assert verdict.cert.coverage() == [1] * 6
    assert verdict.cert.value == Fraction(4, 3)
    assert time.perf_counter() - start < 1


@pytest.mark.acceptance(2, "every nu_l is balanced with an exact core witness")
def test_criterion_2_nu_l_balanced():
    start = time.perf_counter()
    for l in (1, 2, 3, 4):
        nu_l = realize(nu_l_generators(l))
        verdict = check_balanced(nu_l)
        assert isinstance(verdict, Balanced)
        assert in_core(verdict.witness, nu_l)
    assert time.perf_counter() - start < 1


@pytest.mark.acceptance(3, "monad multiplication of the second-level capacity equals nu0 on all 64 subsets")
def test_criterion_3_monad_mult_is_nu0():
    start = time.perf_counter()
    nu0 = realize(nu0_generators())
    mult = monad_mult(paper_second_level())
    assert len(mult.values) == 64
    assert all(mult(m) == nu0(m) for m in range(64))
    assert time.perf_counter() - start < 1


@pytest.mark.acceptance(4, "LP verdict agrees with Fourier-Motzkin on 200 capacities; duality gap exactly 0")
def test_criterion_4_bondareva_shapley():
    start = time.perf_counter()
    rng = random.Random(20260)
    agree = 0
    outcomes = set()
    for _ in range(200):
        nu = corpus.capacity(rng, corpus.ground(rng.choice((3, 4))))
        verdict = check_balanced(nu)
        outcomes.add(verdict.balanced)
        agree += core_nonempty(nu) == verdict.balanced
        assert balancedness_value(nu) - solve_core(nu).value == 0
    assert agree == 200
    assert outcomes == {True, False}
    assert time.perf_counter() - start < 120


def _split_le(rng, f):
    """A function psi >= f obtained by adding random nonnegative values."""
    return f.combine(corpus.function(rng, f.ground), lambda a, b: a + b)


@pytest.mark.acceptance(5, "integral axiom suites: 1000 exact trials for Choquet and for each t-norm")
def test_criterion_5_axiom_suites():
    start = time.perf_counter()
    rng = random.Random(5)
    failures = 0
    trials = 1000
    for k in range(trials):
        g = corpus.ground(rng.randint(1, 5))
        nu = corpus.capacity(rng, g)
        one = FuncOnX.constant(g, 1)
        f, h = random_comonotone_pair(rng, g, high=3)
        c = corpus.rational(rng, high=3)
        psi = _split_le(rng, f)
        failures += choquet(nu, one) != 1
        failures += choquet(nu, f) > choquet(nu, psi)
        failures += choquet(nu, f.combine(h, lambda a, b: a + b)) != choquet(nu, f) + choquet(nu, h)
        failures += choquet(nu, f.map(lambda v: c * v)) != c * choquet(nu, f)
    for tn in TNorm:
        for k in range(trials):
            g = corpus.ground(rng.randint(1, 5))
            nu = corpus.capacity(rng, g)
            one = FuncOnX.constant(g, 1)
            f, h = random_comonotone_pair(rng, g)
            c = corpus.rational(rng)
            psi = f.combine(corpus.function(rng, g), max)
            failures += tnorm_integral(nu, one, tn) != 1
            failures += tnorm_integral(nu, f, tn) > tnorm_integral(nu, psi, tn)
            failures += tnorm_integral(nu, f.combine(h, max), tn) != max(
                tnorm_integral(nu, f, tn), tnorm_integral(nu, h, tn))
            failures += tnorm_integral(nu, f.map(lambda v: tn(c, v)), tn) != tn(c, tnorm_integral(nu, f, tn))
    assert failures == 0
    assert time.perf_counter() - start < 60


@pytest.mark.acceptance(6, "Choquet equals expectation for additive capacities; t-norm integral within 1/1000 of grid")
def test_criterion_6_integral_oracles():
    rng = random.Random(6)
    for _ in range(100):
        g = corpus.ground(rng.randint(1, 6))
        mu = corpus.measure(rng, g)
        f = corpus.function(rng, g, high=5)
        assert choquet(mu.as_capacity(), f) == sum(w * v for w, v in zip(mu.weights, f.values))
    grid = [Fraction(i, 1000) for i in range(1001)]
    for _ in range(100):
        g = corpus.ground(rng.randint(1, 5))
        nu, f, tn = corpus.capacity(rng, g), corpus.function(rng, g), rng.choice(list(TNorm))
        exact = tnorm_integral(nu, f, tn)
        approx = max(tn(nu(f.level_set(t)), t) for t in grid)
        assert approx <= exact
        assert exact - approx <= Fraction(1, 1000)


@pytest.mark.acceptance(7, "functor laws, balancedness preservation, naturality of the unit")
def test_criterion_7_functor():
    rng = random.Random(7)
    preserved = 0
    for _ in range(100):
        x, y, z = (corpus.ground(rng.randint(1, 5)) for _ in range(3))
        f, h = corpus.point_map(rng, x, y), corpus.point_map(rng, y, z)
        nu = corpus.capacity(rng, x)
        assert pushforward(PointMap.identity(x), nu) == nu
        assert pushforward(f.then(h), nu) == pushforward(h, pushforward(f, nu))
        verdict = check_balanced(nu)
        if isinstance(verdict, Balanced):
            image = pushforward(f, nu)
            assert check_balanced(image).balanced
            assert in_core(push_measure(f, verdict.witness), image)
            preserved += 1
    assert preserved > 0
    for _ in range(20):
        x, y = corpus.ground(rng.randint(1, 6)), corpus.ground(rng.randint(1, 6))
        f = corpus.point_map(rng, x, y)
        assert all(pushforward(f, dirac(x, p)) == dirac(y, f(p)) for p in range(x.n))


def _oracle_instances():
    """Fixed enumeration: every single generator, and pairs of distinct sets."""
    for n, k in itertools.product((1, 2, 3), (1, 2, 3)):
        g = GroundSet.of_size(n)
        levels = [Fraction(i, k) for i in range(1, k + 1)]
        masks = range(1, 1 << n)
        yield g, k, ()
        for a, s, v in itertools.product(masks, levels, levels):
            yield g, k, ((a, s, v),)
        pair_levels = levels if k <= 2 else [Fraction(1, 3), Fraction(1)]
        for a, b in itertools.combinations(masks, 2):
            for s1, v1, s2, v2 in itertools.product(pair_levels, repeat=4):
                yield g, k, ((a, s1, v1), (b, s2, v2))


@pytest.mark.acceptance(8, "closed-form monad multiplication matches the brute-force oracle (n<=3, k<=3, <=2 generators)")
def test_criterion_8_monad_oracle():
    start = time.perf_counter()
    count = 0
    for g, k, gens in _oracle_instances():
        big = SecondLevelCapacity(g, gens)
        assert monad_mult_oracle(big, k) == monad_mult(big), (g, k, gens)
        count += 1
    assert count >= 50
    assert time.perf_counter() - start < 120


@pytest.mark.acceptance(9, "repro-paper exits 0 with five passing checks, deterministically; mutations flip one check")
def test_criterion_9_repro_cli():
    runs = [subprocess.run([sys.executable, "-m", "balcap", "repro-paper"], capture_output=True, text=True)
            for _ in range(2)]
    assert [r.returncode for r in runs] == [0, 0]
    assert runs[0].stdout == runs[1].stdout
    checks = json.loads(runs[0].stdout)["checks"]
    assert len(checks) == 5 and all(c["pass"] for c in checks)

    def passes(report):
        return [c["pass"] for c in report["checks"]]

    mutated = PAPER_SETS[:3] + (("3", "4", "5"),)
    assert passes(repro_counterexample(sets=mutated)) == [False, True, True, True, True]
    assert passes(repro_counterexample(step_b=nu_l_generators(1))) == [True, False, True, True, True]

"""Capacities on finite sets: balancedness, cores, integrals and the capacity monad."""

from .balance import (
    Balanced,
    BalancedViolation,
    Unbalanced,
    balancedness_value,
    check_balanced,
    core_element,
    core_element_generated,
    in_core,
)
from .domain import (
    Capacity,
    FuncOnX,
    GeneratedCapacity,
    GroundSet,
    ProbMeasure,
    comonotone,
    measure_of,
    parse_rational,
    realize,
    render_rational,
    validate_capacity,
)
from .functor import (
    PointMap,
    SecondLevelCapacity,
    dirac,
    monad_mult,
    monad_mult_oracle,
    pushforward,
    repro_counterexample,
)
from .integrals import TNorm, apply_tnorm, balanced_functional, choquet, tnorm_integral

__all__ = [
    "Balanced", "BalancedViolation", "Unbalanced", "balancedness_value", "check_balanced",
    "core_element", "core_element_generated", "in_core",
    "Capacity", "FuncOnX", "GeneratedCapacity", "GroundSet", "ProbMeasure", "comonotone",
    "measure_of", "parse_rational", "realize", "render_rational", "validate_capacity",
    "PointMap", "SecondLevelCapacity", "dirac", "monad_mult", "monad_mult_oracle",
    "pushforward", "repro_counterexample",
    "TNorm", "apply_tnorm", "balanced_functional", "choquet", "tnorm_integral",
]

"""Exact verification toolkit for b_v(s)-metric spaces and contractive self-maps."""

from .axioms import (
    BudgetExceededError,
    CertificationResult,
    ViolationReport,
    certify_class,
    max_ratio,
    min_s,
    tuple_count,
    verify_polygon,
)
from .core import (
    AsymmetryError,
    FiniteSpace,
    IdentityError,
    MetricClass,
    NegativeDistanceError,
    NonPositiveScaleError,
    SelfMap,
    constant_map,
    format_rational,
    identity_map,
    make_map,
    make_space,
    parse_rational,
    scale_space,
)
from .maps import (
    UNCONSTRAINED,
    check_condition_A,
    check_condition_B,
    check_contractive,
    default_epsilon_grid,
    find_fixed_points,
    orbit_bound,
)
from .picard import (
    boundedness_check,
    cauchy_check,
    convergence_check,
    orbit_diagnostics,
    picard_iterate,
)

__version__ = "0.1.0"

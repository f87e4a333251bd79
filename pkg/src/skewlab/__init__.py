"""skewlab: construct, decompose, sample, and analyze skew-symmetric laws.

A skew-symmetric density is f(x) = 2 f0(x) G(x) with f0 symmetric about
zero and G a perturbation function (G >= 0, G(x) + G(-x) = 1). The
package provides the univariate machinery (bases, perturbations,
densities, cdfs, quantiles, samplers), decomposition back into (f0, G),
equality-in-distribution diagnostics, stochastic-order and mode analysis,
s-concavity checking, and the elliptical/conditioning constructions in
several dimensions, plus a CLI that publishes figures and runs the
property suites.
"""

from .bases import BASE_NAMES, SymmetricBase, make_base
from .characterize import CharReport, check_common_base, check_symmetric_set
from .concavity import (
    ConcavityReport,
    MarginalReport,
    PredictedShape,
    SuperlevelReport,
    check_marginal_sconcavity,
    check_sconcave,
    check_shape,
    check_superlevel_convex,
    compose_rule,
    marginal_s,
)
from .errors import (
    BadParam,
    DegenerateBase,
    DimensionMismatch,
    DomainError,
    EmptyLevelSet,
    HypothesisViolated,
    MomentUndefined,
    NonConvergence,
    NonDifferentiable,
    NonFinite,
    NotADensity,
    NotAPerturbation,
    OddnessViolation,
    ParseError,
    PremiseNotMet,
    RuleNotCovered,
    SkewLabError,
    UnknownSuite,
)
from .modes import (
    CriticalPoint,
    MaGentonReport,
    ModeReport,
    analyze_modes,
    ma_genton_check,
)
from .multivar import (
    ConditionedSkewDensity,
    ConditioningSpec,
    EllipticalDensity,
    EllipticalGenerator,
    ESNDensity,
    MVSubbotin,
    ProductSubbotin,
    SEPDensity,
    TWO_DISC_K,
    TwoDiscExample,
    branco_dey_G,
    gen_normal,
    gen_pearson2,
    gen_pearson7,
    gen_two_disc,
    skew_by_conditioning,
    subbotin_hessian_form,
    two_disc_counterexample,
)
from .numerics import Interval, QuadSpec, REAL_LINE, cumulative_integral, find_roots, integrate
from .ordering import (
    OrderVerdict,
    StochasticOrderReport,
    compare_gr,
    functional_order,
    quantile_order,
    verify_stochastic_order,
)
from .perturb import (
    ComposedPerturbation,
    Decomposition,
    DirectPerturbation,
    OddFn,
    PerturbationFn,
    compose,
    constant_half,
    decompose,
    half_indicator,
    minimal_representation,
    odd_cubic,
    odd_from_callable,
    odd_linear,
    odd_poly,
    skewt_weight,
    validate_raw,
)
from .skew1d import SkewDensity1D
from .suites import SUITE_ORDER, run_suite

__version__ = "1.0.0"

__all__ = [
    "__version__",
    # numerics
    "Interval",
    "QuadSpec",
    "REAL_LINE",
    "integrate",
    "cumulative_integral",
    "find_roots",
    # bases
    "SymmetricBase",
    "make_base",
    "BASE_NAMES",
    # perturbations
    "OddFn",
    "PerturbationFn",
    "ComposedPerturbation",
    "DirectPerturbation",
    "odd_linear",
    "odd_cubic",
    "odd_poly",
    "odd_from_callable",
    "skewt_weight",
    "compose",
    "validate_raw",
    "half_indicator",
    "constant_half",
    "minimal_representation",
    "decompose",
    "Decomposition",
    # univariate densities
    "SkewDensity1D",
    # characterization
    "CharReport",
    "check_common_base",
    "check_symmetric_set",
    # ordering
    "OrderVerdict",
    "StochasticOrderReport",
    "compare_gr",
    "verify_stochastic_order",
    "quantile_order",
    "functional_order",
    # modes
    "CriticalPoint",
    "ModeReport",
    "MaGentonReport",
    "analyze_modes",
    "ma_genton_check",
    # concavity
    "ConcavityReport",
    "SuperlevelReport",
    "PredictedShape",
    "MarginalReport",
    "check_sconcave",
    "check_shape",
    "check_superlevel_convex",
    "compose_rule",
    "marginal_s",
    "check_marginal_sconcavity",
    # multivariate
    "EllipticalGenerator",
    "EllipticalDensity",
    "ConditioningSpec",
    "ConditionedSkewDensity",
    "gen_normal",
    "gen_pearson2",
    "gen_pearson7",
    "gen_two_disc",
    "skew_by_conditioning",
    "branco_dey_G",
    "TwoDiscExample",
    "two_disc_counterexample",
    "TWO_DISC_K",
    "MVSubbotin",
    "SEPDensity",
    "ProductSubbotin",
    "ESNDensity",
    "subbotin_hessian_form",
    # suites
    "SUITE_ORDER",
    "run_suite",
    # errors
    "SkewLabError",
    "BadParam",
    "DomainError",
    "NonConvergence",
    "NonFinite",
    "OddnessViolation",
    "NotAPerturbation",
    "NotADensity",
    "DegenerateBase",
    "MomentUndefined",
    "DimensionMismatch",
    "PremiseNotMet",
    "NonDifferentiable",
    "RuleNotCovered",
    "HypothesisViolated",
    "EmptyLevelSet",
    "UnknownSuite",
    "ParseError",
]

"""Uniformly convergent Fourier series and low-error trigonometric
interpolation through phantom boundary blends and phantom nodes."""

from .extension import (
    TWO_PI,
    BlendPolynomial,
    ExtendedFunction,
    ExtensionConfig,
    RealFunction,
    assemble_extended,
    build_hermite_blend,
    build_linear_blend,
    eval_periodic,
    rescale_to_subinterval,
)
from .fourier import (
    FourierSeries,
    JumpData,
    NumericalError,
    asymptotic_coefficients,
    blended_sawtooth_series,
    compute_coefficients,
    estimate_decay_order,
    jump_terms,
    partial_sum,
    sawtooth_series,
    sigma_factor,
)
from .functions import REGISTRY, make_function
from .optimize import SelectionResult, evaluate_candidate, select_phantom_values
from .phantom_nodes import (
    PhantomPlan,
    RatioRecord,
    augment_and_interpolate,
    baseline_report,
    error_ratio,
    node_samples,
    phantom_report,
    phantom_values_blend,
    plan_grid,
    table_sweep,
)
from .triginterp import (
    ErrorReport,
    SampleSet,
    TrigPolynomial,
    epsilon_grid,
    evaluate,
    interpolate,
    normalized_error,
)

__version__ = "0.1.0"

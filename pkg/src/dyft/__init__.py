"""Discrete Yang-Fourier transform toolkit.

Core numerics (Mittag-Leffler kernels, local fractional quadrature, the
N-point transform pair), property checks and residual audits, plus an
HTTP service and a CLI front end.
"""

from __future__ import annotations

__version__ = "0.1.0"

from .errors import (
    ConvergenceError,
    DomainError,
    DyftError,
    EnvelopeError,
    ExtensionModeError,
    GammaOverflowError,
    GuardExceededError,
    PlanMismatchError,
    SignalFormatError,
    SizeMismatchError,
)
from .lfc import (
    DiscreteApproximation,
    Extension,
    NaturalWindow,
    Partition,
    SampledSignal,
    build_discrete_approximation,
    coefficient_at,
    lfi_quadrature,
    natural_window,
    windowed_pairing,
)
from .specfun import (
    DEFAULT_ML_CONFIG,
    Direction,
    FractalOrder,
    KernelConvention,
    MLConfig,
    as_order,
    fractal_kernel,
    gamma_pos,
    mittag_leffler,
    mittag_leffler_oracle,
)
from .transform import (
    ResidualReport,
    Spectrum,
    TransformPlan,
    approximate_spectrum,
    ensure_envelope,
    forward,
    inverse,
    make_plan,
    max_size_for_order,
    plan_config,
    plan_for,
    roundtrip,
)

__all__ = [
    "__version__",
    # errors
    "DyftError",
    "DomainError",
    "SizeMismatchError",
    "GammaOverflowError",
    "GuardExceededError",
    "ConvergenceError",
    "EnvelopeError",
    "PlanMismatchError",
    "ExtensionModeError",
    "SignalFormatError",
    # specfun
    "FractalOrder",
    "MLConfig",
    "DEFAULT_ML_CONFIG",
    "Direction",
    "KernelConvention",
    "as_order",
    "gamma_pos",
    "mittag_leffler",
    "fractal_kernel",
    "mittag_leffler_oracle",
    # lfc
    "Partition",
    "SampledSignal",
    "DiscreteApproximation",
    "NaturalWindow",
    "Extension",
    "lfi_quadrature",
    "build_discrete_approximation",
    "coefficient_at",
    "natural_window",
    "windowed_pairing",
    # transform
    "TransformPlan",
    "Spectrum",
    "ResidualReport",
    "max_size_for_order",
    "ensure_envelope",
    "plan_config",
    "make_plan",
    "plan_for",
    "forward",
    "inverse",
    "approximate_spectrum",
    "roundtrip",
]

"""The N-point discrete Yang-Fourier transform pair.

Forward:  F(k) = 1/(Gamma(1+a) N^a) * sum_n f(n) K[n][k]
Inverse:  f(n) = sum_k F(k) K'[n][k]            (no prefactor)

with K[n][k] = E_a(-i^a (2 pi n k / N)^a) and K' its inverse-direction
counterpart.  The normalization asymmetry is kept exactly as defined; at
a = 1 this is the 1/N-forward DFT convention and the pair inverts exactly.
For a < 1 the kernel lacks the orthogonality that the classical proof
relies on, so no inversion claim is made here; the round-trip residual is
measured and reported by :mod:`dyft.analysis`.

Kernel entries each cost a full Mittag-Leffler series, so plans (N x N
kernel tables) are the unit of reuse.  Entries depend on n and k only
through the product n*k, which the builder exploits by evaluating each
distinct product once; this also makes construction bit-identical
regardless of worker count.
"""

from __future__ import annotations

import math
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, replace
from functools import lru_cache
from typing import Sequence

import numpy as np

from .errors import DomainError, EnvelopeError, GuardExceededError, PlanMismatchError
from .lfc import DiscreteApproximation
from .specfun import (
    DEFAULT_ML_CONFIG,
    Direction,
    FractalOrder,
    KernelConvention,
    MLConfig,
    as_order,
    fractal_kernel,
    gamma_pos,
)

__all__ = [
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

TWO_PI = 2.0 * math.pi


@dataclass(frozen=True, eq=False)
class TransformPlan:
    """Precomputed N x N kernel table for one (order, direction, convention)."""

    size: int
    order: FractalOrder
    direction: Direction
    convention: KernelConvention
    kernel: np.ndarray

    def __post_init__(self) -> None:
        if self.kernel.shape != (self.size, self.size):
            raise DomainError("kernel table shape does not match plan size")
        self.kernel.setflags(write=False)


@dataclass(frozen=True)
class Spectrum:
    """N transform coefficients with frequency spacing domega = 2 pi/(N dt)."""

    coeffs: tuple[complex, ...]
    size: int
    order: FractalOrder
    domega: float
    dt_origin: float
    convention: KernelConvention = KernelConvention.CONJUGATE_PAIR

    def __post_init__(self) -> None:
        if self.size != len(self.coeffs):
            raise DomainError("spectrum size does not match coefficient count")
        object.__setattr__(self, "order", as_order(self.order))
        if not (self.domega > 0.0 and self.dt_origin > 0.0):
            raise DomainError("domega and dt_origin must be positive")
        if abs(self.domega * self.dt_origin * self.size - TWO_PI) > 1e-12 * TWO_PI:
            raise DomainError("domega * dt * N must equal 2*pi")


@dataclass(frozen=True)
class ResidualReport:
    max_abs: float
    rms: float

    def to_dict(self) -> dict:
        return {"max_abs": self.max_abs, "rms": self.rms}


def max_theta(size: int) -> float:
    """Largest kernel phase in an N-point table: 2 pi (N-1)^2 / N."""
    return TWO_PI * (size - 1) ** 2 / size


def max_size_for_order(order: FractalOrder | float) -> int:
    """Desk-scale cap on N: 64 for a >= 0.8, 32 for a in [0.5, 0.8), else 16."""
    alpha = as_order(order).alpha
    if alpha >= 0.8:
        return 64
    if alpha >= 0.5:
        return 32
    return 16


def ensure_envelope(size: int, order: FractalOrder | float) -> None:
    order = as_order(order)
    limit = max_size_for_order(order)
    if size > limit:
        raise EnvelopeError(
            f"N = {size} exceeds the desk-scale cap {limit} for alpha = {order.alpha:g}",
            size=size,
            limit=limit,
            alpha=order.alpha,
        )


def plan_config(size: int, order: FractalOrder | float, cfg: MLConfig = DEFAULT_ML_CONFIG) -> MLConfig:
    """Size the magnitude guard to cover an envelope-admissible plan.

    Inside the envelope the guard is a cost control, not a correctness
    cliff (the evaluator scales its precision with the argument), so the
    per-plan guard is raised to the largest kernel argument when the
    configured guard would reject an admissible (alpha, N).
    """
    order = as_order(order)
    ensure_envelope(size, order)
    need = max_theta(size) ** order.alpha * (1.0 + 1e-12)
    if need > cfg.magnitude_guard:
        return replace(cfg, magnitude_guard=need)
    return cfg


def make_plan(
    size: int,
    order: FractalOrder | float,
    direction: Direction,
    convention: KernelConvention = KernelConvention.CONJUGATE_PAIR,
    cfg: MLConfig = DEFAULT_ML_CONFIG,
    workers: int = 1,
) -> TransformPlan:
    """Populate the kernel table K[n][k] = E_a(+-i^a (2 pi n k/N)^a)."""
    if not (isinstance(size, int) and size >= 1):
        raise DomainError(f"plan size must be a positive integer, got {size}")
    order = as_order(order)
    alpha = order.alpha
    worst = max_theta(size) ** alpha
    if worst > cfg.magnitude_guard:
        raise GuardExceededError(
            f"kernel argument theta^alpha = {worst:.6g} at (n, k) = ({size - 1}, {size - 1}) "
            f"exceeds magnitude guard {cfg.magnitude_guard:g}: N = {size} is too large for "
            f"alpha = {alpha:g} at this configuration",
            magnitude=worst,
            guard=cfg.magnitude_guard,
            n=size - 1,
            k=size - 1,
        )
    products = np.outer(np.arange(size), np.arange(size))
    if alpha == 1.0:
        # E_1(-+ 2 pi i n k / N) = exp(-+ 2 pi i (n k mod N) / N), exactly
        sign = -1.0 if direction is Direction.FORWARD else 1.0
        kernel = np.exp(sign * 2j * np.pi * (products % size) / size)
    else:
        unique, inverse_idx = np.unique(products, return_inverse=True)
        thetas = [TWO_PI * float(p) / size for p in unique]

        def eval_theta(theta: float) -> complex:
            return fractal_kernel(order, direction, theta, convention, cfg)

        if workers > 1:
            with ThreadPoolExecutor(max_workers=workers) as pool:
                values = list(pool.map(eval_theta, thetas))
        else:
            values = [eval_theta(t) for t in thetas]
        kernel = np.asarray(values, dtype=np.complex128)[inverse_idx].reshape(size, size)
    return TransformPlan(
        size=size, order=order, direction=direction, convention=convention, kernel=kernel
    )


@lru_cache(maxsize=128)
def _cached_plan(
    size: int,
    order: FractalOrder,
    direction: Direction,
    convention: KernelConvention,
    cfg: MLConfig,
) -> TransformPlan:
    return make_plan(size, order, direction, convention, cfg)


def plan_for(
    size: int,
    order: FractalOrder | float,
    direction: Direction,
    convention: KernelConvention = KernelConvention.CONJUGATE_PAIR,
    cfg: MLConfig = DEFAULT_ML_CONFIG,
    workers: int = 1,
) -> TransformPlan:
    """Envelope-checked, guard-sized, cached plan lookup."""
    order = as_order(order)
    effective = plan_config(size, order, cfg)
    if workers > 1:
        return make_plan(size, order, direction, convention, effective, workers=workers)
    return _cached_plan(size, order, direction, convention, effective)


def _column_sums(products: np.ndarray) -> list[complex]:
    # math.fsum per output keeps every sum exactly rounded, hence
    # independent of evaluation order and worker count
    re = products.real
    im = products.imag
    return [
        complex(math.fsum(re[:, k]), math.fsum(im[:, k])) for k in range(products.shape[1])
    ]


def _checked_vector(values: Sequence[complex], what: str) -> np.ndarray:
    arr = np.asarray([complex(v) for v in values], dtype=np.complex128)
    if arr.ndim != 1 or arr.size == 0:
        raise DomainError(f"{what} must be a non-empty 1-D sequence")
    if not np.all(np.isfinite(arr.real) & np.isfinite(arr.imag)):
        raise DomainError(f"{what} must be finite")
    return arr


def forward(values: Sequence[complex], dt: float, plan: TransformPlan) -> Spectrum:
    """Apply a forward plan to N samples taken at spacing dt."""
    if plan.direction is not Direction.FORWARD:
        raise PlanMismatchError("forward() requires a Forward plan")
    arr = _checked_vector(values, "signal")
    if arr.size != plan.size:
        raise PlanMismatchError(f"signal length {arr.size} does not match plan size {plan.size}")
    dt = float(dt)
    if not (math.isfinite(dt) and dt > 0.0):
        raise DomainError(f"sample spacing dt must be positive, got {dt}")
    alpha = plan.order.alpha
    scale = 1.0 / (gamma_pos(1.0 + alpha) * plan.size**alpha)
    sums = _column_sums(arr[:, None] * plan.kernel)
    coeffs = tuple(scale * s for s in sums)
    return Spectrum(
        coeffs=coeffs,
        size=plan.size,
        order=plan.order,
        domega=TWO_PI / (plan.size * dt),
        dt_origin=dt,
        convention=plan.convention,
    )


def inverse(spectrum: Spectrum, plan: TransformPlan) -> tuple[complex, ...]:
    """Apply an inverse plan to a spectrum: f(n) = sum_k F(k) K'[n][k]."""
    if plan.direction is not Direction.INVERSE:
        raise PlanMismatchError("inverse() requires an Inverse plan")
    if plan.size != spectrum.size:
        raise PlanMismatchError(
            f"spectrum size {spectrum.size} does not match plan size {plan.size}"
        )
    if plan.order != spectrum.order:
        raise PlanMismatchError(
            f"spectrum order alpha={spectrum.order.alpha:g} does not match "
            f"plan order alpha={plan.order.alpha:g}"
        )
    if plan.convention is not spectrum.convention:
        raise PlanMismatchError(
            f"spectrum convention {spectrum.convention.value} does not match "
            f"plan convention {plan.convention.value}"
        )
    arr = np.asarray(spectrum.coeffs, dtype=np.complex128)
    # kernel is symmetric, so rows and columns are interchangeable; sum
    # over k for each output n
    return tuple(_column_sums(arr[:, None] * plan.kernel))


def approximate_spectrum(
    approx: DiscreteApproximation,
    omega: float,
    cfg: MLConfig = DEFAULT_ML_CONFIG,
    convention: KernelConvention = KernelConvention.CONJUGATE_PAIR,
) -> complex:
    """Continuous-spectrum approximation at angular frequency omega.

    Returns (1/Gamma(1+a)) * sum_k f~_k E_a(-i^a (omega k dt)^a); at
    omega = n * domega this equals T^a times the n-th forward transform
    coefficient, T = N dt being the natural window period.
    """
    omega = float(omega)
    if not (math.isfinite(omega) and omega >= 0.0):
        raise DomainError(f"omega must be finite and >= 0, got {omega}")
    alpha = approx.order.alpha
    n = approx.size
    worst = (omega * (n - 1) * approx.dt) ** alpha if n > 1 and omega > 0 else 0.0
    if worst > cfg.magnitude_guard:
        raise GuardExceededError(
            f"kernel argument (omega k dt)^alpha = {worst:.6g} at k = {n - 1} exceeds "
            f"magnitude guard {cfg.magnitude_guard:g}",
            magnitude=worst,
            guard=cfg.magnitude_guard,
            k=n - 1,
        )
    kernels = [
        fractal_kernel(approx.order, Direction.FORWARD, omega * k * approx.dt, convention, cfg)
        for k in range(n)
    ]
    re = math.fsum((c * w).real for c, w in zip(approx.coeffs, kernels))
    im = math.fsum((c * w).imag for c, w in zip(approx.coeffs, kernels))
    g = gamma_pos(1.0 + alpha)
    return complex(re / g, im / g)


def roundtrip(
    values: Sequence[complex],
    dt: float,
    forward_plan: TransformPlan,
    inverse_plan: TransformPlan,
) -> tuple[tuple[complex, ...], ResidualReport]:
    """inverse(forward(values)) plus the residual against the input.

    No exactness is asserted for a < 1; the report quantifies whatever the
    composition does.
    """
    if forward_plan.direction is not Direction.FORWARD or inverse_plan.direction is not Direction.INVERSE:
        raise PlanMismatchError("roundtrip() needs one Forward and one Inverse plan")
    if (
        forward_plan.size != inverse_plan.size
        or forward_plan.order != inverse_plan.order
        or forward_plan.convention is not inverse_plan.convention
    ):
        raise PlanMismatchError("round-trip plans must share size, order, and convention")
    spectrum = forward(values, dt, forward_plan)
    reconstructed = inverse(spectrum, inverse_plan)
    diffs = [abs(r - complex(v)) for r, v in zip(reconstructed, values)]
    max_abs = max(diffs)
    rms = math.sqrt(math.fsum(d * d for d in diffs) / len(diffs))
    return reconstructed, ResidualReport(max_abs=max_abs, rms=rms)

"""Local fractional calculus: quadrature and the sampled-signal model.

The local fractional integral weights partition increments as (dt)^a with
an overall 1/Gamma(1+a) prefactor.  The operation here evaluates that sum
at a fixed partition (left endpoints); no refinement limit is taken, since
on an ordinary interval the limit is 0 or infinite for a < 1.  The
refinement study in :mod:`dyft.analysis` exposes that scaling instead of
pretending convergence.

Sampled signals enter the transform machinery through their discrete
approximation: the coefficient array f~_k = f_k * (dt)^a together with a
zero or periodic extension beyond the natural window.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from enum import Enum
from typing import Sequence

from .errors import DomainError, SizeMismatchError
from .specfun import FractalOrder, as_order, gamma_pos

__all__ = [
    "Extension",
    "Partition",
    "SampledSignal",
    "DiscreteApproximation",
    "NaturalWindow",
    "lfi_quadrature",
    "build_discrete_approximation",
    "coefficient_at",
    "natural_window",
    "windowed_pairing",
]


class Extension(Enum):
    """How the discrete approximation continues beyond indices 0..N-1."""

    ZERO = "zero"
    PERIODIC = "periodic"


def _checked_values(values: Sequence[complex], what: str) -> tuple[complex, ...]:
    out = []
    for v in values:
        v = complex(v)
        if not (math.isfinite(v.real) and math.isfinite(v.imag)):
            raise DomainError(f"{what} must be finite, got {v!r}")
        out.append(v)
    return tuple(out)


@dataclass(frozen=True)
class Partition:
    """Strictly increasing grid t_0 < t_1 < ... < t_N."""

    points: tuple[float, ...]

    def __post_init__(self) -> None:
        pts = tuple(float(p) for p in self.points)
        if len(pts) < 2:
            raise DomainError("partition needs at least 2 points")
        for p in pts:
            if not math.isfinite(p):
                raise DomainError(f"partition points must be finite, got {p}")
        for a, b in zip(pts, pts[1:]):
            if not b > a:
                raise DomainError("partition points must be strictly increasing")
        object.__setattr__(self, "points", pts)

    @classmethod
    def uniform(cls, a: float, b: float, intervals: int) -> "Partition":
        if intervals < 1:
            raise DomainError("uniform partition needs at least 1 interval")
        a, b = float(a), float(b)
        pts = [a + (b - a) * j / intervals for j in range(intervals)]
        pts.append(b)
        return cls(tuple(pts))

    @property
    def interval_count(self) -> int:
        return len(self.points) - 1

    @property
    def widths(self) -> tuple[float, ...]:
        return tuple(b - a for a, b in zip(self.points, self.points[1:]))

    @property
    def left_nodes(self) -> tuple[float, ...]:
        return self.points[:-1]


@dataclass(frozen=True)
class SampledSignal:
    """N complex samples at uniform spacing dt."""

    values: tuple[complex, ...]
    dt: float

    def __post_init__(self) -> None:
        values = _checked_values(self.values, "signal sample")
        if len(values) < 1:
            raise DomainError("signal must hold at least one sample")
        dt = float(self.dt)
        if not (math.isfinite(dt) and dt > 0.0):
            raise DomainError(f"sample spacing dt must be positive, got {dt}")
        object.__setattr__(self, "values", values)
        object.__setattr__(self, "dt", dt)

    @property
    def size(self) -> int:
        return len(self.values)


@dataclass(frozen=True)
class DiscreteApproximation:
    """Coefficients f~_k = f_k * dt^a plus the chosen extension mode."""

    coeffs: tuple[complex, ...]
    dt: float
    order: FractalOrder
    extension: Extension = Extension.PERIODIC

    def __post_init__(self) -> None:
        coeffs = _checked_values(self.coeffs, "coefficient")
        if len(coeffs) < 1:
            raise DomainError("discrete approximation must hold at least one coefficient")
        dt = float(self.dt)
        if not (math.isfinite(dt) and dt > 0.0):
            raise DomainError(f"spacing dt must be positive, got {dt}")
        object.__setattr__(self, "coeffs", coeffs)
        object.__setattr__(self, "dt", dt)
        object.__setattr__(self, "order", as_order(self.order))
        if not isinstance(self.extension, Extension):
            raise DomainError(f"extension must be an Extension, got {self.extension!r}")

    @property
    def size(self) -> int:
        return len(self.coeffs)


@dataclass(frozen=True)
class NaturalWindow:
    """The interval (-dt/2, (2N-1)dt/2) of length T = N*dt."""

    lo: float
    hi: float
    period: float

    def __post_init__(self) -> None:
        if not (self.hi > self.lo and self.period > 0.0):
            raise DomainError("degenerate natural window")
        if abs((self.hi - self.lo) - self.period) > 1e-12 * self.period:
            raise DomainError("window length must equal its period")


def lfi_quadrature(
    values: Sequence[complex],
    partition: Partition,
    order: FractalOrder | float,
) -> complex:
    """Local fractional integral sum over a fixed partition.

    Returns (1/Gamma(1+a)) * sum_j values[j] * (t_{j+1} - t_j)^a, with
    values read at the left endpoints t_0 .. t_{N-1}.
    """
    order = as_order(order)
    values = _checked_values(values, "integrand value")
    if len(values) != partition.interval_count:
        raise SizeMismatchError(
            f"got {len(values)} values for {partition.interval_count} partition intervals"
        )
    alpha = order.alpha
    weights = [w**alpha for w in partition.widths]
    re = math.fsum(v.real * w for v, w in zip(values, weights))
    im = math.fsum(v.imag * w for v, w in zip(values, weights))
    g = gamma_pos(1.0 + alpha)
    return complex(re / g, im / g)


def build_discrete_approximation(
    signal: SampledSignal,
    order: FractalOrder | float,
    extension: Extension = Extension.PERIODIC,
) -> DiscreteApproximation:
    """Scale samples into coefficients f~_k = f_k * dt^a."""
    order = as_order(order)
    scale = signal.dt**order.alpha
    coeffs = tuple(v * scale for v in signal.values)
    return DiscreteApproximation(coeffs=coeffs, dt=signal.dt, order=order, extension=extension)


def coefficient_at(approx: DiscreteApproximation, k: int) -> complex:
    """Extended coefficient lookup: zero outside the window, or periodic."""
    n = approx.size
    if approx.extension is Extension.PERIODIC:
        return approx.coeffs[k % n]
    if 0 <= k < n:
        return approx.coeffs[k]
    return 0.0 + 0.0j


def natural_window(size: int, dt: float) -> NaturalWindow:
    """Window (-dt/2, (2N-1)dt/2) holding one period T = N*dt."""
    if not (isinstance(size, int) and size >= 1):
        raise DomainError(f"window size must be a positive integer, got {size}")
    dt = float(dt)
    if not (math.isfinite(dt) and dt > 0.0):
        raise DomainError(f"spacing dt must be positive, got {dt}")
    return NaturalWindow(lo=-dt / 2.0, hi=(2 * size - 1) * dt / 2.0, period=size * dt)


def windowed_pairing(
    approx: DiscreteApproximation,
    phi_at_nodes: Sequence[complex],
    order: FractalOrder | float,
) -> complex:
    """Pair the approximation against test-function samples phi(k*dt).

    Returns (1/Gamma(1+a)) * sum_k f~_k * phi_k; the (dt)^a weight already
    lives in the coefficients.
    """
    order = as_order(order)
    phi = _checked_values(phi_at_nodes, "test function value")
    if len(phi) != approx.size:
        raise SizeMismatchError(
            f"got {len(phi)} test-function values for {approx.size} coefficients"
        )
    re = math.fsum((c * p).real for c, p in zip(approx.coeffs, phi))
    im = math.fsum((c * p).imag for c, p in zip(approx.coeffs, phi))
    g = gamma_pos(1.0 + order.alpha)
    return complex(re / g, im / g)

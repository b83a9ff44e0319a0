"""Pydantic request/response models for the HTTP service."""

from __future__ import annotations

from typing import Literal

from pydantic import BaseModel, Field

from ..analysis import DEFAULT_SEED
from ..specfun import KernelConvention, MLConfig

ConventionName = Literal["conjugate-pair", "negated-principal"]


class ComplexPair(BaseModel):
    re: float
    im: float = 0.0

    @classmethod
    def of(cls, z: complex) -> "ComplexPair":
        return cls(re=z.real, im=z.imag)

    def to_complex(self) -> complex:
        return complex(self.re, self.im)


class SeriesConfig(BaseModel):
    """Mittag-Leffler evaluation controls (mirrors the library defaults)."""

    rel_tol: float = Field(default=MLConfig.rel_tol, gt=0)
    max_terms: int = Field(default=MLConfig.max_terms, ge=1)
    magnitude_guard: float = Field(default=MLConfig.magnitude_guard, gt=0)

    def to_ml_config(self) -> MLConfig:
        return MLConfig(
            rel_tol=self.rel_tol,
            max_terms=self.max_terms,
            magnitude_guard=self.magnitude_guard,
        )


class SpectrumPayload(BaseModel):
    coeffs: list[ComplexPair]
    n: int = Field(ge=1)
    alpha: float
    domega: float = Field(gt=0)
    convention: ConventionName = KernelConvention.CONJUGATE_PAIR.value


class ForwardRequest(BaseModel):
    values: list[ComplexPair]
    dt: float = Field(gt=0)
    alpha: float
    convention: ConventionName = KernelConvention.CONJUGATE_PAIR.value
    config: SeriesConfig = SeriesConfig()
    threads: int = Field(default=1, ge=1)


class ForwardResponse(BaseModel):
    spectrum: SpectrumPayload


class InverseRequest(BaseModel):
    spectrum: SpectrumPayload
    config: SeriesConfig = SeriesConfig()
    threads: int = Field(default=1, ge=1)


class InverseResponse(BaseModel):
    values: list[ComplexPair]
    n: int
    dt: float
    alpha: float


class RoundtripRequest(BaseModel):
    values: list[ComplexPair]
    dt: float = Field(gt=0)
    alpha: float
    convention: ConventionName = KernelConvention.CONJUGATE_PAIR.value
    config: SeriesConfig = SeriesConfig()


class RoundtripResponse(BaseModel):
    alpha: float
    n: int
    max_abs: float
    rms: float
    convention: ConventionName


class MlfRequest(BaseModel):
    alpha: float
    re: float
    im: float = 0.0
    oracle_digits: int | None = None
    config: SeriesConfig = SeriesConfig()


class MlfResponse(BaseModel):
    value: ComplexPair
    oracle: ComplexPair | None = None
    rel_gap: float | None = None


class QuadRequest(BaseModel):
    values: list[ComplexPair]
    partition: list[float]
    alpha: float


class QuadResponse(BaseModel):
    value: ComplexPair


class CheckRequest(BaseModel):
    suite: Literal["all", "linearity", "periodic", "dft", "refinement"]
    seed: int = DEFAULT_SEED
    config: SeriesConfig = SeriesConfig()


class CheckResponse(BaseModel):
    suite: str
    seed: int
    passed: bool
    reports: list[dict]


class SweepRowModel(BaseModel):
    alpha: float
    n: int
    signal_family: str
    roundtrip_max_abs: float
    roundtrip_rms: float


class SweepRequest(BaseModel):
    alphas: list[float]
    ns: list[int]
    families: list[str] = ["constant", "impulse", "random-seeded"]
    seed: int = DEFAULT_SEED
    convention: ConventionName = KernelConvention.CONJUGATE_PAIR.value
    config: SeriesConfig = SeriesConfig()


class SweepResponse(BaseModel):
    rows: list[SweepRowModel]
    skipped: list[dict]
    seed: int
    convention: ConventionName


class HealthResponse(BaseModel):
    status: str
    version: str

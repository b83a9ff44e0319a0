"""HTTP service wrapping the transform core.

Kernel tables are the expensive object here (every entry is a full
Mittag-Leffler series), so a long-running service amortizes them: plans
are cached process-wide and reused across requests.  Errors map onto a
stable JSON shape ``{"detail": {"code": ..., "message": ...}}`` with codes
``input`` (bad data), ``envelope``/``guard`` (desk-scale limits), and
``convergence`` (term budget exhausted), which clients translate into
exit codes.
"""

from __future__ import annotations

from fastapi import FastAPI, Request
from fastapi.responses import JSONResponse

from .. import __version__
from ..analysis import residual_sweep, run_suite
from ..errors import (
    ConvergenceError,
    DyftError,
    EnvelopeError,
    GuardExceededError,
)
from ..lfc import Partition, lfi_quadrature
from ..specfun import (
    Direction,
    KernelConvention,
    as_order,
    mittag_leffler,
    mittag_leffler_oracle,
)
from ..transform import TWO_PI, Spectrum, forward, inverse, plan_for, roundtrip
from .models import (
    CheckRequest,
    CheckResponse,
    ComplexPair,
    ForwardRequest,
    ForwardResponse,
    HealthResponse,
    InverseRequest,
    InverseResponse,
    MlfRequest,
    MlfResponse,
    QuadRequest,
    QuadResponse,
    RoundtripRequest,
    RoundtripResponse,
    SpectrumPayload,
    SweepRequest,
    SweepResponse,
    SweepRowModel,
)


def error_code(exc: DyftError) -> str:
    if isinstance(exc, EnvelopeError):
        return "envelope"
    if isinstance(exc, GuardExceededError):
        return "guard"
    if isinstance(exc, ConvergenceError):
        return "convergence"
    return "input"


def create_app() -> FastAPI:
    app = FastAPI(title="dyft", version=__version__)

    @app.exception_handler(DyftError)
    async def dyft_error_handler(_: Request, exc: DyftError) -> JSONResponse:
        return JSONResponse(
            status_code=422,
            content={"detail": {"code": error_code(exc), "message": str(exc)}},
        )

    @app.get("/v1/health", response_model=HealthResponse)
    def health() -> HealthResponse:
        return HealthResponse(status="ok", version=__version__)

    @app.post("/v1/transform/forward", response_model=ForwardResponse)
    def transform_forward(req: ForwardRequest) -> ForwardResponse:
        order = as_order(req.alpha)
        convention = KernelConvention.from_name(req.convention)
        plan = plan_for(
            len(req.values),
            order,
            Direction.FORWARD,
            convention,
            req.config.to_ml_config(),
            workers=req.threads,
        )
        spectrum = forward([v.to_complex() for v in req.values], req.dt, plan)
        return ForwardResponse(
            spectrum=SpectrumPayload(
                coeffs=[ComplexPair.of(c) for c in spectrum.coeffs],
                n=spectrum.size,
                alpha=spectrum.order.alpha,
                domega=spectrum.domega,
                convention=spectrum.convention.value,
            )
        )

    @app.post("/v1/transform/inverse", response_model=InverseResponse)
    def transform_inverse(req: InverseRequest) -> InverseResponse:
        payload = req.spectrum
        order = as_order(payload.alpha)
        convention = KernelConvention.from_name(payload.convention)
        spectrum = Spectrum(
            coeffs=tuple(c.to_complex() for c in payload.coeffs),
            size=payload.n,
            order=order,
            domega=payload.domega,
            dt_origin=TWO_PI / (payload.n * payload.domega),
            convention=convention,
        )
        plan = plan_for(
            payload.n,
            order,
            Direction.INVERSE,
            convention,
            req.config.to_ml_config(),
            workers=req.threads,
        )
        values = inverse(spectrum, plan)
        return InverseResponse(
            values=[ComplexPair.of(v) for v in values],
            n=len(values),
            dt=spectrum.dt_origin,
            alpha=order.alpha,
        )

    @app.post("/v1/transform/roundtrip", response_model=RoundtripResponse)
    def transform_roundtrip(req: RoundtripRequest) -> RoundtripResponse:
        order = as_order(req.alpha)
        convention = KernelConvention.from_name(req.convention)
        cfg = req.config.to_ml_config()
        fwd = plan_for(len(req.values), order, Direction.FORWARD, convention, cfg)
        inv = plan_for(len(req.values), order, Direction.INVERSE, convention, cfg)
        values = [v.to_complex() for v in req.values]
        _, report = roundtrip(values, req.dt, fwd, inv)
        return RoundtripResponse(
            alpha=order.alpha,
            n=len(values),
            max_abs=report.max_abs,
            rms=report.rms,
            convention=convention.value,
        )

    @app.post("/v1/specfun/mlf", response_model=MlfResponse)
    def specfun_mlf(req: MlfRequest) -> MlfResponse:
        order = as_order(req.alpha)
        z = complex(req.re, req.im)
        value = mittag_leffler(order, z, req.config.to_ml_config())
        if req.oracle_digits is None:
            return MlfResponse(value=ComplexPair.of(value))
        oracle = mittag_leffler_oracle(order, z, req.oracle_digits)
        gap = abs(value - oracle) / max(abs(oracle), 1e-300)
        return MlfResponse(
            value=ComplexPair.of(value), oracle=ComplexPair.of(oracle), rel_gap=gap
        )

    @app.post("/v1/quadrature", response_model=QuadResponse)
    def quadrature(req: QuadRequest) -> QuadResponse:
        partition = Partition(tuple(req.partition))
        value = lfi_quadrature(
            [v.to_complex() for v in req.values], partition, as_order(req.alpha)
        )
        return QuadResponse(value=ComplexPair.of(value))

    @app.post("/v1/checks", response_model=CheckResponse)
    def checks(req: CheckRequest) -> CheckResponse:
        passed, reports = run_suite(req.suite, req.seed, req.config.to_ml_config())
        return CheckResponse(
            suite=req.suite,
            seed=req.seed,
            passed=passed,
            reports=[r.to_dict() for r in reports],
        )

    @app.post("/v1/sweep", response_model=SweepResponse)
    def sweep(req: SweepRequest) -> SweepResponse:
        table = residual_sweep(
            req.alphas,
            req.ns,
            req.families,
            seed=req.seed,
            convention=KernelConvention.from_name(req.convention),
            cfg=req.config.to_ml_config(),
        )
        return SweepResponse(
            rows=[
                SweepRowModel(
                    alpha=r.alpha,
                    n=r.n,
                    signal_family=r.signal_family,
                    roundtrip_max_abs=r.roundtrip_max_abs,
                    roundtrip_rms=r.roundtrip_rms,
                )
                for r in table.rows
            ],
            skipped=list(table.skipped),
            seed=table.seed,
            convention=table.convention.value,
        )

    return app


app = create_app()

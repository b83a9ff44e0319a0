"""Command-line front end; a thin client over the HTTP service.

Commands parse local CSV/JSON files, push the arrays through the service
(in-process by default, or a remote ``--server``), and write results back
to disk.  Exit codes: 0 success, 1 a check judged false, 2 input/usage
error, 3 desk-scale (envelope/guard/term-budget) violation, 4 service
unreachable.
"""

from __future__ import annotations

import functools
import json
import sys
from dataclasses import dataclass
from pathlib import Path

import click

from .analysis import DEFAULT_SEED, SUITE_NAMES, SWEEP_FAMILIES, SweepRow, SweepTable
from .client import ServiceClient, ServiceError, TransportError
from .errors import (
    ConvergenceError,
    DyftError,
    EnvelopeError,
    GuardExceededError,
    SignalFormatError,
)
from .signalio import RunConfig, read_signal, read_spectrum, write_signal, write_spectrum
from .specfun import KernelConvention, as_order
from .transform import TWO_PI, Spectrum

ALPHA1_ROUNDTRIP_TOL = 1e-9

_CONVENTIONS = [c.value for c in KernelConvention]


def _exit_code(exc: DyftError) -> int:
    if isinstance(exc, TransportError):
        return 4
    if isinstance(exc, ServiceError):
        return 3 if exc.code in ("envelope", "guard", "convergence") else 2
    if isinstance(exc, (EnvelopeError, GuardExceededError, ConvergenceError)):
        return 3
    return 2


def cli_errors(fn):
    @functools.wraps(fn)
    def wrapper(*args, **kwargs):
        try:
            return fn(*args, **kwargs)
        except DyftError as exc:
            click.echo(f"error: {exc}", err=True)
            sys.exit(_exit_code(exc))

    return wrapper


@dataclass
class CliState:
    server: str | None
    run_config: RunConfig

    def client(self) -> ServiceClient:
        return ServiceClient(self.server)

    def series_config(self) -> dict:
        rc = self.run_config
        return {
            "rel_tol": rc.rel_tol,
            "max_terms": rc.max_terms,
            "magnitude_guard": rc.magnitude_guard,
        }

    def threads(self) -> int:
        return self.run_config.resolve_threads()


def _fmt15(z: complex) -> str:
    return f"{z.real:.15g} {z.imag:+.15g}i"


def _write_text(path: Path, text: str) -> None:
    try:
        path.write_text(text)
    except OSError as exc:
        raise SignalFormatError(f"{path}: {exc}") from None


def _parse_floats(text: str, what: str) -> list[float]:
    try:
        return [float(p) for p in text.split(",") if p.strip()]
    except ValueError:
        raise click.BadParameter(f"bad {what} list: {text!r}")


def _parse_ints(text: str, what: str) -> list[int]:
    try:
        return [int(p) for p in text.split(",") if p.strip()]
    except ValueError:
        raise click.BadParameter(f"bad {what} list: {text!r}")


@click.group()
@click.version_option()
@click.option("--server", default=None, metavar="URL",
              help="Base URL of a running service; by default the service runs in-process.")
@click.option("--config", "config_path", default=None,
              type=click.Path(exists=True, dir_okay=False, path_type=Path),
              help="JSON run config; explicit flags override its values.")
@click.pass_context
@cli_errors
def main(ctx: click.Context, server: str | None, config_path: Path | None) -> None:
    """Discrete Yang-Fourier transform toolkit."""
    run_config = RunConfig.from_file(config_path) if config_path else RunConfig()
    ctx.obj = CliState(server=server, run_config=run_config)


@main.command("forward")
@click.argument("input_path", type=click.Path(exists=True, dir_okay=False, path_type=Path))
@click.option("--alpha", type=float, default=None, help="Fractal order; falls back to sidecar/config.")
@click.option("--dt", type=float, default=None, help="Sample spacing; falls back to sidecar.")
@click.option("--out", "out_path", required=True,
              type=click.Path(dir_okay=False, path_type=Path))
@click.option("--convention", type=click.Choice(_CONVENTIONS), default=None)
@click.pass_obj
@cli_errors
def cmd_forward(state: CliState, input_path: Path, alpha: float | None, dt: float | None,
                out_path: Path, convention: str | None) -> None:
    """Transform a signal file into its spectrum (CSV plus JSON sidecar)."""
    values, meta = read_signal(input_path)
    meta = meta or {}
    if alpha is None:
        alpha = meta.get("alpha", state.run_config.alpha)
    if dt is None:
        dt = meta.get("dt")
    if alpha is None:
        raise click.UsageError("no alpha given (flag, sidecar, or config)")
    if dt is None:
        raise click.UsageError("no dt given (flag or sidecar)")
    convention = convention or state.run_config.convention
    with state.client() as client:
        resp = client.forward(list(values), float(dt), float(alpha), convention,
                              config=state.series_config(), threads=state.threads())
    payload = resp["spectrum"]
    spectrum = Spectrum(
        coeffs=tuple(complex(c["re"], c["im"]) for c in payload["coeffs"]),
        size=payload["n"],
        order=as_order(payload["alpha"]),
        domega=payload["domega"],
        dt_origin=TWO_PI / (payload["n"] * payload["domega"]),
        convention=KernelConvention.from_name(payload["convention"]),
    )
    write_spectrum(out_path, spectrum)
    click.echo(f"wrote spectrum n={spectrum.size} alpha={spectrum.order.alpha:g} "
               f"domega={spectrum.domega:.17g} -> {out_path}")


@main.command("inverse")
@click.argument("input_path", type=click.Path(exists=True, dir_okay=False, path_type=Path))
@click.option("--out", "out_path", required=True,
              type=click.Path(dir_okay=False, path_type=Path))
@click.pass_obj
@cli_errors
def cmd_inverse(state: CliState, input_path: Path, out_path: Path) -> None:
    """Invert a spectrum file; alpha and convention come from its sidecar."""
    spectrum = read_spectrum(input_path)
    with state.client() as client:
        resp = client.inverse(list(spectrum.coeffs), spectrum.order.alpha, spectrum.domega,
                              spectrum.convention.value,
                              config=state.series_config(), threads=state.threads())
    values = [complex(v["re"], v["im"]) for v in resp["values"]]
    write_signal(out_path, values, dt=resp["dt"], alpha=resp["alpha"])
    click.echo(f"wrote signal n={len(values)} dt={resp['dt']:.17g} -> {out_path}")


@main.command("roundtrip")
@click.argument("input_path", type=click.Path(exists=True, dir_okay=False, path_type=Path))
@click.option("--alpha", type=float, default=None)
@click.option("--dt", type=float, default=None)
@click.option("--report", "report_path", default=None,
              type=click.Path(dir_okay=False, path_type=Path))
@click.option("--convention", type=click.Choice(_CONVENTIONS), default=None)
@click.pass_obj
@cli_errors
def cmd_roundtrip(state: CliState, input_path: Path, alpha: float | None, dt: float | None,
                  report_path: Path | None, convention: str | None) -> None:
    """inverse(forward(signal)) residual report (JSON).

    Reports rather than judges: exits 1 only when alpha = 1 fails its
    1e-9 identity; large a < 1 residuals are expected and exit 0.
    """
    values, meta = read_signal(input_path)
    meta = meta or {}
    if alpha is None:
        alpha = meta.get("alpha", state.run_config.alpha)
    if dt is None:
        dt = meta.get("dt")
    if alpha is None:
        raise click.UsageError("no alpha given (flag, sidecar, or config)")
    if dt is None:
        raise click.UsageError("no dt given (flag or sidecar)")
    convention = convention or state.run_config.convention
    with state.client() as client:
        resp = client.roundtrip(list(values), float(dt), float(alpha), convention,
                                config=state.series_config())
    report = {
        "alpha": resp["alpha"],
        "n": resp["n"],
        "max_abs": resp["max_abs"],
        "rms": resp["rms"],
        "convention": resp["convention"],
    }
    text = json.dumps(report, sort_keys=True)
    if report_path is not None:
        _write_text(report_path, text + "\n")
    click.echo(text)
    if resp["alpha"] == 1.0 and resp["max_abs"] > ALPHA1_ROUNDTRIP_TOL:
        sys.exit(1)


@main.command("mlf")
@click.option("--alpha", type=float, required=True)
@click.option("--re", "re_part", type=float, required=True)
@click.option("--im", "im_part", type=float, default=0.0)
@click.option("--oracle-digits", type=int, default=None)
@click.pass_obj
@cli_errors
def cmd_mlf(state: CliState, alpha: float, re_part: float, im_part: float,
            oracle_digits: int | None) -> None:
    """Evaluate the Mittag-Leffler function E_alpha(re + i*im)."""
    with state.client() as client:
        resp = client.mlf(alpha, re_part, im_part, oracle_digits,
                          config=state.series_config())
    value = complex(resp["value"]["re"], resp["value"]["im"])
    click.echo(f"E_{alpha:g}({_fmt15(complex(re_part, im_part))}) = {_fmt15(value)}")
    if resp.get("oracle") is not None:
        oracle = complex(resp["oracle"]["re"], resp["oracle"]["im"])
        click.echo(f"oracle({oracle_digits} digits) = {_fmt15(oracle)}")
        click.echo(f"relative gap = {resp['rel_gap']:.3e}")


@main.command("quad")
@click.argument("input_path", type=click.Path(exists=True, dir_okay=False, path_type=Path))
@click.option("--partition", "partition_spec", required=True,
              help="'uniform:a,b' or a file of N+1 ascending points, one per line.")
@click.option("--alpha", type=float, required=True)
@click.pass_obj
@cli_errors
def cmd_quad(state: CliState, input_path: Path, partition_spec: str, alpha: float) -> None:
    """Local fractional integral of sampled values over a partition."""
    values, _ = read_signal(input_path)
    if partition_spec.startswith("uniform:"):
        bounds = _parse_floats(partition_spec[len("uniform:"):], "partition bounds")
        if len(bounds) != 2:
            raise click.BadParameter("uniform partition needs exactly 'uniform:a,b'")
        a, b = bounds
        n = len(values)
        points = [a + (b - a) * j / n for j in range(n)] + [b]
    else:
        part_path = Path(partition_spec)
        if not part_path.exists():
            raise click.BadParameter(f"partition file {partition_spec!r} not found")
        points = _parse_floats(",".join(part_path.read_text().split()), "partition points")
    with state.client() as client:
        resp = client.quadrature(list(values), points, alpha)
    click.echo(_fmt15(complex(resp["value"]["re"], resp["value"]["im"])))


@main.command("check")
@click.option("--suite", type=click.Choice(SUITE_NAMES), default="all")
@click.option("--json", "json_path", default=None,
              type=click.Path(dir_okay=False, path_type=Path))
@click.option("--seed", type=int, default=DEFAULT_SEED)
@click.pass_obj
@cli_errors
def cmd_check(state: CliState, suite: str, json_path: Path | None, seed: int) -> None:
    """Run a named property-check suite; exits 1 if any check fails."""
    with state.client() as client:
        resp = client.checks(suite, seed, config=state.series_config())
    for rep in resp["reports"]:
        verdict = {True: "PASS", False: "FAIL", None: "INFO"}[rep["passed"]]
        click.echo(f"{verdict} {rep['name']} max_deviation={rep['max_deviation']:.3e} "
                   f"tolerance={rep['details'].get('tolerance')}")
    if json_path is not None:
        _write_text(json_path, json.dumps(resp, sort_keys=True) + "\n")
    if not resp["passed"]:
        failing = [r["name"] for r in resp["reports"] if r["passed"] is False]
        click.echo(f"failed checks: {', '.join(failing)}", err=True)
        sys.exit(1)
    click.echo(f"suite {suite}: all checks passed (seed={resp['seed']})")


@main.command("sweep")
@click.option("--alphas", default="0.3,0.5,0.8,1.0", metavar="LIST")
@click.option("--ns", default="4,8,16", metavar="LIST")
@click.option("--families", default=",".join(SWEEP_FAMILIES), metavar="LIST")
@click.option("--out", "out_path", required=True,
              type=click.Path(dir_okay=False, path_type=Path))
@click.option("--seed", type=int, default=DEFAULT_SEED)
@click.option("--convention", type=click.Choice(_CONVENTIONS), default=None)
@click.pass_obj
@cli_errors
def cmd_sweep(state: CliState, alphas: str, ns: str, families: str, out_path: Path,
              seed: int, convention: str | None) -> None:
    """Round-trip residual table across orders, sizes, and signal families."""
    convention = convention or state.run_config.convention
    alpha_list = _parse_floats(alphas, "alphas")
    n_list = _parse_ints(ns, "ns")
    family_list = [f.strip() for f in families.split(",") if f.strip()]
    with state.client() as client:
        resp = client.sweep(alpha_list, n_list, family_list, seed, convention,
                            config=state.series_config())
    table = SweepTable(
        rows=tuple(
            SweepRow(
                alpha=r["alpha"], n=r["n"], signal_family=r["signal_family"],
                roundtrip_max_abs=r["roundtrip_max_abs"], roundtrip_rms=r["roundtrip_rms"],
            )
            for r in resp["rows"]
        ),
        seed=resp["seed"],
        convention=KernelConvention.from_name(resp["convention"]),
        skipped=tuple(resp["skipped"]),
    )
    _write_text(out_path, table.to_csv())
    for item in table.skipped:
        click.echo(f"skipped alpha={item['alpha']} n={item['n']}: {item['reason']}", err=True)
    click.echo(f"wrote {len(table.rows)} rows (seed={table.seed}, "
               f"convention={table.convention.value}) -> {out_path}")


@main.command("serve")
@click.option("--host", default="127.0.0.1")
@click.option("--port", type=int, default=8000)
def cmd_serve(host: str, port: int) -> None:
    """Run the HTTP service."""
    import uvicorn

    uvicorn.run("dyft.service.app:app", host=host, port=port)


if __name__ == "__main__":
    main()

"""Signal/spectrum CSV files, JSON metadata sidecars, run configuration.

A signal file is a CSV with header ``index,re,im`` whose indices are
exactly 0..N-1 ascending, plus a JSON sidecar (same path with a ``.json``
suffix) holding ``{n, dt, alpha?}``.  Spectrum files share the CSV layout
with a ``{n, domega, alpha, convention}`` sidecar.  Components are written
with 17 significant digits so write->read round-trips are bit-lossless.
"""

from __future__ import annotations

import csv
import json
import math
from dataclasses import dataclass
from pathlib import Path
from typing import Sequence

from .errors import SignalFormatError
from .specfun import KernelConvention, MLConfig, as_order
from .transform import TWO_PI, Spectrum

__all__ = [
    "CSV_HEADER",
    "sidecar_path",
    "write_signal",
    "read_signal",
    "write_spectrum",
    "read_spectrum",
    "RunConfig",
]

CSV_HEADER = ("index", "re", "im")


def sidecar_path(path: Path | str) -> Path:
    return Path(path).with_suffix(".json")


def _fmt(x: float) -> str:
    return f"{x:.17g}"


def _write_rows(path: Path, values: Sequence[complex]) -> None:
    try:
        with path.open("w", newline="") as fh:
            writer = csv.writer(fh)
            writer.writerow(CSV_HEADER)
            for k, v in enumerate(values):
                writer.writerow([k, _fmt(v.real), _fmt(v.imag)])
    except OSError as exc:
        raise SignalFormatError(f"{path}: {exc}") from None


def _read_rows(path: Path) -> tuple[complex, ...]:
    try:
        with path.open(newline="") as fh:
            reader = csv.reader(fh)
            try:
                header = next(reader)
            except StopIteration:
                raise SignalFormatError(f"{path}: empty file") from None
            if [h.strip() for h in header] != list(CSV_HEADER):
                raise SignalFormatError(
                    f"{path}: expected header 'index,re,im', got {','.join(header)!r}"
                )
            values: list[complex] = []
            for lineno, row in enumerate(reader, start=2):
                if not row:
                    continue
                if len(row) != 3:
                    raise SignalFormatError(f"{path}:{lineno}: expected 3 columns")
                try:
                    idx = int(row[0])
                    re = float(row[1])
                    im = float(row[2])
                except ValueError as exc:
                    raise SignalFormatError(f"{path}:{lineno}: {exc}") from None
                if idx != len(values):
                    raise SignalFormatError(
                        f"{path}:{lineno}: index {idx} out of order (expected {len(values)}); "
                        f"indices must be 0..N-1 exactly once, ascending"
                    )
                if not (math.isfinite(re) and math.isfinite(im)):
                    raise SignalFormatError(f"{path}:{lineno}: non-finite component")
                values.append(complex(re, im))
    except OSError as exc:
        raise SignalFormatError(f"{path}: {exc}") from None
    if not values:
        raise SignalFormatError(f"{path}: no data rows")
    return tuple(values)


def _write_sidecar(path: Path, meta: dict) -> None:
    try:
        sidecar_path(path).write_text(json.dumps(meta, sort_keys=True) + "\n")
    except OSError as exc:
        raise SignalFormatError(f"{sidecar_path(path)}: {exc}") from None


def _read_sidecar(path: Path) -> dict | None:
    meta_path = sidecar_path(path)
    if not meta_path.exists():
        return None
    try:
        data = json.loads(meta_path.read_text())
    except (OSError, json.JSONDecodeError) as exc:
        raise SignalFormatError(f"{meta_path}: {exc}") from None
    if not isinstance(data, dict):
        raise SignalFormatError(f"{meta_path}: sidecar must be a JSON object")
    return data


def write_signal(
    path: Path | str, values: Sequence[complex], dt: float, alpha: float | None = None
) -> None:
    path = Path(path)
    values = [complex(v) for v in values]
    _write_rows(path, values)
    meta: dict = {"n": len(values), "dt": dt}
    if alpha is not None:
        meta["alpha"] = alpha
    _write_sidecar(path, meta)


def read_signal(path: Path | str) -> tuple[tuple[complex, ...], dict | None]:
    """Returns (values, sidecar-metadata-or-None); sidecar n must match."""
    path = Path(path)
    values = _read_rows(path)
    meta = _read_sidecar(path)
    if meta is not None and "n" in meta and int(meta["n"]) != len(values):
        raise SignalFormatError(
            f"{path}: sidecar says n={meta['n']} but file holds {len(values)} rows"
        )
    return values, meta


def write_spectrum(path: Path | str, spectrum: Spectrum) -> None:
    path = Path(path)
    _write_rows(path, spectrum.coeffs)
    meta = {
        "n": spectrum.size,
        "domega": spectrum.domega,
        "alpha": spectrum.order.alpha,
        "convention": spectrum.convention.value,
    }
    _write_sidecar(path, meta)


def read_spectrum(path: Path | str) -> Spectrum:
    """Spectrum files require their sidecar; alpha and domega live there."""
    path = Path(path)
    coeffs = _read_rows(path)
    meta = _read_sidecar(path)
    if meta is None:
        raise SignalFormatError(
            f"{sidecar_path(path)}: missing metadata sidecar (needs n, domega, alpha, convention)"
        )
    missing = [k for k in ("n", "domega", "alpha", "convention") if k not in meta]
    if missing:
        raise SignalFormatError(f"{sidecar_path(path)}: sidecar missing keys {missing}")
    if int(meta["n"]) != len(coeffs):
        raise SignalFormatError(
            f"{path}: sidecar says n={meta['n']} but file holds {len(coeffs)} rows"
        )
    n = len(coeffs)
    domega = float(meta["domega"])
    if not (math.isfinite(domega) and domega > 0.0):
        raise SignalFormatError(f"{path}: invalid domega {meta['domega']!r}")
    try:
        convention = KernelConvention.from_name(str(meta["convention"]))
        order = as_order(float(meta["alpha"]))
    except Exception as exc:
        raise SignalFormatError(f"{sidecar_path(path)}: {exc}") from None
    return Spectrum(
        coeffs=coeffs,
        size=n,
        order=order,
        domega=domega,
        dt_origin=TWO_PI / (n * domega),
        convention=convention,
    )


_RUN_CONFIG_KEYS = {"alpha", "convention", "rel_tol", "max_terms", "magnitude_guard", "threads"}


@dataclass(frozen=True)
class RunConfig:
    """File-loadable defaults; explicit CLI flags override these."""

    alpha: float | None = None
    convention: str = KernelConvention.CONJUGATE_PAIR.value
    rel_tol: float = MLConfig.rel_tol
    max_terms: int = MLConfig.max_terms
    magnitude_guard: float = MLConfig.magnitude_guard
    threads: int | str = 1

    def __post_init__(self) -> None:
        KernelConvention.from_name(self.convention)
        # reuse the MLConfig invariants
        self.ml_config()
        t = self.threads
        if not (t == "auto" or (isinstance(t, int) and not isinstance(t, bool) and t >= 1)):
            raise SignalFormatError(f"threads must be a positive integer or 'auto', got {t!r}")
        if self.alpha is not None:
            as_order(self.alpha)

    def ml_config(self) -> MLConfig:
        return MLConfig(
            rel_tol=self.rel_tol,
            max_terms=self.max_terms,
            magnitude_guard=self.magnitude_guard,
        )

    def resolve_threads(self) -> int:
        if self.threads == "auto":
            import os

            return os.cpu_count() or 1
        return int(self.threads)

    @classmethod
    def from_file(cls, path: Path | str) -> "RunConfig":
        path = Path(path)
        try:
            data = json.loads(path.read_text())
        except (OSError, json.JSONDecodeError) as exc:
            raise SignalFormatError(f"{path}: {exc}") from None
        if not isinstance(data, dict):
            raise SignalFormatError(f"{path}: run config must be a JSON object")
        unknown = sorted(set(data) - _RUN_CONFIG_KEYS)
        if unknown:
            raise SignalFormatError(f"{path}: unknown run-config keys {unknown}")
        defaults = cls()
        try:
            return cls(
                alpha=float(data["alpha"]) if "alpha" in data else None,
                convention=data.get("convention", defaults.convention),
                rel_tol=float(data.get("rel_tol", defaults.rel_tol)),
                max_terms=int(data.get("max_terms", defaults.max_terms)),
                magnitude_guard=float(data.get("magnitude_guard", defaults.magnitude_guard)),
                threads=data.get("threads", defaults.threads),
            )
        except (TypeError, ValueError) as exc:
            raise SignalFormatError(f"{path}: {exc}") from None

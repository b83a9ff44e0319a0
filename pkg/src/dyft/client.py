"""Thin HTTP client for the service; the CLI's only route to the core.

With no base URL the client mounts the ASGI app in-process (full HTTP
semantics, no socket), so the CLI works standalone; pass a base URL to
target a running server instead.
"""

from __future__ import annotations

from typing import Any

import httpx

from .errors import DyftError

__all__ = ["ServiceError", "TransportError", "ServiceClient"]


class ServiceError(DyftError):
    """Structured failure reported by the service."""

    def __init__(self, code: str, message: str, status: int):
        super().__init__(message)
        self.code = code
        self.status = status


class TransportError(DyftError):
    """The service could not be reached at all."""


class ServiceClient:
    def __init__(self, base_url: str | None = None, timeout: float = 600.0):
        if base_url is None:
            import warnings

            with warnings.catch_warnings():
                # this environment's starlette warns on import about its
                # httpx coupling; keep the CLI's stderr clean
                warnings.simplefilter("ignore")
                from fastapi.testclient import TestClient

            from .service.app import create_app

            self._http: httpx.Client = TestClient(
                create_app(), base_url="http://dyft.internal", raise_server_exceptions=False
            )
        else:
            self._http = httpx.Client(base_url=base_url, timeout=timeout)

    def close(self) -> None:
        self._http.close()

    def __enter__(self) -> "ServiceClient":
        return self

    def __exit__(self, *exc_info: object) -> None:
        self.close()

    def _request(self, method: str, path: str, payload: dict | None = None) -> Any:
        try:
            resp = self._http.request(method, path, json=payload)
        except httpx.HTTPError as exc:
            raise TransportError(f"service unreachable: {exc}") from exc
        if resp.status_code == 200:
            return resp.json()
        try:
            detail = resp.json().get("detail")
        except ValueError:
            detail = None
        if isinstance(detail, dict) and "code" in detail:
            raise ServiceError(detail["code"], detail.get("message", ""), resp.status_code)
        # pydantic validation errors and anything else unstructured
        raise ServiceError("input", f"{resp.status_code}: {detail}", resp.status_code)

    # ---- endpoint wrappers -------------------------------------------------

    def health(self) -> dict:
        return self._request("GET", "/v1/health")

    def forward(
        self,
        values: list[complex],
        dt: float,
        alpha: float,
        convention: str = "conjugate-pair",
        config: dict | None = None,
        threads: int = 1,
    ) -> dict:
        payload = {
            "values": [{"re": v.real, "im": v.imag} for v in values],
            "dt": dt,
            "alpha": alpha,
            "convention": convention,
            "threads": threads,
        }
        if config:
            payload["config"] = config
        return self._request("POST", "/v1/transform/forward", payload)

    def inverse(
        self,
        coeffs: list[complex],
        alpha: float,
        domega: float,
        convention: str,
        config: dict | None = None,
        threads: int = 1,
    ) -> dict:
        payload = {
            "spectrum": {
                "coeffs": [{"re": c.real, "im": c.imag} for c in coeffs],
                "n": len(coeffs),
                "alpha": alpha,
                "domega": domega,
                "convention": convention,
            },
            "threads": threads,
        }
        if config:
            payload["config"] = config
        return self._request("POST", "/v1/transform/inverse", payload)

    def roundtrip(
        self,
        values: list[complex],
        dt: float,
        alpha: float,
        convention: str = "conjugate-pair",
        config: dict | None = None,
    ) -> dict:
        payload = {
            "values": [{"re": v.real, "im": v.imag} for v in values],
            "dt": dt,
            "alpha": alpha,
            "convention": convention,
        }
        if config:
            payload["config"] = config
        return self._request("POST", "/v1/transform/roundtrip", payload)

    def mlf(
        self,
        alpha: float,
        re: float,
        im: float = 0.0,
        oracle_digits: int | None = None,
        config: dict | None = None,
    ) -> dict:
        payload: dict = {"alpha": alpha, "re": re, "im": im}
        if oracle_digits is not None:
            payload["oracle_digits"] = oracle_digits
        if config:
            payload["config"] = config
        return self._request("POST", "/v1/specfun/mlf", payload)

    def quadrature(self, values: list[complex], partition: list[float], alpha: float) -> dict:
        payload = {
            "values": [{"re": v.real, "im": v.imag} for v in values],
            "partition": partition,
            "alpha": alpha,
        }
        return self._request("POST", "/v1/quadrature", payload)

    def checks(self, suite: str, seed: int, config: dict | None = None) -> dict:
        payload: dict = {"suite": suite, "seed": seed}
        if config:
            payload["config"] = config
        return self._request("POST", "/v1/checks", payload)

    def sweep(
        self,
        alphas: list[float],
        ns: list[int],
        families: list[str],
        seed: int,
        convention: str = "conjugate-pair",
        config: dict | None = None,
    ) -> dict:
        payload: dict = {
            "alphas": alphas,
            "ns": ns,
            "families": families,
            "seed": seed,
            "convention": convention,
        }
        if config:
            payload["config"] = config
        return self._request("POST", "/v1/sweep", payload)

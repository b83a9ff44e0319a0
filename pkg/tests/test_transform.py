"""Plan construction and transform-pair tests.

Round-trip residual goldens for the a = 0.5, N = 4 impulse were frozen
from a 50-digit mpmath recomputation of the whole pipeline:

    max_abs = 1.2567583341910251      rms = 1.0278187741153636
"""

from __future__ import annotations

import cmath
import math

import numpy as np
import pytest

from dyft import (
    Direction,
    DomainError,
    EnvelopeError,
    GuardExceededError,
    KernelConvention,
    MLConfig,
    PlanMismatchError,
    SampledSignal,
    Spectrum,
    approximate_spectrum,
    as_order,
    build_discrete_approximation,
    ensure_envelope,
    forward,
    gamma_pos,
    inverse,
    make_plan,
    max_size_for_order,
    plan_config,
    plan_for,
    roundtrip,
)
from dyft.analysis import random_signal

GOLDEN_IMPULSE_MAX_ABS = 1.2567583341910251
GOLDEN_IMPULSE_RMS = 1.0278187741153636


class TestPlan:
    def test_size_one_is_unit(self):
        for alpha in (0.3, 1.0):
            plan = make_plan(1, alpha, Direction.FORWARD)
            assert plan.kernel.shape == (1, 1)
            assert plan.kernel[0, 0] == 1.0 + 0.0j

    def test_theta_zero_rows_exact(self):
        for alpha in (0.5, 1.0):
            plan = plan_for(8, alpha, Direction.FORWARD)
            assert np.all(plan.kernel[0, :] == 1.0 + 0.0j)
            assert np.all(plan.kernel[:, 0] == 1.0 + 0.0j)

    def test_symmetry_exact(self):
        for alpha in (0.5, 0.8, 1.0):
            plan = plan_for(8, alpha, Direction.FORWARD)
            assert np.array_equal(plan.kernel, plan.kernel.T)

    def test_alpha1_hand_values_n4(self):
        plan = make_plan(4, 1.0, Direction.FORWARD)
        assert abs(plan.kernel[1, 1] - (-1j)) <= 1e-12
        assert abs(plan.kernel[1, 2] - (-1.0)) <= 1e-12
        assert abs(plan.kernel[2, 2] - 1.0) <= 1e-12

    def test_alpha1_inverse_is_conjugate(self):
        fwd = make_plan(4, 1.0, Direction.FORWARD)
        inv = make_plan(4, 1.0, Direction.INVERSE)
        assert np.allclose(inv.kernel, np.conj(fwd.kernel), rtol=0, atol=1e-15)

    @pytest.mark.parametrize("size", range(2, 17))
    def test_dft_reduction_entrywise(self, size):
        plan = plan_for(size, 1.0, Direction.FORWARD)
        grid = np.outer(np.arange(size), np.arange(size))
        want = np.exp(-2j * np.pi * grid / size)
        assert np.max(np.abs(plan.kernel - want)) <= 1e-12

    def test_guard_error_names_offender(self):
        with pytest.raises(GuardExceededError) as info:
            make_plan(16, 0.8, Direction.FORWARD, cfg=MLConfig(magnitude_guard=30.0))
        exc = info.value
        assert exc.n == 15 and exc.k == 15
        assert exc.magnitude == pytest.approx((2 * math.pi * 225 / 16) ** 0.8)
        assert "15" in str(exc)

    def test_worker_count_does_not_change_bits(self):
        cfg = plan_config(8, 0.6)
        one = make_plan(8, 0.6, Direction.FORWARD, cfg=cfg, workers=1)
        four = make_plan(8, 0.6, Direction.FORWARD, cfg=cfg, workers=4)
        assert np.array_equal(one.kernel, four.kernel)

    def test_kernel_is_frozen(self):
        plan = plan_for(4, 1.0, Direction.FORWARD)
        with pytest.raises(ValueError):
            plan.kernel[0, 0] = 0.0

    def test_plan_for_caches(self):
        a = plan_for(8, 0.5, Direction.FORWARD)
        b = plan_for(8, 0.5, Direction.FORWARD)
        assert a is b


class TestEnvelope:
    @pytest.mark.parametrize(
        "alpha,cap", [(1.0, 64), (0.8, 64), (0.79, 32), (0.5, 32), (0.49, 16), (0.1, 16)]
    )
    def test_caps(self, alpha, cap):
        assert max_size_for_order(alpha) == cap

    def test_ensure_envelope(self):
        ensure_envelope(16, 0.3)
        with pytest.raises(EnvelopeError) as info:
            ensure_envelope(64, 0.3)
        assert info.value.limit == 16
        ensure_envelope(64, 1.0)

    def test_plan_config_raises_guard_only_when_needed(self):
        cfg = plan_config(4, 0.5)
        assert cfg.magnitude_guard == 30.0  # worst argument 3.76 fits already
        cfg16 = plan_config(16, 0.8)
        assert cfg16.magnitude_guard == pytest.approx((2 * math.pi * 225 / 16) ** 0.8, rel=1e-9)

    def test_plan_config_enforces_envelope(self):
        with pytest.raises(EnvelopeError):
            plan_config(64, 0.3)


class TestForward:
    def test_ones_alpha1(self):
        plan = plan_for(4, 1.0, Direction.FORWARD)
        spec = forward([1, 1, 1, 1], 1.0, plan)
        assert abs(spec.coeffs[0] - 1.0) <= 1e-12
        for k in (1, 2, 3):
            assert abs(spec.coeffs[k]) <= 1e-12

    @pytest.mark.parametrize("alpha,size", [(0.5, 4), (0.8, 8), (1.0, 6), (0.3, 5)])
    def test_constant_forces_dc_bin(self, alpha, size):
        c = 1.5 - 0.5j
        plan = plan_for(size, alpha, Direction.FORWARD)
        spec = forward([c] * size, 1.0, plan)
        want = c * size ** (1 - alpha) / gamma_pos(1 + alpha)
        assert abs(spec.coeffs[0] - want) <= 1e-12 * abs(want)

    def test_impulse_flat_spectrum(self):
        plan = plan_for(4, 0.5, Direction.FORWARD)
        spec = forward([1, 0, 0, 0], 1.0, plan)
        want = 1.0 / (gamma_pos(1.5) * 2.0)
        assert want == pytest.approx(0.5641895835477563, rel=1e-12)
        for k in range(4):
            assert abs(spec.coeffs[k] - want) <= 1e-12

    def test_domega(self):
        plan = plan_for(8, 1.0, Direction.FORWARD)
        spec = forward([0.0] * 8, 0.25, plan)
        assert spec.domega == pytest.approx(2 * math.pi / 2.0, rel=1e-15)
        assert spec.dt_origin == 0.25

    def test_direction_mismatch(self):
        inv = plan_for(4, 1.0, Direction.INVERSE)
        with pytest.raises(PlanMismatchError):
            forward([1, 0, 0, 0], 1.0, inv)

    def test_size_mismatch(self):
        plan = plan_for(4, 1.0, Direction.FORWARD)
        with pytest.raises(PlanMismatchError):
            forward([1, 0, 0], 1.0, plan)

    def test_nonfinite_rejected(self):
        plan = plan_for(2, 1.0, Direction.FORWARD)
        with pytest.raises(DomainError):
            forward([1.0, float("nan")], 1.0, plan)


class TestInverse:
    def test_unit_spectrum_alpha1(self):
        fwd = plan_for(4, 1.0, Direction.FORWARD)
        inv = plan_for(4, 1.0, Direction.INVERSE)
        spec = forward([1, 1, 1, 1], 1.0, fwd)
        values = inverse(spec, inv)
        for v in values:
            assert abs(v - 1.0) <= 1e-12

    def test_dc_impulse_spreads_flat(self):
        for alpha in (0.4, 1.0):
            inv = plan_for(5, alpha, Direction.INVERSE)
            spec = Spectrum(
                coeffs=(2.0 + 1.0j, 0j, 0j, 0j, 0j),
                size=5,
                order=as_order(alpha),
                domega=2 * math.pi / 5,
                dt_origin=1.0,
            )
            values = inverse(spec, inv)
            for v in values:
                assert abs(v - (2.0 + 1.0j)) <= 1e-12

    def test_zero_spectrum(self):
        inv = plan_for(3, 0.7, Direction.INVERSE)
        spec = Spectrum(
            coeffs=(0j, 0j, 0j), size=3, order=as_order(0.7),
            domega=2 * math.pi / 3, dt_origin=1.0,
        )
        assert inverse(spec, inv) == (0j, 0j, 0j)

    def test_mismatches(self):
        inv5 = plan_for(5, 0.7, Direction.INVERSE)
        fwd5 = plan_for(5, 0.7, Direction.FORWARD)
        spec = forward([1, 0, 0, 0, 0], 1.0, fwd5)
        with pytest.raises(PlanMismatchError):
            inverse(spec, fwd5)  # wrong direction
        with pytest.raises(PlanMismatchError):
            inverse(spec, plan_for(4, 0.7, Direction.INVERSE))  # wrong size
        with pytest.raises(PlanMismatchError):
            inverse(spec, plan_for(5, 0.8, Direction.INVERSE))  # wrong order
        wrong_conv = plan_for(
            5, 0.7, Direction.INVERSE, KernelConvention.NEGATED_PRINCIPAL
        )
        with pytest.raises(PlanMismatchError):
            inverse(spec, wrong_conv)
        inverse(spec, inv5)  # matching plan passes


class TestSpectrumType:
    def test_invariant_enforced(self):
        with pytest.raises(DomainError):
            Spectrum(coeffs=(0j,) * 4, size=4, order=as_order(1.0), domega=1.0, dt_origin=1.0)

    def test_size_must_match(self):
        with pytest.raises(DomainError):
            Spectrum(
                coeffs=(0j,) * 3, size=4, order=as_order(1.0),
                domega=2 * math.pi / 4, dt_origin=1.0,
            )


class TestApproximateSpectrum:
    def test_omega_zero(self):
        sig = SampledSignal(values=(1 + 1j, 2.0, -0.5j), dt=0.5)
        approx = build_discrete_approximation(sig, 0.6)
        got = approximate_spectrum(approx, 0.0)
        want = sum(approx.coeffs) / gamma_pos(1.6)
        assert abs(got - want) <= 1e-13

    def test_ones_alpha1_first_bin_vanishes(self):
        sig = SampledSignal(values=(1.0,) * 4, dt=1.0)
        approx = build_discrete_approximation(sig, 1.0)
        got = approximate_spectrum(approx, math.pi / 2)
        assert abs(got) <= 1e-12

    def test_impulse_single_term(self):
        sig = SampledSignal(values=(3.0 - 1j, 0.0, 0.0), dt=0.5)
        approx = build_discrete_approximation(sig, 0.5)
        for omega in (0.0, 1.7, 4.0):
            got = approximate_spectrum(approx, omega)
            want = approx.coeffs[0] / gamma_pos(1.5)
            assert abs(got - want) <= 1e-13

    def test_guard_error(self):
        sig = SampledSignal(values=(1.0,) * 8, dt=1.0)
        approx = build_discrete_approximation(sig, 0.5)
        with pytest.raises(GuardExceededError):
            approximate_spectrum(approx, 1e6)

    def test_consistency_with_forward_small(self):
        # spectrum at omega = n * domega equals T^a F(n); the acceptance
        # suite runs the full grid
        alpha, size, dt = 0.5, 8, 0.7
        values = random_signal(size, 31)
        cfg = plan_config(size, alpha)
        plan = plan_for(size, alpha, Direction.FORWARD)
        spec = forward(values, dt, plan)
        approx = build_discrete_approximation(SampledSignal(tuple(values), dt), alpha)
        t_alpha = (size * dt) ** alpha
        for n in range(size):
            lhs = approximate_spectrum(approx, n * spec.domega, cfg)
            rhs = t_alpha * spec.coeffs[n]
            assert abs(lhs - rhs) <= 1e-10 * max(1.0, abs(rhs))


class TestRoundtrip:
    def test_alpha1_random(self):
        fwd = plan_for(16, 1.0, Direction.FORWARD)
        inv = plan_for(16, 1.0, Direction.INVERSE)
        values = random_signal(16, 8)
        rec, report = roundtrip(values, 0.5, fwd, inv)
        assert report.max_abs <= 1e-9
        assert max(abs(a - b) for a, b in zip(rec, values)) == report.max_abs

    def test_zero_signal_exact(self):
        fwd = plan_for(4, 0.4, Direction.FORWARD)
        inv = plan_for(4, 0.4, Direction.INVERSE)
        _, report = roundtrip([0.0] * 4, 1.0, fwd, inv)
        assert report.max_abs == 0.0
        assert report.rms == 0.0

    def test_golden_residual_alpha_half_impulse(self):
        fwd = plan_for(4, 0.5, Direction.FORWARD)
        inv = plan_for(4, 0.5, Direction.INVERSE)
        _, report = roundtrip([1, 0, 0, 0], 1.0, fwd, inv)
        assert report.max_abs == pytest.approx(GOLDEN_IMPULSE_MAX_ABS, rel=1e-9)
        assert report.rms == pytest.approx(GOLDEN_IMPULSE_RMS, rel=1e-9)

    def test_plan_pairing_enforced(self):
        fwd = plan_for(4, 0.5, Direction.FORWARD)
        with pytest.raises(PlanMismatchError):
            roundtrip([1, 0, 0, 0], 1.0, fwd, fwd)
        with pytest.raises(PlanMismatchError):
            roundtrip([1, 0, 0, 0], 1.0, fwd, plan_for(4, 0.6, Direction.INVERSE))


class TestLinearityStructure:
    def test_forward_linear(self):
        plan = plan_for(8, 0.5, Direction.FORWARD)
        f1 = random_signal(8, 1)
        f2 = random_signal(8, 2)
        a, b = 2 + 1j, -3.0
        combo = [a * x + b * y for x, y in zip(f1, f2)]
        lhs = forward(combo, 1.0, plan).coeffs
        r1 = forward(f1, 1.0, plan).coeffs
        r2 = forward(f2, 1.0, plan).coeffs
        dev = max(abs(c - (a * x + b * y)) for c, x, y in zip(lhs, r1, r2))
        assert dev <= 1e-10

    def test_inverse_linear(self):
        inv = plan_for(6, 0.7, Direction.INVERSE)
        domega = 2 * math.pi / 6

        def spec_of(coeffs):
            return Spectrum(
                coeffs=tuple(coeffs), size=6, order=as_order(0.7),
                domega=domega, dt_origin=1.0,
            )

        F1 = random_signal(6, 3)
        F2 = random_signal(6, 4)
        a, b = 0.5 - 2j, 1.25j
        combo = [a * x + b * y for x, y in zip(F1, F2)]
        lhs = inverse(spec_of(combo), inv)
        r1 = inverse(spec_of(F1), inv)
        r2 = inverse(spec_of(F2), inv)
        dev = max(abs(c - (a * x + b * y)) for c, x, y in zip(lhs, r1, r2))
        assert dev <= 1e-10

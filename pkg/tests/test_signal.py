"""Signal-statistics tests.

The Bessel and Marcum kernels here are written from scratch, so the
tests lean on independent routes: scipy.special for I0, adaptive
quadrature of the density for the Rician tail, and closed-form Rayleigh
identities.  Frozen constants were produced by those oracles and are
pinned at their verified accuracy.
"""

import math

import numpy as np
import pytest
from scipy import integrate, special

from bayesroc.signal import (
    GaussianEqualVariance,
    RayleighRician,
    bessel_i0,
    bessel_i0e,
    marcum_q1,
    pd_of_threshold,
    pfa_of_threshold,
    rayleigh_pdf,
    rician_pdf,
    snr_for_pd,
    threshold_of_pfa,
)

# Quadrature-oracle values for the Rician tail, computed once with
# scipy.integrate.quad over x exp(-(x-a)^2/2) i0e(ax) (estimated error
# ~1e-14 each).
T_PFA_35 = 1.4490149236627468       # sqrt(-2 ln 0.35)
T_PFA_08 = 2.247544724497493        # sqrt(-2 ln 0.08)
T_PFA_01 = 3.0348542587702925       # sqrt(-2 ln 0.01)
Q1_SNR2_AT_T35 = 0.8068357174517642
Q1_SNR2_AT_T08 = 0.49926195464212303
Q1_SNR3_AT_T35 = 0.9638238955371516


def oracle_rician_pdf(x, snr):
    """Independent density route via scipy's scaled Bessel."""
    return x * math.exp(-0.5 * (x - snr) ** 2) * special.i0e(x * snr)


def oracle_q1(a, b):
    value, _ = integrate.quad(
        oracle_rician_pdf, b, a + 14.0, args=(a,), epsabs=1e-13, epsrel=1e-13, limit=400
    )
    return value


class TestBesselI0:
    def test_at_zero(self):
        assert bessel_i0(0.0) == 1.0
        assert bessel_i0e(0.0) == 1.0

    def test_series_value(self):
        assert bessel_i0(1.0) == pytest.approx(1.2660658777520084, rel=1e-14)

    def test_rejects_negative(self):
        with pytest.raises(ValueError):
            bessel_i0(-1.0)
        with pytest.raises(ValueError):
            bessel_i0e(-0.5)

    def test_against_scipy_across_regimes(self):
        for x in np.concatenate([np.linspace(0, 14.9, 60), np.linspace(15, 120, 60)]):
            assert bessel_i0e(float(x)) == pytest.approx(float(special.i0e(x)), rel=1e-12)

    def test_series_asymptotic_crossover_agreement(self):
        # Both branches evaluated just inside their shared neighborhood.
        from bayesroc.signal import _i0_series, _i0e_asymptotic

        for x in (14.0, 15.0, 16.0, 20.0):
            series = math.exp(-x) * _i0_series(x)
            asym = _i0e_asymptotic(x)
            assert series == pytest.approx(asym, rel=1e-12)

    def test_scaled_variant_finite_far_out(self):
        for x in (50.0, 1e4, 1e8):
            value = bessel_i0e(x)
            assert math.isfinite(value) and value > 0.0
        assert bessel_i0e(50.0) == pytest.approx(0.056561626647454184, rel=1e-12)

    def test_unscaled_overflow_is_inf_not_garbage(self):
        assert bessel_i0(800.0) == math.inf


class TestRayleighPdf:
    def test_values(self):
        assert rayleigh_pdf(0.0) == 0.0
        assert rayleigh_pdf(1.0) == pytest.approx(math.exp(-0.5), rel=1e-15)

    def test_rejects_negative(self):
        with pytest.raises(ValueError):
            rayleigh_pdf(-0.1)

    def test_normalization(self):
        total, _ = integrate.quad(rayleigh_pdf, 0.0, 12.0, epsabs=1e-12)
        assert total == pytest.approx(1.0, abs=1e-9)


class TestRicianPdf:
    def test_snr_zero_reduces_to_rayleigh(self):
        for x in np.linspace(0, 8, 50):
            assert rician_pdf(float(x), 0.0) == pytest.approx(rayleigh_pdf(float(x)), rel=1e-14)

    @pytest.mark.parametrize("snr", [0.0, 1.0, 2.0, 3.0, 5.0])
    def test_normalization(self, snr):
        total, _ = integrate.quad(rician_pdf, 0.0, snr + 12.0, args=(snr,), epsabs=1e-12, limit=300)
        assert total == pytest.approx(1.0, abs=1e-8)

    def test_matches_independent_series_route(self):
        assert rician_pdf(2.0, 2.0) == pytest.approx(oracle_rician_pdf(2.0, 2.0), rel=1e-12)

    def test_no_overflow_at_large_products(self):
        # x * snr = 1e6; the unscaled Bessel would overflow long before.
        value = rician_pdf(1000.0, 1000.0)
        assert math.isfinite(value)


class TestRayleighTail:
    def test_zero_threshold_passes_everything(self):
        assert pfa_of_threshold(0.0) == 1.0

    def test_figure_values(self):
        assert pfa_of_threshold(1.4490) == pytest.approx(0.35, abs=1e-4)
        assert pfa_of_threshold(3.0349) == pytest.approx(0.01, abs=1e-4)

    def test_inverse_values(self):
        assert threshold_of_pfa(1.0) == 0.0
        assert threshold_of_pfa(0.35) == pytest.approx(T_PFA_35, rel=1e-14)
        assert threshold_of_pfa(0.08) == pytest.approx(T_PFA_08, rel=1e-14)

    def test_inverse_domain(self):
        with pytest.raises(ValueError):
            threshold_of_pfa(0.0)
        with pytest.raises(ValueError):
            threshold_of_pfa(1.2)

    def test_round_trip(self):
        for t in np.linspace(0.01, 6.0, 120):
            back = threshold_of_pfa(pfa_of_threshold(float(t)))
            assert back == pytest.approx(float(t), rel=1e-14)


class TestMarcumQ1:
    def test_whole_support(self):
        for a in (0.0, 0.5, 2.0, 6.0):
            assert marcum_q1(a, 0.0) == 1.0

    def test_reduces_to_rayleigh_tail(self):
        for b in np.linspace(0.0, 6.0, 61):
            assert marcum_q1(0.0, float(b)) == pytest.approx(
                math.exp(-0.5 * b * b), abs=1e-10
            )
        assert marcum_q1(0.0, 1.0) == pytest.approx(0.6065306597126334, rel=1e-12)

    def test_pinned_oracle_values(self):
        assert marcum_q1(2.0, T_PFA_35) == pytest.approx(Q1_SNR2_AT_T35, abs=1e-9)
        assert marcum_q1(2.0, T_PFA_08) == pytest.approx(Q1_SNR2_AT_T08, abs=1e-9)
        assert marcum_q1(3.0, T_PFA_35) == pytest.approx(Q1_SNR3_AT_T35, abs=1e-9)
        # reference operating point: pd of about 0.8 at the pfa = 0.35 threshold
        assert abs(marcum_q1(2.0, T_PFA_35) - 0.80) < 0.02

    def test_against_quadrature_grid(self):
        grid = np.linspace(0.0, 6.0, 7)
        for a in grid:
            for b in grid:
                assert marcum_q1(float(a), float(b)) == pytest.approx(
                    oracle_q1(float(a), float(b)), abs=1e-8
                )

    def test_monotone_and_bounded(self):
        rng = np.random.default_rng(7)
        for _ in range(200):
            a = float(rng.uniform(0, 6))
            b = float(rng.uniform(0, 6))
            q = marcum_q1(a, b)
            assert 0.0 <= q <= 1.0
            assert marcum_q1(a, b + 0.25) <= q + 1e-12
            assert marcum_q1(a + 0.25, b) >= q - 1e-12

    def test_domain_errors(self):
        with pytest.raises(ValueError):
            marcum_q1(-1.0, 1.0)
        with pytest.raises(ValueError):
            marcum_q1(1.0, -1.0)

    def test_huge_arguments_use_normal_limit(self):
        assert marcum_q1(80.0, 1.0) == pytest.approx(1.0, abs=1e-9)
        assert marcum_q1(1.0, 80.0) == pytest.approx(0.0, abs=1e-9)


class TestSignalModels:
    def test_rician_dominates_rayleigh(self):
        model = RayleighRician(2.0)
        for t in np.linspace(0.0, 6.0, 40):
            pd = model.pd(float(t))
            pfa = model.pfa(float(t))
            assert pd >= pfa
            if t > 0:
                assert pd > pfa

    def test_zero_snr_collapses(self):
        model = RayleighRician(0.0)
        for t in np.linspace(0.0, 5.0, 25):
            assert model.pd(float(t)) == pytest.approx(model.pfa(float(t)), abs=1e-10)

    def test_zero_threshold_detects_everything(self):
        assert pd_of_threshold(0.0, RayleighRician(3.0)) == 1.0
        assert pd_of_threshold(-50.0, GaussianEqualVariance(1.0)) == pytest.approx(1.0, abs=1e-12)

    def test_model_validation(self):
        with pytest.raises(ValueError):
            RayleighRician(-1.0)
        with pytest.raises(ValueError):
            GaussianEqualVariance(float("nan"))

    def test_gaussian_tails(self):
        model = GaussianEqualVariance(2.0)
        # pfa is the standard normal upper tail, pd the same tail shifted
        # by the separation
        assert model.pfa(0.0) == pytest.approx(0.5, rel=1e-14)
        assert model.pd(2.0) == pytest.approx(0.5, rel=1e-14)
        assert model.pfa(1.6448536269514722) == pytest.approx(0.05, rel=1e-9)

    def test_gaussian_threshold_inverse(self):
        model = GaussianEqualVariance(1.0)
        for pfa in (0.9, 0.5, 0.1, 0.01, 1e-6):
            t = model.threshold_at_pfa(pfa)
            assert model.pfa(t) == pytest.approx(pfa, rel=1e-9)

    def test_snr_for_pd_inverts_marcum(self):
        t = threshold_of_pfa(0.01)
        snr = snr_for_pd(0.9, t)
        assert marcum_q1(snr, t) == pytest.approx(0.9, abs=1e-10)

    def test_snr_for_pd_domain(self):
        t = threshold_of_pfa(0.35)
        with pytest.raises(ValueError):
            snr_for_pd(0.2, t)  # below the pfa floor of this threshold
        assert snr_for_pd(pfa_of_threshold(t), t) == 0.0

import math
from fractions import Fraction

import mpmath
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from eotransducer.errors import DomainError
from eotransducer.physics import (
    CONSTANTS,
    TWO_PI,
    EOParams,
    TransferCoefficients,
    cooperativity_for_eta,
    derived_quantities,
    eta_resonant,
    kappa_p_explicit,
    kappa_p_resonant,
    thermal_occupation,
    transfer_coefficients,
)

from helpers import kappa_of, random_params

OMEGA_10GHZ = TWO_PI * 10e9


def bose_mp(omega, T):
    mpmath.mp.dps = 40
    x = mpmath.mpf(CONSTANTS.hbar) * omega / (mpmath.mpf(CONSTANTS.k_B) * T)
    return float(1 / mpmath.expm1(x))


class TestThermalOccupation:
    def test_zero_temperature_is_exactly_zero(self):
        assert thermal_occupation(OMEGA_10GHZ, 0.0) == 0.0
        assert thermal_occupation(1e30, 0.0) == 0.0

    def test_10ghz_at_10mk_order_of_magnitude(self):
        assert thermal_occupation(OMEGA_10GHZ, 0.01) < 1e-20

    def test_10ghz_at_10mk_against_high_precision(self):
        expected = bose_mp(OMEGA_10GHZ, 0.01)  # 1.43599e-21
        assert thermal_occupation(OMEGA_10GHZ, 0.01) == pytest.approx(expected, rel=1e-2)
        assert thermal_occupation(OMEGA_10GHZ, 0.01) == pytest.approx(expected, rel=1e-12)

    @pytest.mark.parametrize("T", [0.3, 1.0, 300.0])
    def test_matches_high_precision(self, T):
        assert thermal_occupation(OMEGA_10GHZ, T) == pytest.approx(bose_mp(OMEGA_10GHZ, T), rel=1e-12)

    def test_optical_at_room_temperature_negligible(self):
        assert thermal_occupation(TWO_PI * 300e12, 300.0) < 1e-20

    def test_huge_ratio_no_overflow(self):
        val = thermal_occupation(1e20, 1e-6)
        assert val == 0.0 and not math.isnan(val)

    @pytest.mark.parametrize("freq", [0.0, -1.0])
    def test_rejects_non_positive_frequency(self, freq):
        with pytest.raises(DomainError):
            thermal_occupation(freq, 1.0)

    @given(st.floats(0.01, 10.0), st.floats(0.01, 10.0))
    def test_monotone_in_temperature(self, T1, T2):
        if T1 == T2:
            return
        lo, hi = sorted((T1, T2))
        assert thermal_occupation(OMEGA_10GHZ, lo) < thermal_occupation(OMEGA_10GHZ, hi)

    @given(st.floats(1e9, 1e12), st.floats(1e9, 1e12))
    def test_monotone_in_frequency(self, w1, w2):
        if w1 == w2:
            return
        lo, hi = sorted((w1, w2))
        assert thermal_occupation(lo, 1.0) > thermal_occupation(hi, 1.0)


class TestDerivedQuantities:
    def test_unit_cooperativity(self):
        k = 3.7
        p = EOParams(g=k / 2, kappa_m_c=k, kappa_m_i=0.0, kappa_a_c=k, kappa_a_i=0.0)
        assert derived_quantities(p).C_g == pytest.approx(1.0, abs=1e-15)

    def test_coupling_ratio(self):
        k = 1.0
        p = EOParams(g=0.1, kappa_m_c=0.999 * k, kappa_m_i=0.001 * k, kappa_a_c=k, kappa_a_i=0.0)
        d = derived_quantities(p)
        assert d.zeta_m == pytest.approx(0.999, abs=1e-15)
        assert d.zeta_a == 1.0

    def test_random_against_direct_formula(self, rng):
        for _ in range(200):
            g, a, b, c, e = (rng.uniform(0.01, 5) for _ in range(5))
            p = EOParams(g, a, b, c, e, temperature=rng.uniform(0, 1))
            d = derived_quantities(p)
            assert d.C_g == pytest.approx(4 * g * g / ((a + b) * (c + e)), rel=1e-14)
            assert d.kappa_m == a + b and d.kappa_a == c + e
            assert 0 <= d.zeta_m <= 1 and 0 <= d.zeta_a <= 1
            assert d.N_m == thermal_occupation(p.omega_m, p.temperature)
            assert d.N_a == thermal_occupation(p.omega_o, p.temperature)

    @pytest.mark.parametrize("kw", [
        dict(g=-1, kappa_m_c=1, kappa_m_i=0, kappa_a_c=1, kappa_a_i=0),
        dict(g=1, kappa_m_c=0, kappa_m_i=0, kappa_a_c=1, kappa_a_i=0),
        dict(g=1, kappa_m_c=1, kappa_m_i=0, kappa_a_c=0, kappa_a_i=0),
        dict(g=1, kappa_m_c=1, kappa_m_i=0, kappa_a_c=1, kappa_a_i=0, temperature=-1),
    ])
    def test_invalid_params(self, kw):
        with pytest.raises(DomainError):
            EOParams(**kw)


class TestTransfer:
    def test_matched_point(self):
        p = EOParams.from_dimensionless(1.0, 1.0, 1.0, kappa=1.0)
        tr = transfer_coefficients(p, 0.0)
        assert tr.eta == pytest.approx(1.0, abs=1e-12)
        assert tr.kappa_P == pytest.approx(0.0, abs=1e-12)

    def test_low_cooperativity_unit_coupling(self):
        tr = transfer_coefficients(EOParams.from_dimensionless(0.2, 1.0, 1.0), 0.0)
        assert tr.eta == pytest.approx(5 / 9, abs=1e-12)

    def test_low_cooperativity_lossy(self):
        tr = transfer_coefficients(EOParams.from_dimensionless(0.2, 0.999, 0.8), 0.0)
        assert tr.eta == pytest.approx(0.4440, abs=1e-12)
        assert tr.eta < 0.5

    def test_row_unitarity_and_symmetry(self, rng):
        for _ in range(1000):
            p = random_params(rng)
            w = rng.uniform(-5, 5) * kappa_of(p)
            tr = transfer_coefficients(p, w)
            assert abs(tr.eta + tr.kappa_P + tr.kappa_Em + tr.kappa_Ea - 1.0) < 1e-12
            for v in (tr.eta, tr.kappa_P, tr.kappa_Em, tr.kappa_Ea):
                assert -1e-15 <= v <= 1 + 1e-12
            mirror = transfer_coefficients(p, -w)
            assert abs(tr.eta - mirror.eta) < 1e-12
            assert abs(tr.kappa_P - mirror.kappa_P) < 1e-12

    def test_kappa_p_explicit_form(self, rng):
        for _ in range(500):
            p = random_params(rng)
            w = rng.uniform(-5, 5) * kappa_of(p)
            assert abs(transfer_coefficients(p, w).kappa_P - kappa_p_explicit(p, w)) < 1e-12

    def test_resonant_consistency(self, rng):
        for _ in range(500):
            p = random_params(rng)
            d = derived_quantities(p)
            tr = transfer_coefficients(p, 0.0)
            assert abs(tr.eta - eta_resonant(d.C_g, d.zeta_m, d.zeta_a)) < 1e-12
            assert abs(tr.kappa_P - kappa_p_resonant(d.C_g, d.zeta_m)) < 1e-12

    def test_no_coupling(self):
        tr = transfer_coefficients(EOParams.from_dimensionless(0.0, 1.0, 1.0), 0.3)
        assert tr.eta == 0.0
        assert tr.kappa_P == pytest.approx(1.0, abs=1e-15)

    def test_resonant_constructor_matches_solved_params(self):
        for eta, zm, za in [(0.1, 1.0, 1.0), (0.1, 0.999, 0.8), (0.35, 0.9, 0.95)]:
            direct = TransferCoefficients.resonant(eta, zm, za)
            C = cooperativity_for_eta(eta, zm, za)
            solved = transfer_coefficients(EOParams.from_dimensionless(C, zm, za), 0.0)
            assert direct.eta == eta
            for name in ("eta", "kappa_P", "kappa_Em", "kappa_Ea"):
                assert getattr(direct, name) == pytest.approx(getattr(solved, name), abs=1e-14)

    def test_resonant_constructor_exact_complement(self):
        tr = TransferCoefficients.resonant(0.1)
        assert tr.kappa_P == 1.0 - 0.1
        assert tr.kappa_E == 0.0


class TestResonantFormulas:
    def test_eta_maximum(self):
        assert eta_resonant(1, 1, 1) == 1.0

    def test_eta_values(self):
        assert eta_resonant(0.2, 1, 1) == pytest.approx(float(Fraction(5, 9)), abs=1e-15)
        assert eta_resonant(0.2, 0.999, 0.8) == pytest.approx(0.4440, abs=1e-12)

    def test_kappa_p_values(self):
        assert kappa_p_resonant(1, 1) == 0.0
        assert kappa_p_resonant(0, 1) == 1.0
        # (2 * 0.999 / 1.2 - 1)^2 = 0.665^2
        expected = float((Fraction(2 * 999, 1000) / Fraction(6, 5) - 1) ** 2)
        assert kappa_p_resonant(0.2, 0.999) == pytest.approx(expected, abs=1e-14)
        assert expected == pytest.approx(0.442225, abs=1e-12)

    @settings(max_examples=200)
    @given(st.floats(0.0, 1.0), st.floats(0.0, 1.0), st.floats(1e-4, 1e4))
    def test_peak_at_unit_cooperativity(self, zm, za, C):
        assert eta_resonant(1.0, zm, za) >= eta_resonant(C, zm, za)

    @settings(max_examples=200)
    @given(st.floats(0.0, 100.0), st.floats(0.0, 1.0), st.floats(0.0, 1.0))
    def test_range(self, C, zm, za):
        assert 0.0 <= eta_resonant(C, zm, za) <= 1.0
        assert 0.0 <= kappa_p_resonant(C, zm) <= 1.0

    @given(st.floats(1e-6, 0.999), st.floats(0.5, 1.0))
    def test_cooperativity_inversion(self, eta, zeta):
        zz = zeta * zeta
        if eta > zz:
            with pytest.raises(DomainError):
                cooperativity_for_eta(eta, zeta, zeta)
            return
        C = cooperativity_for_eta(eta, zeta, zeta)
        assert C <= 1.0 + 1e-9
        assert eta_resonant(C, zeta, zeta) == pytest.approx(eta, rel=1e-7, abs=1e-12)

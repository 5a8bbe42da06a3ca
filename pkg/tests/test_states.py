import cmath
import math

import numpy as np
import pytest

from clext import build_operator
from clext.errors import DomainError, SectorError
from clext.specfun import bessel_i
from clext.states import (
    CsAlphaSpec,
    component_zmu,
    cs_alpha_state,
    eigenstate,
    eigenstate_norm,
    norm_series_cs_alpha,
    overlap_cs_alpha,
    overlap_eigenstate,
)
from conftest import random_valid_params


class TestSpecValidation:
    def test_sector_out_of_range(self, fig1_params):
        with pytest.raises(SectorError):
            CsAlphaSpec(fig1_params, 2, 1, 0.5)  # mu > lam - alpha - 1

    def test_disc_domain(self, paraboson_params):
        with pytest.raises(DomainError):
            CsAlphaSpec(paraboson_params, 0, 1, 1.2)  # |z|^2 >= 1 at alpha = lam/2


class TestCsAlphaState:
    def test_z_zero_is_number_state(self, fig1_params):
        st = cs_alpha_state(CsAlphaSpec(fig1_params, 1, 1, 0.0), 12)
        expect = np.zeros(12)
        expect[1] = 1.0
        assert np.abs(st.coeffs - expect).max() == 0.0

    def test_perelomov_ratio_and_norm(self, paraboson_params):
        bb1 = paraboson_params.beta_bar[1]
        z = 0.6
        st = cs_alpha_state(CsAlphaSpec(paraboson_params, 0, 1, z), 64)
        # coefficients sit on even levels; ratio c_{k+1}/c_k = z sqrt((bb1+k)/(k+1))
        for k in range(4):
            ratio = st.coeffs[2 * (k + 1)] / st.coeffs[2 * k]
            assert ratio == pytest.approx(z * math.sqrt((bb1 + k) / (k + 1.0)), rel=1e-12)
        assert st.norm_sq_analytic == pytest.approx((1 - z**2) ** (-bb1), rel=1e-12)

    def test_defining_equation_residual_fig1(self, fig1_params):
        z = 1.0
        st = cs_alpha_state(CsAlphaSpec(fig1_params, 0, 1, z), 64)
        a = build_operator(fig1_params, "a", 64).entries
        ad = build_operator(fig1_params, "adag", 64).entries
        res = np.linalg.norm((a @ a @ st.coeffs - z * ad @ st.coeffs)[:60])
        assert res < 1e-9

    def test_residuals_all_families(self, rng):
        for lam in (2, 3, 4):
            p = random_valid_params(rng, lam)
            for alpha in range(lam // 2 + 1):
                for mu in range(lam - alpha):
                    zmag = 0.9 if 2 * alpha == lam else 2.0
                    z = zmag * cmath.exp(0.7j)
                    st = cs_alpha_state(CsAlphaSpec(p, mu, alpha, z), 64)
                    a = build_operator(p, "a", st.dim).entries
                    ad = build_operator(p, "adag", st.dim).entries
                    op = np.linalg.matrix_power(a, lam - alpha) - z * np.linalg.matrix_power(ad, alpha)
                    res = np.linalg.norm((op @ st.coeffs)[: st.dim - lam])
                    assert res < 1e-9

    def test_norm_matches_coefficients(self, rng):
        for lam in (2, 3, 4):
            p = random_valid_params(rng, lam)
            for alpha in range(lam // 2 + 1):
                mu = 0
                z = 0.8 if 2 * alpha == lam else 1.7
                st = cs_alpha_state(CsAlphaSpec(p, mu, alpha, z), 64, normalized=False)
                if st.tail_bound < 1e-12:
                    assert st.norm_sq() == pytest.approx(st.norm_sq_analytic, rel=1e-10)


class TestEigenstate:
    def test_z_zero_is_vacuum(self, fig1_params):
        st = eigenstate(fig1_params, 0.0, 8)
        assert st.coeffs[0] == pytest.approx(1.0)
        assert np.abs(st.coeffs[1:]).max() == 0.0

    def test_undeformed_limit(self, undeformed2):
        z = 1.0
        st = eigenstate(undeformed2, z, 64)
        for n in range(8):
            expect = math.exp(-0.5) / math.sqrt(math.factorial(n))
            assert st.coeffs[n].real == pytest.approx(expect, rel=1e-12)

    def test_eigen_residual(self, fig1_params):
        z = 1.3 - 0.4j
        st = eigenstate(fig1_params, z, 64)
        a = build_operator(fig1_params, "a", 64).entries
        res = np.linalg.norm((a @ st.coeffs - z * st.coeffs)[:63])
        assert res < 1e-9 * math.sqrt(st.norm_sq())

    def test_paraboson_norm_bessel_form(self, paraboson_params):
        bb1 = paraboson_params.beta_bar[1]
        zabs = 1.5
        t = zabs**2 / 2.0
        series = eigenstate_norm(paraboson_params, t)
        closed = math.gamma(bb1) * t ** (1.0 - bb1) * (
            bessel_i(bb1 - 1.0, 2 * t).value + bessel_i(bb1, 2 * t).value
        )
        assert series == pytest.approx(closed, rel=1e-10)

    def test_norm_matches_coefficients(self, rng):
        for lam in (2, 3):
            p = random_valid_params(rng, lam)
            st = eigenstate(p, 1.4 + 0.3j, 64)
            assert st.norm_sq() == pytest.approx(1.0, rel=1e-10)


class TestOverlaps:
    def test_distinct_sectors_orthogonal(self, fig1_params):
        s1 = CsAlphaSpec(fig1_params, 0, 1, 1.0)
        s2 = CsAlphaSpec(fig1_params, 1, 1, 1.0)
        assert overlap_cs_alpha(s1, s2) == 0.0

    def test_self_overlap(self, fig1_params):
        s = CsAlphaSpec(fig1_params, 0, 1, 1.0 + 0.2j)
        assert overlap_cs_alpha(s, s) == pytest.approx(1.0, abs=1e-12)

    def test_closed_form_vs_vector(self, fig1_params):
        s1 = CsAlphaSpec(fig1_params, 0, 1, 1.0)
        s2 = CsAlphaSpec(fig1_params, 0, 1, 0.5)
        vec = cs_alpha_state(s1, 64).braket(cs_alpha_state(s2, 64))
        assert overlap_cs_alpha(s1, s2) == pytest.approx(vec, abs=1e-10)

    def test_mixed_family_overlap_vs_vector(self, fig1_params):
        s1 = CsAlphaSpec(fig1_params, 0, 0, 1.1 + 0.4j)
        s2 = CsAlphaSpec(fig1_params, 0, 1, 0.8 - 0.2j)
        vec = cs_alpha_state(s1, 96).braket(cs_alpha_state(s2, 96))
        assert overlap_cs_alpha(s1, s2) == pytest.approx(vec, abs=1e-10)

    def test_eigenstate_overlap(self, fig1_params, undeformed2):
        z, zp = 1.0 + 0.0j, 1j
        got = overlap_eigenstate(fig1_params, z, zp)
        vec = eigenstate(fig1_params, z, 64).braket(eigenstate(fig1_params, zp, 64))
        assert got == pytest.approx(vec, abs=1e-9)
        # undeformed limit: exp(z* z' - |z|^2/2 - |z'|^2/2)
        z, zp = 0.9 + 0.3j, -0.4 + 1.1j
        got = overlap_eigenstate(undeformed2, z, zp)
        expect = cmath.exp(z.conjugate() * zp - abs(z) ** 2 / 2 - abs(zp) ** 2 / 2)
        assert got == pytest.approx(expect, rel=1e-10)

    def test_eigenstate_self(self, fig1_params):
        z = 0.7 + 0.1j
        assert overlap_eigenstate(fig1_params, z, z) == pytest.approx(1.0, abs=1e-12)

    def test_continuity_bound(self, fig1_params):
        z = 0.9 + 0.2j
        prev = None
        for eps in (1e-2, 1e-3, 1e-4):
            dist_sq = 2.0 - 2.0 * overlap_eigenstate(fig1_params, z, z + eps).real
            assert dist_sq <= 10.0 * eps
            if prev is not None:
                assert dist_sq < prev
            prev = dist_sq


class TestComponents:
    def test_lambda2_even_odd_split(self, paraboson_params):
        z = 0.8
        plus = eigenstate(paraboson_params, z, 64).coeffs
        minus = eigenstate(paraboson_params, -z, 64).coeffs
        z0 = component_zmu(paraboson_params, z, 0, 64).coeffs
        z1 = component_zmu(paraboson_params, z, 1, 64).coeffs
        assert np.abs(z0 - 0.5 * (plus + minus)).max() < 1e-12
        assert np.abs(z1 - 0.5 * (plus - minus)).max() < 1e-12

    def test_partition_identity(self, fig1_params):
        z = 0.8
        total = sum(component_zmu(fig1_params, z, mu, 64).coeffs for mu in range(3))
        assert np.abs(total - eigenstate(fig1_params, z, 64).coeffs).max() < 1e-12

    def test_discrete_fourier_relation(self, fig1_params):
        lam, z = 3, 0.8
        for nu in range(lam):
            acc = np.zeros(64, dtype=complex)
            for m in range(lam):
                acc += cmath.exp(-2j * math.pi * m * nu / lam) * eigenstate(
                    fig1_params, z * cmath.exp(2j * math.pi * m / lam), 64
                ).coeffs
            acc /= lam
            assert np.abs(acc - component_zmu(fig1_params, z, nu, 64).coeffs).max() < 1e-10

    def test_component_norms(self, fig1_params):
        z = 1.1
        total = 0.0
        for mu in range(3):
            comp = component_zmu(fig1_params, z, mu, 64)
            assert comp.norm_sq() == pytest.approx(comp.norm_sq_analytic, rel=1e-10)
            total += comp.norm_sq_analytic
        assert total == pytest.approx(1.0, rel=1e-10)


def test_norm_series_matches_squared_sum(fig1_params):
    spec = CsAlphaSpec(fig1_params, 0, 1, 1.4)
    st = cs_alpha_state(spec, 96, normalized=False)
    n = norm_series_cs_alpha(fig1_params, 0, 1, spec.y).value.real
    assert st.norm_sq() == pytest.approx(n, rel=1e-10)

"""Mellin transforms, the universal multiplier, the diagonalization
identity, zero inheritance, and the fixed-beta Dirichlet series."""

import math

import numpy as np
import pytest

from ttforms import mellin, spectra
from ttforms.errors import ToleranceError


@pytest.fixture(scope="module")
def theta3():
    return spectra.builtin_seed("theta3")


@pytest.fixture(scope="module")
def theta3_plus(theta3):
    sub, a0 = spectra.positive_part(theta3)
    assert a0 == 1.0
    return sub


@pytest.fixture(scope="module")
def eta24():
    return spectra.builtin_seed("eta24")


class TestMellinSeed:
    def test_theta_derived_at_one(self, theta3_plus):
        # R(1) = Gamma(1) (2 pi)^-1 * 4 zeta(2) = pi/3
        mv = mellin.mellin_seed(theta3_plus, 1.0, tol=1e-10)
        assert abs(mv.value - math.pi / 3.0) <= max(mv.estimate, 1e-8)
        assert abs(mv.value - 1.0471976) < 1e-6

    def test_single_term_closed_form(self):
        seed = spectra.single_term_seed(1.0, 1.0, weight=0.0)
        mv = mellin.mellin_seed(seed, 2.0)
        assert abs(mv.value - 1.0 / (4.0 * math.pi ** 2)) < 1e-15

    def test_rejects_nonpositive_exponents(self, theta3):
        with pytest.raises(ValueError, match="subtract"):
            mellin.mellin_seed(theta3, 2.0)

    def test_convergence_boundary_guard(self, theta3_plus):
        # sigma_c = 1/2 for the theta-derived series
        with pytest.raises(ToleranceError):
            mellin.mellin_seed(theta3_plus, 0.5, tol=1e-10, max_terms=20_000)

    def test_phi_R_consistency(self, theta3_plus):
        # phi(s) = (2 pi)^s / Gamma(s) R(s) holds by construction; check the
        # advertised algebra on an independent evaluation
        s = 2.5
        mv = mellin.mellin_seed(theta3_plus, s)
        lam, coef = theta3_plus.terms(4000)
        phi = np.sum(coef * lam ** (-s))
        lhs = (2 * math.pi) ** s / math.gamma(s) * mv.value
        assert abs(lhs - phi) / abs(phi) < 1e-10


class TestMellinQuad:
    def test_matches_termwise(self, theta3, theta3_plus):
        for s in (2.0, 1.2, 3.5):
            q = mellin.mellin_quad(theta3, s, 1e-11)
            t = mellin.mellin_seed(theta3_plus, s, 1e-12)
            assert abs(q.value - t.value) < 1e-8, s

    def test_matches_termwise_eta24(self, eta24):
        # the tau coefficients oscillate, so the termwise tail converges
        # like a power of the index; match tolerances to that
        for s, tol in ((8.0, 1e-8), (13.0, 1e-12)):
            q = mellin.mellin_quad(eta24, s, 1e-11)
            t = mellin.mellin_seed(eta24, s, tol)
            assert abs(q.value - t.value) <= max(q.estimate + t.estimate, 1e-13), s

    def test_reflection_symmetric(self, theta3):
        s = 0.25 + 3.0j
        a = mellin.mellin_quad(theta3, s, 1e-11).value
        b = mellin.mellin_quad(theta3, 0.5 - s, 1e-11).value
        assert abs(a - b) < 1e-10 * max(abs(a), 1.0)

    def test_completed_value_against_zeta_sum(self):
        # R(2) = 2 Gamma(2) pi^-2 zeta(4), zeta(4) by direct summation
        th = spectra.builtin_seed("theta3")
        got = mellin.mellin_quad(th, 2.0, 1e-12).value
        zeta4 = sum(1.0 / n ** 4 for n in range(1, 400)) + 1.0 / (3 * 399 ** 3)
        ref = 2.0 * math.gamma(2.0) * math.pi ** -2.0 * zeta4
        assert abs(got - ref) < 1e-8

    def test_requires_covariant_seed(self):
        seed = spectra.single_term_seed(1.0, 1.0, weight=0.0)
        with pytest.raises(ValueError, match="covariant"):
            mellin.mellin_quad(seed, 2.0)


class TestMultiplier:
    def test_alpha_zero(self):
        mv = mellin.multiplier(0.5, 1.2, 0.0)
        assert mv.value == 2.0 ** 0.5

    def test_small_alpha_limit(self):
        # quadrature route; linear approach to 2^(1-k)
        k = 0.5
        v1 = mellin.multiplier(k, 1.2, 1e-3, route="quadrature", tol=1e-11).value
        v2 = mellin.multiplier(k, 1.2, 5e-4, route="quadrature", tol=1e-11).value
        lim = 2.0 ** (1.0 - k)
        assert abs(v1 - lim) < 2e-2
        assert abs(v2 - lim) < 0.6 * abs(v1 - lim)

    @pytest.mark.parametrize(
        "k,s,alpha",
        [
            (0.5, 0.25 + 3.0j, 0.3),
            (0.5, 1.2 + 0.0j, 0.2),
            (12.0, 6.0 + 2.0j, 0.25),
            (0.0, 0.7 + 1.5j, 0.4),
            (-0.5, 1.0 + 0.5j, 0.3),
            (2.0, 1.7 + 0.0j, 0.5),
        ],
    )
    def test_reflection(self, k, s, alpha):
        a = mellin.multiplier(k, s, alpha, route="quadrature", tol=1e-11).value
        b = mellin.multiplier(k, complex(k) - s, alpha, route="quadrature", tol=1e-11).value
        assert abs(a - b) / abs(a) < 1e-8

    @pytest.mark.parametrize("alpha", [0.2, 0.5])
    def test_route_agreement(self, alpha):
        for k, s in ((0.5, 1.2), (12.0, 13.0), (0.0, 0.8 + 0.5j)):
            c = mellin.multiplier(k, s, alpha, route="closedform").value
            q = mellin.multiplier(k, s, alpha, route="quadrature", tol=1e-11).value
            assert abs(c - q) / abs(c) < 1e-7, (k, s, alpha)

    def test_closed_form_cap(self):
        with pytest.raises(ToleranceError, match="quadrature"):
            mellin.multiplier(0.5, 1.2, 1e-3, route="closedform")

    def test_against_independent_term_ratio(self):
        # ground truth: Mellin transform of one deformed term over the
        # undeformed one, by direct quadrature
        from ttforms.numkit import adaptive_quad

        k, s, alpha, lam = 0.5, 1.7, 0.3, 1.0

        def deformed(d):
            S = np.sqrt(1.0 + 8.0 * math.pi * lam * alpha * d)
            return (1.0 + S) ** (1.0 - k) / S * np.exp(-4.0 * math.pi * lam * d / (1.0 + S))

        num, _ = adaptive_quad(lambda d: d ** (s - 1.0) * deformed(d), 0.0, math.inf, 1e-11)
        den = math.gamma(s) * (2.0 * math.pi * lam) ** (-s)
        ref = num / den
        got = mellin.multiplier(k, s, alpha, route="closedform").value
        assert abs(got - ref) / abs(ref) < 1e-9


class TestDiagonalization:
    @pytest.mark.parametrize("s", [1.2, 2.0, 0.8 + 1.0j])
    def test_theta_derived(self, theta3, s):
        out = mellin.product_residual(theta3, 0.3, s, tol=1e-10)
        assert out["residual"] < 1e-5

    @pytest.mark.parametrize("s", [13.0, 6.0, 8.0 + 3.0j])
    def test_eta24(self, eta24, s):
        out = mellin.product_residual(eta24, 0.2, s, tol=1e-10)
        assert out["residual"] < 1e-5

    def test_zero_located_and_inherited(self, theta3):
        s0 = mellin.locate_critical_zero(theta3, 6.8, 7.3)
        assert abs(s0.real - 0.25) < 1e-12
        assert abs(s0.imag - 7.0673626) < 1e-4
        alpha = 0.2
        at_zero = abs(mellin.deformed_mellin(theta3, alpha, s0, tol=1e-10).value)
        away = abs(mellin.deformed_mellin(theta3, alpha, s0 + 0.2, tol=1e-10).value)
        assert at_zero < 1e-3 * away

    def test_undeformed_zero_is_a_zero(self, theta3):
        s0 = mellin.locate_critical_zero(theta3, 6.8, 7.3)
        near = abs(mellin.mellin_quad(theta3, s0, 1e-11).value)
        off = abs(mellin.mellin_quad(theta3, s0 + 0.2, 1e-11).value)
        assert near < 1e-6 * off


class TestDirichletBeta:
    def test_beta_zero_limit_unit(self, theta3_plus):
        s = 3.0
        db = mellin.dirichlet_beta(theta3_plus, 1e-9, s, normalization="unit")
        lam, coef = theta3_plus.terms(4000)
        phi = np.sum(coef * lam ** (-s))
        assert abs(db.value - phi) / abs(phi) < 1e-7

    def test_single_term_closed_form(self):
        seed = spectra.single_term_seed(1.0, 1.0, weight=0.5)
        beta, s = 0.3, 2.0
        S = math.sqrt(1.0 + 4.0 * beta)
        expected = (1.0 + S) ** 0.5 / S * (2.0 / (1.0 + S)) ** (-s)
        got = mellin.dirichlet_beta(seed, beta, s).value
        assert abs(got - expected) < 1e-13

    def test_branch_cut_guard(self):
        seed = spectra.single_term_seed(1.0, 1.0, weight=0.0)
        with pytest.raises(Exception, match="cut"):
            mellin.dirichlet_beta(seed, -0.5, 2.0)

    def test_reflection_broken_then_restored(self, theta3):
        broken = mellin.beta_reflection_residual(theta3, 0.2, 1.2)
        restored = mellin.beta_reflection_residual(theta3, 1e-7, 1.2)
        assert broken > 1e-3
        assert restored < 1e-4
        assert restored < 0.01 * broken

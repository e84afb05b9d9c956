"""Numerical substrate tests: summation, quadrature, special functions.

Expected values come from independent oracles: math.fsum (exactly rounded
sums), closed-form integrals, the reflection/recurrence identities, and
mpmath at high precision for the confluent hypergeometrics.
"""

import cmath
import math

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from ttforms import numkit
from ttforms.errors import PoleError, ToleranceError

SQRT_PI = math.sqrt(math.pi)


class TestCompensatedSum:
    def test_tiny_increments(self):
        terms = [1.0] + [1e-16] * 10_000
        val, err = numkit.compensated_sum(terms)
        assert abs(val - (1.0 + 1e-12)) < 1e-15
        assert err < 1e-10

    def test_empty(self):
        val, err = numkit.compensated_sum([])
        assert val == 0.0 and err == 0.0

    def test_alternating_vs_fsum(self):
        # oracle: math.fsum is exactly rounded
        terms = [(-1.0) ** (n + 1) / n for n in range(1, 1_000_001)]
        val, _ = numkit.compensated_sum(terms)
        exact = math.fsum(terms)
        assert abs(val - exact) < 1e-12
        # and the partial sum is within 1/(2N) of log 2
        assert abs(exact - math.log(2.0)) < 1e-6

    def test_nonfinite_rejected(self):
        with pytest.raises(ValueError, match="index 2"):
            numkit.compensated_sum([1.0, 2.0, float("nan")])

    @given(st.lists(st.floats(-1e6, 1e6), min_size=1, max_size=200))
    @settings(max_examples=50, deadline=None)
    def test_matches_fsum(self, xs):
        val, err = numkit.compensated_sum(xs)
        assert abs(val.real - math.fsum(xs)) <= max(err, 1e-9)


class TestDoubleDouble:
    def test_add_exactness(self):
        x = numkit.dd_add((1.0, 0.0), (1e-20, 0.0))
        assert x[0] == 1.0 and x[1] == 1e-20

    def test_mul_recovers_product_error(self):
        a, b = 1.0 + 2.0 ** -30, 1.0 - 2.0 ** -31
        hi, lo = numkit.dd_mul((a, 0.0), (b, 0.0))
        # compare against integer-exact arithmetic via fractions
        from fractions import Fraction

        exact = Fraction(a) * Fraction(b)
        assert abs(Fraction(hi) + Fraction(lo) - exact) < Fraction(1, 2 ** 104)

    def test_div_roundtrip(self):
        x = (math.pi, 0.0)
        y = numkit.dd_div(x, (3.0, 0.0))
        z = numkit.dd_mul(y, (3.0, 0.0))
        assert abs(z[0] - math.pi) < 1e-15 and abs(z[0] + z[1] - math.pi) < 1e-30

    def test_cdd_mul(self):
        x = numkit.cdd_from(1.5 + 0.5j)
        y = numkit.cdd_from(2.0 - 1.0j)
        assert abs(numkit.cdd_value(numkit.cdd_mul(x, y)) - (1.5 + 0.5j) * (2.0 - 1.0j)) < 1e-30


class TestGaussHermite:
    def test_order_one_is_zeroth_moment(self):
        x, w = numkit.gauss_hermite(1)
        assert abs(x[0]) < 1e-15
        assert abs(w[0] - SQRT_PI) < 1e-14

    def test_second_moment(self):
        x, w = numkit.gauss_hermite(5)
        assert abs(np.dot(w, x * x) - SQRT_PI / 2.0) < 1e-13

    def test_cosine_transform(self):
        # closed form of the Gaussian Fourier transform
        x, w = numkit.gauss_hermite(20)
        assert abs(np.dot(w, np.cos(x)) - SQRT_PI * math.exp(-0.25)) < 1e-12

    @pytest.mark.parametrize("order", [1, 7, 64, 200])
    def test_weights_positive_and_normalized(self, order):
        _, w = numkit.gauss_hermite(order)
        assert np.all(w > 0)
        assert abs(w.sum() - SQRT_PI) < 1e-13

    @pytest.mark.parametrize("order", [0, 201, -3])
    def test_order_out_of_range(self, order):
        with pytest.raises(ValueError):
            numkit.gauss_hermite(order)


class TestAdaptiveQuad:
    def test_constant(self):
        val, err = numkit.adaptive_quad(lambda x: np.ones_like(x), 0.0, 1.0, 1e-12)
        assert abs(val - 1.0) < 1e-14

    def test_exponential_half_line(self):
        val, _ = numkit.adaptive_quad(lambda x: np.exp(-x), 0.0, math.inf, 1e-12)
        assert abs(val - 1.0) < 1e-12

    def test_gamma_three_halves(self):
        val, _ = numkit.adaptive_quad(
            lambda x: np.sqrt(x) * np.exp(-x), 0.0, math.inf, 1e-11
        )
        assert abs(val - SQRT_PI / 2.0) < 1e-10

    def test_error_estimate_bounds_true_error(self):
        val, err = numkit.adaptive_quad(lambda x: np.sin(7 * x), 0.0, 2.0, 1e-10)
        exact = (1.0 - math.cos(14.0)) / 7.0
        assert abs(val - exact) <= max(err, 1e-12)

    def test_budget_exhaustion_carries_value(self):
        with pytest.raises(ToleranceError) as exc:
            numkit.adaptive_quad(lambda x: np.abs(x - 1 / 3) ** -0.5, 0.0, 1.0, 1e-14, limit=4)
        assert exc.value.value is not None
        assert exc.value.estimate is not None


class TestDERules:
    def test_tanh_sinh_endpoint_singularity(self):
        val, _ = numkit.tanh_sinh_quad(lambda x: 1.0 / np.sqrt(x), 0.0, 1.0, 1e-12)
        assert abs(val - 2.0) < 1e-11

    def test_exp_sinh_gamma(self):
        val, _ = numkit.exp_sinh_quad(lambda x: x ** 0.5 * np.exp(-x), 1e-12)
        assert abs(val - SQRT_PI / 2.0) < 1e-11

    def test_exp_sinh_singular_endpoint(self):
        val, _ = numkit.exp_sinh_quad(lambda x: x ** -0.3 * np.exp(-x), 1e-12)
        assert abs(val - math.gamma(0.7)) < 1e-10


class TestGamma:
    def test_one(self):
        assert abs(numkit.gamma_complex(1.0) - 1.0) < 1e-14

    def test_half(self):
        assert abs(numkit.gamma_complex(0.5) - SQRT_PI) < 1e-13

    def test_reflection_self_check(self):
        z = 0.3 + 0.7j
        lhs = numkit.gamma_complex(z) * numkit.gamma_complex(1.0 - z) * cmath.sin(math.pi * z) / math.pi
        assert abs(lhs - 1.0) < 1e-11

    def test_poles(self):
        for z in (0.0, -1.0, -7.0):
            with pytest.raises(PoleError):
                numkit.gamma_complex(z)

    def test_recurrence_sample(self):
        rng = np.random.default_rng(11)
        for _ in range(100):
            z = complex(rng.uniform(-20, 20), rng.uniform(-20, 20))
            if abs(z.imag) < 1e-2 and z.real < 0.5:
                continue
            g1 = numkit.gamma_complex(z + 1.0)
            g0 = numkit.gamma_complex(z)
            assert abs(g1 - z * g0) / abs(g1) < 1e-11

    def test_against_mpmath(self):
        mp = pytest.importorskip("mpmath")
        mp.mp.dps = 30
        for z in (3.7 + 2.1j, 0.1 - 5.0j, 12.0 + 0.0j, -4.5 + 0.25j, 40.0 + 10.0j):
            ref = complex(mp.gamma(z))
            assert abs(numkit.gamma_complex(z) - ref) / abs(ref) < 1e-12


class TestKummer:
    def test_at_zero(self):
        assert numkit.kummer_1f1(0.3 + 1j, 1.7, 0.0) == 1.0

    def test_exponential_identity(self):
        z = 2.0 + 1.0j
        assert abs(numkit.kummer_1f1(1.0, 1.0, z) - cmath.exp(z)) < 1e-12 * abs(cmath.exp(z))

    def test_one_two_three(self):
        # (e^3 - 1)/3, confirmed by termwise summation at extended precision
        expected = (math.exp(3.0) - 1.0) / 3.0
        assert abs(numkit.kummer_1f1(1.0, 2.0, 3.0) - expected) < 1e-12

    def test_kummer_transform_negative_argument(self):
        mp = pytest.importorskip("mpmath")
        mp.mp.dps = 30
        val = numkit.kummer_1f1(0.7, 2.3, -15.0)
        ref = complex(mp.hyp1f1(0.7, 2.3, -15.0))
        assert abs(val - ref) / abs(ref) < 1e-12

    def test_derivative_identity(self):
        # d/dz 1F1(a,b,z) = (a/b) 1F1(a+1,b+1,z) by central differences
        a, b, z, h = 0.8 + 0.3j, 2.1, 1.3 + 0.4j, 1e-5
        fd = (numkit.kummer_1f1(a, b, z + h) - numkit.kummer_1f1(a, b, z - h)) / (2 * h)
        rhs = a / b * numkit.kummer_1f1(a + 1, b + 1, z)
        assert abs(fd - rhs) < 1e-6

    def test_pole_in_b(self):
        with pytest.raises(PoleError):
            numkit.kummer_1f1(1.0, -2.0, 0.5)

    def test_cap_advises_quadrature(self):
        with pytest.raises(ToleranceError, match="quadrature"):
            numkit.kummer_1f1(1.0, 2.0, 100.0)

    def test_dd_mode_matches(self):
        a = numkit.kummer_1f1(1.2, 2.7, 25.0, mode="double")
        b = numkit.kummer_1f1(1.2, 2.7, 25.0, mode="dd")
        assert abs(a - b) / abs(b) < 1e-12


class TestTricomiU:
    def test_against_mpmath(self):
        mp = pytest.importorskip("mpmath")
        mp.mp.dps = 30
        cases = [
            (1.2, 2.9, 5.0),
            (0.25 + 3.0j, 1.0 + 6.0j, 3.3),
            (13.0, 15.0, 4.0),      # terminating after the Kummer transform
            (6.0 + 2.0j, 1.0 + 4.0j, 5.0),
            (1.5, 4.0, 8.0),        # integer b, Laplace route
        ]
        for a, b, z in cases:
            val, est = numkit.tricomi_u(a, b, z)
            ref = complex(mp.hyperu(a, b, z))
            assert abs(val - ref) / abs(ref) < 1e-9, (a, b, z)

    def test_error_estimate_tracks_cancellation(self):
        val, est = numkit.tricomi_u(1.2, 2.9, 20.0)
        mp = pytest.importorskip("mpmath")
        mp.mp.dps = 40
        ref = complex(mp.hyperu(1.2, 2.9, 20.0))
        assert abs(val - ref) <= max(est, 1e-13 * abs(ref))


class TestPrincipalPower:
    def test_branch_above_cut(self):
        assert abs(numkit.principal_power(complex(-1.0, 0.0), 0.5) - 1j) < 1e-15

    def test_identity_power(self):
        z = 2.3 - 1.1j
        assert numkit.principal_power(z, 1.0) == z

    def test_sqrt_2i(self):
        assert abs(numkit.principal_power(2j, 0.5) - (1 + 1j)) < 1e-14

    def test_zero_base(self):
        assert numkit.principal_power(0.0, 2.0) == 0.0
        with pytest.raises(PoleError):
            numkit.principal_power(0.0, -1.0)

    @given(
        st.floats(0.05, 50.0), st.floats(-20.0, 20.0),
        st.floats(-4.0, 4.0), st.floats(-4.0, 4.0),
    )
    @settings(max_examples=80, deadline=None)
    def test_reciprocal_inverse(self, re, im, wre, wim):
        # no cut crossing for Re z > 0
        z = complex(re, im)
        w = complex(wre, wim)
        prod = numkit.principal_power(1.0 / z, w) * numkit.principal_power(z, w)
        assert abs(prod - 1.0) < 1e-12


class TestQuadratureSpec:
    def test_validation(self):
        numkit.QuadratureSpec("tanh-sinh", 10, 1e-8)
        with pytest.raises(ValueError):
            numkit.QuadratureSpec("simpson", 10, 1e-8)
        with pytest.raises(ValueError):
            numkit.QuadratureSpec("gauss-hermite", 0, 1e-8)
        with pytest.raises(ValueError):
            numkit.QuadratureSpec("gauss-hermite", 10, 0.0)

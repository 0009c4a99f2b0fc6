import math

import numpy as np
import pytest
from hypothesis import given, settings, strategies as st

from cylgabor.errors import ConvergenceError, DomainError, UnsupportedOrderError
from cylgabor.fock import raising_apply
from cylgabor.special_fn import (TPFactorization, TruncationPolicy, gauss_legendre_panels,
                                 gbeta_dualgrid, hbeta, hermite_fn, hermite_poly, hermite_theta,
                                 jacobi_theta, laguerre, tp_sech_factorization, tp_window_ft)

# Frozen oracle values (30-digit mpmath / sympy evaluations).
HERMITE_POLY_3_07 = -0.97083691382822150225  # 2^{1/4} (8t^3 - 12t) / sqrt(48) at t = 0.7
THETA_000 = 1.0864348112133080146  # sum_k e^{-pi k^2}
GBETA_05_05 = 0.77732150163620350532  # 2000-factor product at beta = 0.5, z = 0.5


class TestHermite:
    def test_h0_at_origin(self):
        assert hermite_fn(0, 0.0) == pytest.approx(2 ** 0.25, abs=1e-15)

    def test_h1_odd(self):
        assert hermite_fn(1, 0.0) == 0.0

    def test_h2_unit_norm(self):
        t, w = gauss_legendre_panels(-8, 8, width=0.5, order=20)
        assert abs(np.sum(w * hermite_fn(2, t) ** 2) - 1) < 1e-10

    def test_poly_values(self):
        assert hermite_poly(0, 5.0) == pytest.approx(2 ** 0.25, rel=1e-15)
        assert hermite_poly(1, 1.0) == pytest.approx(2 ** 0.75, rel=1e-15)
        assert hermite_poly(3, 0.7) == pytest.approx(HERMITE_POLY_3_07, rel=1e-13)

    def test_orthonormal_family(self):
        t, w = gauss_legendre_panels(-9, 9, width=0.5, order=20)
        H = np.array([hermite_fn(r, t) for r in range(12)])
        G = (H * w) @ H.T
        assert np.max(np.abs(G - np.eye(12))) < 1e-12

    def test_large_order_finite(self):
        assert np.all(np.isfinite(hermite_fn(60, np.linspace(-20, 20, 101))))

    def test_negative_order_rejected(self):
        with pytest.raises(DomainError):
            hermite_fn(-1, 0.0)

    @given(st.integers(0, 10), st.floats(-4, 4))
    def test_parity(self, r, t):
        assert hermite_fn(r, -t) == pytest.approx((-1) ** r * hermite_fn(r, t), abs=1e-12)


class TestLaguerre:
    def test_values(self):
        assert laguerre(0, 0, 3.7) == 1.0
        assert laguerre(1, 0, 2.0) == pytest.approx(-1.0)

    def test_summation_identity(self):
        rhs = sum(laguerre(r, 0, 0.7) for r in range(4))
        assert abs(laguerre(3, 1, 0.7) - rhs) < 1e-12

    @given(st.integers(0, 16), st.floats(0, 30))
    def test_summation_identity_property(self, n, x):
        lhs = laguerre(n, 1.0, x)
        rhs = sum(laguerre(r, 0.0, x) for r in range(n + 1))
        assert abs(lhs - rhs) <= 1e-12 * max(1.0, abs(lhs))


class TestTheta:
    def test_origin(self):
        assert jacobi_theta(0, 0, 0).real == pytest.approx(THETA_000, rel=1e-14)

    @given(st.floats(-0.5, 0.5), st.floats(-1, 1), st.floats(-1, 1), st.floats(-2, 2))
    def test_integer_shift_of_a(self, a, b, x, y):
        z = complex(x, y)
        v0, v1 = jacobi_theta(a, b, z), jacobi_theta(a + 1, b, z)
        assert abs(v1 - v0) <= 1e-12 * max(1.0, abs(v0))

    @given(st.floats(-0.5, 0.5), st.floats(-1, 1), st.floats(-1, 1), st.floats(-2, 2))
    def test_quasi_period(self, a, b, x, y):
        z = complex(x, y)
        lhs = jacobi_theta(a, b, z + 1)
        rhs = np.exp(2j * np.pi * a) * jacobi_theta(a, b, z)
        assert abs(lhs - rhs) <= 1e-12 * max(1.0, abs(lhs))

    def test_large_imag_rejected(self):
        with pytest.raises(DomainError):
            jacobi_theta(0, 0, 60j)

    def test_term_cap(self):
        with pytest.raises(ConvergenceError):
            jacobi_theta(0, 0, 40j, TruncationPolicy(1e-12, 16))

    def test_hermite_theta_r0(self):
        z = 0.2 + 0.1j
        assert abs(hermite_theta(0, 0.3, 0.4, z) - 2 ** 0.25 * jacobi_theta(0.3, -0.4, z)) < 1e-13

    def test_hermite_theta_literal_sum(self):
        # independent literal form over a doubled index window
        r, al, be, z = 1, 0.3, 0.0, 0.2 + 0.1j
        k = np.arange(-60, 61) + al
        lit = np.sum(np.exp(-np.pi * k * k + 2j * np.pi * (z - be) * k)
                     * hermite_poly(r, math.sqrt(2 * math.pi) * (k + z.imag)))
        assert abs(hermite_theta(r, al, be, z) - lit) < 1e-12

    def test_hermite_theta_alpha_shift(self):
        z = 0.37 - 0.4j
        assert abs(hermite_theta(2, 1.3, 0.1, z) - hermite_theta(2, 0.3, 0.1, z)) < 1e-12


class TestDualGrid:
    def test_vanishes_on_integers(self):
        for k in (1, 2, -1, -3):
            assert gbeta_dualgrid(0.5, k) == 0

    def test_periodic(self):
        z = 0.3 + 0.2j
        assert abs(gbeta_dualgrid(0.5, z + 2j) - gbeta_dualgrid(0.5, z)) < 1e-12

    def test_long_product(self):
        assert gbeta_dualgrid(0.5, 0.5).real == pytest.approx(GBETA_05_05, rel=1e-13)

    def test_hbeta_zeros(self):
        assert hbeta(1, 0.4, 2) == 0
        assert hbeta(0, 0.4, 0) == pytest.approx(gbeta_dualgrid(0.4, 0))
        assert abs(hbeta(0, 0.4, 0)) > 0.1

    def test_hbeta_functional_equation(self):
        # H(z + i/beta) = chi_l e^{pi |gamma|^2/2 + pi z conj(gamma)} H(z); the character
        # chi_l(i/beta) = e^{2 pi i l / beta} is trivial when l / beta is an integer.
        beta, l, z = 0.4, 2, 0.3 + 0.2j
        gam = 1j / beta
        lhs = hbeta(1, beta, z + gam)
        rhs = (np.exp(2j * np.pi * l / beta + np.pi * abs(gam) ** 2 / 2 + np.pi * z * np.conj(gam))
               * hbeta(1, beta, z))
        assert abs(lhs - rhs) < 1e-9 * max(1.0, abs(lhs))

    def test_raised_hbeta_at_integers(self):
        beta = 0.4

        def H(r):
            return lambda z: hbeta(r, beta, z)

        v0 = [raising_apply(H(0), 0, k, 0.2) for k in range(-2, 3)]
        assert abs(v0[2]) > 0.1
        assert max(abs(v) for i, v in enumerate(v0) if i != 2) < 1e-8 * abs(v0[2])
        v1 = [raising_apply(H(1), 1, k, 0.2) for k in range(-2, 3)]
        scale = abs(hbeta(1, beta, 0.5))
        assert max(abs(v) for i, v in enumerate(v1) if i != 2) < 1e-8 * scale


class TestTotallyPositive:
    def test_gaussian_case(self):
        assert tp_window_ft(TPFactorization(1.0, 1.0), 0.0) == pytest.approx(1.0)

    def test_modulus_nonincreasing(self):
        fac = TPFactorization(1.0, 0.2, 0.0, (0.3, -0.3, 0.1))
        xi = np.linspace(0, 5, 200)
        m = np.abs(tp_window_ft(fac, xi))
        assert np.all(np.diff(m) <= 1e-15)
        assert np.allclose(m, np.abs(tp_window_ft(fac, -xi)))

    def test_sech_truncation_vs_quadrature(self):
        a = 1.0
        fac = tp_sech_factorization(a, 4)
        t, w = gauss_legendre_panels(-40, 40, width=0.25, order=20)
        f = 1.0 / (np.exp(a * t) + np.exp(-a * t))
        xi = np.linspace(-2, 2, 41)
        quad = np.array([np.sum(w * f * np.exp(-2j * np.pi * s * t)) for s in xi])
        assert np.max(np.abs(tp_window_ft(fac, xi) - quad)) < 1e-3

    def test_invalid_factorization(self):
        with pytest.raises(DomainError):
            TPFactorization(1.0, 0.0)
        with pytest.raises(DomainError):
            TPFactorization(-1.0, 1.0)


def test_order_ceiling():
    with pytest.raises(UnsupportedOrderError):
        hermite_fn(10_000, 0.0)


@settings(max_examples=20)
@given(st.floats(-3, 3), st.floats(0.5, 4))
def test_gauss_legendre_integrates_polynomials(a, width):
    x, w = gauss_legendre_panels(a, a + width, width=0.5, order=10)
    exact = ((a + width) ** 6 - a ** 6) / 6
    assert np.sum(w * x ** 5) == pytest.approx(exact, rel=1e-12, abs=1e-12)

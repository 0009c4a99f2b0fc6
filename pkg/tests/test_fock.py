import math

import numpy as np
import pytest
from hypothesis import given, settings, strategies as st

from cylgabor import fock
from cylgabor.errors import ConvergenceError, DomainError, InvalidTranslationError, UnsupportedOrderError
from cylgabor.qp_signal import Envelope, basis_signal, gaussian_window, hermite_window, make_signal
from cylgabor.special_fn import laguerre
from cylgabor.stft import kernel_gaussian_closed, kernel_hermite_closed, moyal_inner, strip_inner

rng = np.random.default_rng(17)


def rand_signal(nu, K=3):
    return make_signal(nu, [(k, complex(*rng.normal(size=2))) for k in range(-K, K + 1)])


def pts(n, xi_max=3.0):
    return rng.uniform(0, 1, n) + 1j * rng.uniform(-xi_max, xi_max, n)


class TestMultiplier:
    def test_values(self):
        assert fock.multiplier(0) == 1
        assert abs(fock.multiplier(1 + 1j)) == pytest.approx(math.exp(math.pi))

    def test_modulus(self):
        z = pts(10)
        m = fock.multiplier(z)
        assert np.allclose(m * np.conj(m) * np.exp(-np.pi * np.abs(z) ** 2), 1, atol=1e-12)


class TestBargmann:
    @pytest.mark.parametrize("k,nu", [(0, 0.0), (2, 0.3), (-1, 0.7)])
    def test_basis_image(self, k, nu):
        z = pts(20, 2)
        lhs = fock.bargmann_eval(basis_signal(k, nu), z)
        rhs = 2 ** 0.25 * fock.phi_basis(k, nu, z)
        assert np.max(np.abs(lhs - rhs) / np.abs(rhs)) < 1e-10

    def test_integral_form(self):
        f = rand_signal(0.4, 2)
        z = pts(5, 1.5)
        assert np.max(np.abs(fock.bargmann_eval(f, z) - 2 ** 0.25 * fock.bargmann_integral(f, z))) < 1e-9

    @settings(max_examples=30)
    @given(st.floats(0, 1, exclude_max=True), st.floats(0, 1), st.floats(-2, 2), st.integers(-2, 2))
    def test_functional_equation(self, nu, x, y, k):
        f = make_signal(nu, [(-2, 1.0), (0, 0.3j), (3, -0.7)])
        z = complex(x, y)
        lhs = fock.bargmann_eval(f, z + k)
        rhs = np.exp(2j * np.pi * k * nu + np.pi * k * k / 2 + np.pi * z * k) * fock.bargmann_eval(f, z)
        assert abs(lhs - rhs) <= 1e-9 * max(1.0, abs(lhs))

    def test_zero_signal(self):
        assert fock.bargmann_eval(make_signal(0.1, []), 0.3 + 0.2j) == 0

    def test_true_r0_equals_bargmann(self):
        f = rand_signal(0.2)
        z = pts(10)
        assert np.array_equal(fock.true_bargmann_eval(0, f, z), fock.bargmann_eval(f, z))

    @pytest.mark.parametrize("r", [1, 2])
    def test_true_bargmann_derivative_form(self, r):
        f = rand_signal(0.3, 2)
        for z in pts(10, 1.5):
            a = fock.true_bargmann_eval(r, f, z)
            b = fock.true_bargmann_from_raising(r, f, z)
            assert abs(a - b) <= 1e-7 * abs(a)

    def test_true_layers_orthogonal(self):
        e = basis_signal(0, 0.3)
        assert abs(moyal_inner(e, hermite_window(1), e, hermite_window(2))) < 1e-14

    @pytest.mark.parametrize("r", [0, 1, 3])
    def test_isometry_quadrature(self, r):
        f = rand_signal(0.25, 2)
        F = lambda u: fock.true_bargmann_eval(r, f, u)
        q = strip_inner(F, F, -10, 10, nx=16, weight=lambda u: np.exp(-np.pi * np.abs(u) ** 2))
        assert q.real == pytest.approx(f.norm() ** 2, rel=1e-8)

    def test_no_overflow_far_out(self):
        f = rand_signal(0.3)
        # M(z) alone is e^{pi |z|^2 / 2} ~ e^{755} here, beyond double range
        z = 16 + 15j
        assert np.isfinite(fock.true_bargmann_eval(2, f, z))
        assert abs(fock.true_bargmann_eval(0, basis_signal(0, 0.0), z)) == pytest.approx(
            2 ** 0.25 * math.exp(math.pi * (z.real ** 2 - z.imag ** 2) / 2), rel=1e-9)

    def test_order_ceiling(self):
        with pytest.raises(UnsupportedOrderError):
            fock.true_bargmann_eval(17, basis_signal(0, 0), 0)


class TestHoloFn:
    def test_bad_automorphy_rejected(self):
        with pytest.raises(DomainError):
            fock.HoloFn(lambda z: np.exp(z), fock.QuasiPeriod("cylinder", 0.0))

    def test_bad_envelope_rejected(self):
        with pytest.raises(DomainError):
            fock.HoloFn(lambda z: np.exp(np.pi * z * z), envelope=Envelope(1.0, 0.1, 2.0))

    def test_bargmann_holofn_validates(self):
        F = fock.bargmann_holofn(rand_signal(0.3))
        res, scale = fock.automorphy_residual(F, pts(10), 2)
        assert np.all(res <= 1e-9 * np.maximum(scale, 1))


class TestWeyl:
    def F(self):
        return fock.HoloFn(lambda z: np.exp(np.pi * z * z / 2 + 0.3 * z))

    def test_identity(self):
        F = self.F()
        assert fock.weyl_translate(F, 0, 0.2 + 0.1j) == pytest.approx(F(0.2 + 0.1j))

    @given(st.floats(-2, 2), st.floats(-2, 2), st.floats(-1, 1), st.floats(-1, 1))
    def test_modulus_relations(self, a, b, x, y):
        F = self.F()
        w, z = complex(a, b), complex(x, y)
        G = fock.HoloFn(lambda u: fock.weyl_translate(F, -w, u))
        back = fock.weyl_translate(G, w, z)
        assert abs(back) == pytest.approx(abs(F(z)), rel=1e-10)
        lhs = abs(fock.weyl_translate(F, w, z)) * math.exp(-math.pi * abs(z) ** 2 / 2)
        rhs = abs(F(z - w)) * math.exp(-math.pi * abs(z - w) ** 2 / 2)
        assert lhs == pytest.approx(rhs, rel=1e-10)

    def test_cylinder_requires_integer_imag(self):
        F = fock.bargmann_holofn(rand_signal(0.1))
        fock.weyl_translate(F, 0.3 + 2j, 0.1)
        with pytest.raises(InvalidTranslationError):
            fock.weyl_translate(F, 0.3 + 0.5j, 0.1)


class TestKernels:
    @pytest.mark.parametrize("nu", [0.0, 0.3])
    def test_theta_vs_poincare(self, nu):
        z, w = pts(30), pts(30)
        a = fock.fock_kernel_analytic(nu, z, w, cross_check=True)
        b = fock.fock_kernel_theta(nu, z, w)
        assert np.max(np.abs(a - b) / np.maximum(1, np.abs(a))) < 1e-9

    def test_basis_sum(self):
        z, w = pts(10), pts(10)
        s = sum(np.sqrt(2) * fock.phi_basis(k, 0.3, z) * np.conj(fock.phi_basis(k, 0.3, w))
                for k in range(-30, 31))
        a = fock.fock_kernel_analytic(0.3, z, w)
        assert np.max(np.abs(s - a) / np.maximum(1, np.abs(a))) < 1e-12

    def test_hermitian(self):
        z, w = pts(20), pts(20)
        for fn in (lambda a, b: fock.fock_kernel_analytic(0.3, a, b),
                   lambda a, b: fock.fock_kernel_true(2, 0.3, a, b),
                   lambda a, b: fock.fock_kernel_poly(3, 0.3, a, b)):
            K = fn(z, w)
            assert np.max(np.abs(K - np.conj(fn(w, z))) / np.maximum(1, np.abs(K))) < 1e-12

    def test_gaussian_relation(self):
        z, w = pts(20), pts(20)
        pre = np.exp(1j * np.pi * (z.real * z.imag - w.real * w.imag) - np.pi / 2 * (np.abs(z) ** 2 + np.abs(w) ** 2))
        lhs = kernel_gaussian_closed(0.3, z, w)
        assert np.max(np.abs(lhs - pre * fock.fock_kernel_analytic(-0.3, z, w))) < 1e-12

    def test_true_r0(self):
        z, w = pts(10), pts(10)
        assert np.max(np.abs(fock.fock_kernel_true(0, 0.4, z, w) - fock.fock_kernel_analytic(0.4, z, w))) < 1e-12

    @pytest.mark.parametrize("r", [1, 2, 3])
    def test_true_vs_hermite_closed(self, r):
        # K_true(z, w) = M(z) conj(M(w)) K_{h_r}(conj z, conj w)
        z, w = pts(20), pts(20)
        tk = fock.fock_kernel_true(r, 0.3, z, w)
        hk = kernel_hermite_closed(r, 0.3, np.conj(w), np.conj(z))
        mk = fock.multiplier(z) * np.conj(fock.multiplier(w)) * hk
        assert np.max(np.abs(tk - mk) / np.maximum(1, np.abs(tk))) < 1e-9

    def test_poly_n1(self):
        z, w = pts(10), pts(10)
        assert np.max(np.abs(fock.fock_kernel_poly(1, 0.3, z, w) - fock.fock_kernel_analytic(0.3, z, w))) < 1e-12

    @pytest.mark.parametrize("N", [2, 3, 4])
    def test_vasilevski(self, N):
        z, w = pts(50), pts(50)
        kp = fock.fock_kernel_poly(N, 0.3, z, w)
        ks = fock.fock_kernel_poly_sum(N, 0.3, z, w)
        assert np.max(np.abs(kp - ks) / (1 + np.abs(kp))) < 1e-9

    def test_true_kernel_reproduces(self):
        f = rand_signal(0.3, 2)
        w0 = 0.4 - 0.6j
        F = lambda u: fock.true_bargmann_eval(1, f, u)
        q = strip_inner(F, lambda u: fock.fock_kernel_true(1, 0.3, u, w0), -10, 10, nx=16,
                        weight=lambda u: np.exp(-np.pi * np.abs(u) ** 2))
        assert abs(q - F(w0)) < 1e-8 * max(1, abs(F(w0)))


class TestDerivatives:
    def test_polynomial(self):
        assert fock.cauchy_derivative(lambda z: z * z, 0.3 + 0.1j, 2) == pytest.approx(2, abs=1e-10)

    def test_exponential(self):
        assert fock.cauchy_derivative(lambda z: np.exp(np.pi * z), 0, 1) == pytest.approx(math.pi, abs=1e-10)

    def test_order_zero(self):
        F = lambda z: np.sin(z)
        assert fock.cauchy_derivative(F, 0.7, 0) == pytest.approx(np.sin(0.7), abs=1e-14)

    def test_raising_order_zero(self):
        F = lambda z: np.cos(z)
        assert fock.raising_apply(F, 0, 0.2 + 0.3j) == pytest.approx(np.cos(0.2 + 0.3j), abs=1e-14)

    def test_raising_phi(self):
        # (d - pi conj z) e^{pi z^2/2} = pi (z - conj z) e^{pi z^2/2}
        F = lambda z: fock.phi_basis(0, 0.0, z)
        for z in (0.0, 0.3 + 0.4j, -0.5 + 0.1j):
            expect = np.pi * (z - np.conj(z)) * F(z)
            assert abs(fock.raising_apply(F, 1, z) - expect) < 1e-10

    def test_order_ceiling(self):
        with pytest.raises(UnsupportedOrderError):
            fock.cauchy_derivative(np.exp, 0, 13)


class TestPeriodize:
    def bump(self):
        # Gaussian coefficient bump
        ks = np.arange(-4, 5)
        return make_signal(0.3, list(zip(ks.tolist(), np.exp(-0.5 * ks ** 2).tolist())))

    def test_zero(self):
        F = fock.HoloFn(lambda z: 0 * np.asarray(z), envelope=fock.GrowthEnvelope(1e-300, 0, 0))
        assert fock.complex_periodize(F, 0.5, 1, 0.3 + 0.2j) == 0

    def test_matches_brute_force(self):
        F = fock.bargmann_holofn(self.bump())
        z = pts(10, 1)
        for beta, l in ((0.5, 1), (0.4, 2)):
            a = fock.complex_periodize(F, beta, l, z)
            b = fock.complex_periodize_brute(F, beta, l, z, n_max=40)
            assert np.max(np.abs(a - b) / np.maximum(1, np.abs(b))) < 1e-10

    @pytest.mark.parametrize("beta,l", [(0.5, 1), (0.4, 2), (0.25, 3)])
    def test_automorphy(self, beta, l):
        F = fock.bargmann_holofn(self.bump())
        z = pts(10, 1)
        gam = 1j / beta
        H = lambda u: fock.complex_periodize(F, beta, l, u)
        lhs = H(z + gam)
        rhs = np.exp(2j * np.pi * l / beta + np.pi * abs(gam) ** 2 / 2 + np.pi * z * np.conj(gam)) * H(z)
        assert np.max(np.abs(lhs - rhs) / np.maximum(1, np.abs(lhs))) < 1e-8

    def test_needs_envelope(self):
        with pytest.raises(ConvergenceError):
            fock.complex_periodize(fock.HoloFn(np.exp), 0.5, 0, 0.1)

    def test_refuses_fast_growth(self):
        F = fock.HoloFn(lambda z: np.exp(np.pi * z * z / 2), envelope=fock.GrowthEnvelope(1.0, 0.5 * np.pi, 0.6 * np.pi))
        with pytest.raises(ConvergenceError):
            fock.complex_periodize(F, 0.5, 0, 0.1)

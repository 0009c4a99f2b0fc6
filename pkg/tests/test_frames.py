import math

import numpy as np
import pytest
from hypothesis import given, settings, strategies as st

from cylgabor import frames
from cylgabor.errors import DomainError, NotAFrameError
from cylgabor.qp_signal import basis_signal, gaussian_window, hermite_window, make_signal, tp_window
from cylgabor.special_fn import tp_sech_factorization

CORR_GAUSS_000 = 1.4194954880837661234  # sqrt2 sum_k e^{-2 pi k^2}
GAUSS_OVERLAP_1 = 0.20787957635076190855  # e^{-pi/2}

G0 = gaussian_window()
H1 = hermite_window(1)
rng = np.random.default_rng(23)


def rand_signal(nu, K):
    return make_signal(nu, [(k, complex(*rng.normal(size=2))) for k in range(-K, K + 1)])


@pytest.fixture(scope="module")
def dual_half():
    return frames.dual_window(G0, "1/2")


class TestAnalysisMatrix:
    def test_origin_entry(self):
        spec = frames.FrameSpec(G0, 0.5, 0.0, 8)
        M = frames.analysis_matrix(spec)
        N = M.shape[0] // 2
        assert M[N, 8] == pytest.approx(2 ** 0.25, abs=1e-15)

    def test_column_norms(self):
        spec = frames.FrameSpec(G0, 0.5, 0.3, 8)
        M = frames.analysis_matrix(spec)
        b = frames.frame_bounds(spec)
        n = np.arange(-400, 401)
        for j, k in enumerate(range(-8, 9)):
            brute = np.sum(np.abs(G0.ft_conj_eval(0.5 * n - 0.3 - k)) ** 2)
            col = np.sum(np.abs(M[:, j]) ** 2)
            assert col == pytest.approx(brute, rel=1e-12)
            assert col <= b.B * (1 + 1e-12)

    def test_hermite_zeros(self):
        spec = frames.FrameSpec(H1, 0.5, 0.0, 6)
        M = frames.analysis_matrix(spec)
        N = M.shape[0] // 2
        for i, n in enumerate(range(-N, N + 1)):
            for j, k in enumerate(range(-6, 7)):
                if 0.5 * n - k == 0:
                    assert M[i, j] == 0


class TestBounds:
    def test_gaussian_stable(self):
        b64 = frames.frame_bounds(frames.FrameSpec(G0, 0.5, 0.0, 64))
        b128 = frames.frame_bounds(frames.FrameSpec(G0, 0.5, 0.0, 128))
        assert b64.A > 0 and abs(b128.A - b64.A) / b128.A < 1e-3
        assert b64.A <= b64.B

    def test_gaussian_no_frame(self):
        assert frames.frame_bounds(frames.FrameSpec(G0, 1.25, 0.0, 128)).ratio < 1e-6

    def test_ceiling(self):
        with pytest.raises(DomainError):
            frames.frame_bounds(frames.FrameSpec(G0, 0.5, 0.0, 1024))

    def test_to_dict(self):
        d = frames.frame_bounds(frames.FrameSpec(G0, 0.5, 0.0, 8)).to_dict()
        assert set(d) == {"A", "B", "K", "N", "convergence"}


class TestFrameOperator:
    spec = frames.FrameSpec(G0, 0.5, 0.2, 12)

    def test_rayleigh(self):
        b = frames.frame_bounds(self.spec)
        f = basis_signal(0, 0.2)
        rq = frames.frame_apply(self.spec, f).dense(12) @ f.dense(12).conj()
        assert b.A - 1e-12 <= rq.real <= b.B + 1e-12

    def test_hermitian_form(self):
        f, h = rand_signal(0.2, 12), rand_signal(0.2, 12)
        a = np.vdot(h.dense(12), frames.frame_apply(self.spec, f).dense(12))
        b = np.vdot(frames.frame_apply(self.spec, h).dense(12), f.dense(12))
        assert abs(a - b) < 1e-12 * max(1, abs(a))

    def test_linear(self):
        f = rand_signal(0.2, 12)
        f2 = make_signal(0.2, [(k, 2 * v) for k, v in f.coeffs.items()])
        assert np.array_equal(frames.frame_apply(self.spec, f2).dense(12),
                              2 * frames.frame_apply(self.spec, f).dense(12))

    def test_nu_mismatch(self):
        with pytest.raises(DomainError):
            frames.frame_apply(self.spec, basis_signal(0, 0.3))

    @pytest.mark.parametrize("g,beta", [(G0, 0.5), (H1, 0.4)])
    def test_walnut_janssen(self, g, beta):
        spec = frames.FrameSpec(g, beta, 0.3, 16)
        f = rand_signal(0.3, 16)
        Sf = frames.frame_apply(spec, f).dense(16)
        assert np.max(np.abs(frames.walnut_apply(spec, f).dense(16) - Sf)) < 1e-6
        assert np.max(np.abs(frames.janssen_apply(spec, f).dense(16) - Sf)) < 1e-6


class TestCorrelation:
    @given(st.floats(-2, 2), st.integers(-3, 3))
    @settings(max_examples=25)
    def test_periodic(self, x, n):
        a = frames.correlation_fn(G0, H1, 0.5, n, x + 1)
        b = frames.correlation_fn(G0, H1, 0.5, n, x)
        assert abs(a - b) < 1e-12

    def test_gaussian_origin(self):
        assert frames.correlation_fn(G0, G0, 0.5, 0, 0.0).real == pytest.approx(CORR_GAUSS_000, rel=1e-14)

    def test_fourier_coefficients(self):
        x = np.arange(256) / 256
        for n in (-1, 0, 2):
            G = frames.correlation_fn(H1, G0, 0.5, n, x)
            F = np.fft.fft(G) / 256
            for m in (-2, 0, 1, 3):
                assert abs(F[m % 256] - frames.janssen_coeffs(H1, G0, 0.5, m, n)) < 1e-8

    def test_janssen_values(self):
        assert frames.janssen_coeffs(G0, G0, 0.5, 0, 0) == pytest.approx(1, abs=1e-10)
        assert frames.janssen_coeffs(G0, G0, 1.0, 0, 1).real == pytest.approx(GAUSS_OVERLAP_1, rel=1e-10)

    def test_janssen_symmetry(self):
        for k, n in ((1, 1), (2, -1), (0, 3)):
            a = frames.janssen_coeffs(G0, G0, 0.5, k, n)
            b = frames.janssen_coeffs(G0, G0, 0.5, -k, -n)
            assert abs(abs(a) - abs(b)) < 1e-12


class TestWexlerRaz:
    def test_beta_one_reported(self):
        # no claim at beta = 1; the value is finite and positive
        r = frames.wexler_raz_residual(G0, G0, 1.0, [0], [0])
        assert math.isfinite(r) and r > 0

    def test_l_period(self):
        for beta in (0.5, 0.4):
            a = frames.wexler_raz_residual(G0, H1, beta, [0, 1], [0.3])
            b = frames.wexler_raz_residual(G0, H1, beta, [0, 1], [0.3 + 2 * beta])
            assert abs(a - b) < 1e-12

    def test_dual(self, dual_half):
        assert frames.wexler_raz_residual(G0, dual_half, 0.5) < 1e-6

    def test_walnut_with_dual_is_identity(self, dual_half):
        spec = frames.FrameSpec(G0, 0.5, 0.3, 8)
        f = rand_signal(0.3, 8)
        assert np.max(np.abs(frames.walnut_apply(spec, f, dual_half).dense(8) - f.dense(8))) < 1e-6


class TestDual:
    def test_symmetric(self, dual_half):
        assert np.max(np.abs(dual_half.values - dual_half.time_eval(-dual_half.grid))) < 1e-8

    def test_degradation(self):
        s = [frames.dual_window(G0, b, grid_step=1 / 16).sigma_min for b in ("1/2", "4/5", "19/20")]
        assert s[0] > s[1] > s[2] > 0

    def test_critical_density_refused(self):
        with pytest.raises(NotAFrameError):
            frames.dual_window(G0, "1")

    def test_irrational_refused(self):
        with pytest.raises(DomainError):
            frames.dual_window(G0, math.pi / 7)

    def test_ft_matches_time(self, dual_half):
        t = dual_half.grid
        step = t[1] - t[0]
        for xi in (0.0, 0.7):
            q = np.sum(np.conj(dual_half.values) * np.exp(-2j * np.pi * xi * t)) * step
            assert abs(q - dual_half.ft_conj_eval(xi)) < 1e-8

    def test_roundtrip(self, dual_half):
        spec = frames.FrameSpec(G0, 0.5, 0.3, 12)
        f = basis_signal(0, 0.3)
        rec = frames.reconstruct(spec, frames.analyze(spec, f), dual_half)
        c = rec.coeffs
        err = math.sqrt(sum(abs(v - (1.0 if k == 0 else 0.0)) ** 2 for k, v in c.items()))
        assert err / f.norm() < 1e-5

    def test_reconstruct_zero_and_linear(self, dual_half):
        spec = frames.FrameSpec(G0, 0.5, 0.3, 6)
        N = frames.analysis_matrix(spec).shape[0] // 2
        zero = frames.reconstruct(spec, np.zeros(2 * N + 1), dual_half)
        assert not np.any(zero.a)
        s1 = rng.normal(size=2 * N + 1) + 1j * rng.normal(size=2 * N + 1)
        s2 = rng.normal(size=2 * N + 1)
        r1 = frames.reconstruct(spec, s1, dual_half)
        r2 = frames.reconstruct(spec, s2, dual_half)
        r12 = frames.reconstruct(spec, s1 + 3 * s2, dual_half)
        K = max(r1.K, r2.K, r12.K)
        assert np.max(np.abs(r12.dense(K) - r1.dense(K) - 3 * r2.dense(K))) < 1e-12


class TestPredicate:
    def test_verdicts(self):
        assert frames.sufficient_frame_predicate("gaussian", 0.5).verdict == "frame"
        assert frames.sufficient_frame_predicate("gaussian", 1.5).verdict == "not_frame"
        assert frames.sufficient_frame_predicate("hermite:2", 0.5).verdict == "unknown"
        assert frames.sufficient_frame_predicate("hermite:1", "2/5").verdict == "frame"

    def test_tp(self):
        g = tp_window(tp_sech_factorization(2.0, 2))
        assert frames.sufficient_frame_predicate(g, "1/2").verdict == "frame"
        assert frames.sufficient_frame_predicate(g, 1.2).verdict == "unknown"
        b = frames.frame_bounds(frames.FrameSpec(g, 0.5, 0.0, 32))
        assert b.ratio > 1e-4

    def test_report_flags_disagreement(self):
        spec = frames.FrameSpec(G0, 0.5, 0.0, 8)
        b = frames.frame_bounds(spec)
        fake = frames.Verdict("not_frame", "test")
        rep = frames.bounds_report(spec, b, fake)
        assert rep["disagreement"]
        rep = frames.bounds_report(spec, b, frames.sufficient_frame_predicate("gaussian", 0.5))
        assert rep["disagreement"] is None and rep["verdict_predicate"] == "frame"

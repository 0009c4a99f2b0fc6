"""Verification suites: every check evaluates one stated identity or
invariant numerically and records its tolerance and measured value.

Each check function returns a list of :class:`Check` records; a suite is a
list of check functions. All randomness is seeded, so reports are
reproducible.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Callable, Dict, List

import numpy as np

from . import fock, frames, sampling, superframes
from .qp_signal import (basis_signal, gaussian_window, hermite_window, inner_product, make_signal,
                        periodize_shift)
from .special_fn import gauss_legendre_panels, laguerre
from .stft import (basis_image, gabor_kernel, kernel_gaussian_closed, kernel_hermite_closed,
                   moyal_inner, stft_eval, stft_xy, strip_inner)


@dataclass
class Check:
    name: str
    citation: str
    tolerance: float
    measured: float
    passed: bool

    def to_dict(self):
        return {"name": self.name, "citation": self.citation, "tolerance": self.tolerance,
                "measured": self.measured, "passed": bool(self.passed)}


def _le(name, citation, tol, measured):
    measured = float(measured)
    return Check(name, citation, tol, measured, bool(measured <= tol))


def _ge(name, citation, tol, measured):
    measured = float(measured)
    return Check(name, citation, tol, measured, bool(measured >= tol))


def random_signal(rng, nu, K, scale=1.0):
    ks = np.arange(-K, K + 1)
    a = (rng.normal(size=ks.size) + 1j * rng.normal(size=ks.size)) * scale
    return make_signal(nu, list(zip(ks.tolist(), a.tolist())))


def _rand_pts(rng, n, xi_max=3.0):
    return rng.uniform(0, 1, n) + 1j * rng.uniform(-xi_max, xi_max, n)


# ------------------------------------------------------------------ moyal

def basis_gram_error(g, nu, K=16, nx=72):
    """max |Gram - I| for {V_g e_{k,nu}}_{|k|<=K} by strip quadrature."""
    R = g.freq_radius(1e-18)
    xi, w = gauss_legendre_panels(nu - K - R, nu + K + R, width=0.25, order=20)
    xs = np.arange(nx) / nx
    z = xs[None, :] + 1j * xi[:, None]
    V = np.array([basis_image(g, k, nu, z).ravel() for k in range(-K, K + 1)])
    wt = np.repeat(w, nx) / nx
    G = (V * wt) @ V.conj().T
    return float(np.max(np.abs(G - np.eye(2 * K + 1))))


def check_basis_orthonormality():
    out = []
    for g in (gaussian_window(), hermite_window(1), hermite_window(2)):
        for nu in (0.0, 0.3):
            out.append(_le(f"basis_orthonormality[{g.label},nu={nu}]",
                           "orthonormal basis of the Gabor space, 'contains the orthonormal basis'",
                           1e-6, basis_gram_error(g, nu)))
    return out


def check_moyal():
    rng = np.random.default_rng(11)
    g1, g2 = gaussian_window(), hermite_window(1)
    worst = 0.0
    for _ in range(100):
        nu = float(rng.uniform(0, 1))
        f1, f2 = random_signal(rng, nu, 4), random_signal(rng, nu, 4)
        lhs = moyal_inner(f1, g1, f2, g1)
        worst = max(worst, abs(lhs - inner_product(f1, f2)) / max(1.0, abs(lhs)))
        worst = max(worst, abs(moyal_inner(f1, g1, f2, g2)))
    out = [_le("moyal_coefficient_identity", "Moyal identity, 'using the periodicity of'",
               1e-12, worst)]
    worst_q = 0.0
    for _ in range(10):
        nu = float(rng.uniform(0, 1))
        f1, f2 = random_signal(rng, nu, 3), random_signal(rng, nu, 3)
        for ga, gb in ((g1, g1), (g1, g2)):
            q = strip_inner(lambda z: stft_eval(f1, ga, z), lambda z: stft_eval(f2, gb, z),
                            nu - 12, nu + 12, nx=16)
            worst_q = max(worst_q, abs(q - moyal_inner(f1, ga, f2, gb)) / max(1.0, abs(q)))
    out.append(_le("moyal_quadrature_crosscheck", "Moyal identity, 'using the periodicity of'",
                   1e-6, worst_q))
    return out


def check_ident():
    """<f, Sigma_nu(pi(z) g)> over (0,1) equals V_g f(z)."""
    rng = np.random.default_rng(12)
    g = gaussian_window()
    worst = 0.0
    t, w = gauss_legendre_panels(0.0, 1.0, width=0.1, order=20)
    for _ in range(5):
        nu = float(rng.uniform(0, 1))
        f = random_signal(rng, nu, 3)
        z = complex(rng.uniform(0, 1), rng.uniform(-2, 2))
        lhs = np.sum(w * f(t) * np.conj(periodize_shift(g, z, nu, t)))
        worst = max(worst, abs(lhs - stft_eval(f, g, z)))
    return [_le("periodization_identity", "STFT as inner product with periodized shifts", 1e-7, worst)]


# ---------------------------------------------------------------- kernels

def check_kernels():
    rng = np.random.default_rng(21)
    out = []
    worst = 0.0
    for nu in (0.0, 0.3):
        z, w = _rand_pts(rng, 30), _rand_pts(rng, 30)
        a = fock.fock_kernel_analytic(nu, z, w)
        th = fock.fock_kernel_theta(nu, z, w)
        worst = max(worst, float(np.max(np.abs(a - th) / np.maximum(1, np.abs(a)))))
    out.append(_le("fock_kernel_theta_vs_poincare", "theta form of the kernel, 'classical Jacobi theta function'",
                   1e-9, worst))
    z, w = _rand_pts(rng, 30), _rand_pts(rng, 30)
    herm = float(np.max(np.abs(fock.fock_kernel_analytic(0.3, z, w)
                               - np.conj(fock.fock_kernel_analytic(0.3, w, z)))
                        / np.maximum(1, np.abs(fock.fock_kernel_analytic(0.3, z, w)))))
    out.append(_le("fock_kernel_hermitian", "reproducing kernel symmetry", 1e-12, herm))
    pre = np.exp(1j * np.pi * (z.real * z.imag - w.real * w.imag)
                 - np.pi / 2 * (np.abs(z) ** 2 + np.abs(w) ** 2))
    rel = np.max(np.abs(kernel_gaussian_closed(0.3, z, w) - pre * fock.fock_kernel_analytic(-0.3, z, w)))
    out.append(_le("gaussian_kernel_fock_relation", "Gaussian kernel 'can be related to' the Fock kernel",
                   1e-12, rel))
    worst = 0.0
    for r in (0, 1, 2, 3):
        g = hermite_window(r)
        gk = gabor_kernel(g, 0.3, w, z)
        ck = kernel_hermite_closed(r, 0.3, z, w)
        worst = max(worst, float(np.max(np.abs(gk - ck))))
        tk = fock.fock_kernel_true(r, 0.3, z, w)
        mk = fock.multiplier(z) * np.conj(fock.multiplier(w)) * gabor_kernel(g, 0.3, np.conj(z), np.conj(w))
        worst = max(worst, float(np.max(np.abs(tk - mk) / np.maximum(1, np.abs(tk)))))
    out.append(_le("hermite_kernel_closed_forms", "Laguerre-weighted kernels, 'As a consequence, the reproducing kernel'",
                   1e-9, worst))
    # reproducing property by strip quadrature
    f = random_signal(rng, 0.3, 2)
    g = hermite_window(1)
    worst = 0.0
    for w0 in (0.2 + 0.5j, 0.7 - 1.1j):
        q = strip_inner(lambda u: stft_eval(f, g, u), lambda u: gabor_kernel(g, 0.3, u, w0),
                        -10, 10, nx=16)
        worst = max(worst, abs(q - stft_eval(f, g, w0)))
    out.append(_le("gabor_kernel_reproduces", "reproducing kernel of the Gabor space", 1e-7, worst))
    return out


def check_bargmann():
    rng = np.random.default_rng(31)
    worst = 0.0
    for _ in range(50):
        nu = float(rng.uniform(0, 1))
        f = random_signal(rng, nu, 4)
        z = complex(rng.uniform(0, 1), rng.uniform(-2, 2))
        F = fock.HoloFn(lambda u, f=f: fock.bargmann_eval(f, u), check=False)
        for k in range(-2, 3):
            lhs = fock.bargmann_eval(f, z + k)
            rhs = np.exp(2j * np.pi * k * nu + np.pi * k * k / 2 + np.pi * z * k) * fock.bargmann_eval(f, z)
            worst = max(worst, abs(lhs - rhs) / max(1.0, abs(lhs)))
    out = [_le("bargmann_functional_equation", "'satisfying the functional equation'", 1e-9, worst)]
    nu = 0.3
    e = basis_signal(2, nu)
    z = _rand_pts(rng, 20)
    err = np.max(np.abs(fock.bargmann_eval(e, z) - 2 ** 0.25 * fock.phi_basis(2, nu, z))
                 / np.abs(fock.phi_basis(2, nu, z)))
    out.append(_le("bargmann_basis_image", "'has an orthogonal basis given by' (unit-norm basis 2^{1/4} phi_k)",
                   1e-10, err))
    f = random_signal(rng, nu, 2)
    worst = 0.0
    for r in (1, 2):
        for zz in _rand_pts(rng, 10, 1.5):
            a = fock.true_bargmann_eval(r, f, zz)
            b = fock.true_bargmann_from_raising(r, f, zz)
            worst = max(worst, abs(a - b) / max(abs(a), 1e-300))
    out.append(_le("true_bargmann_raising_form", "'consisting of functions F of the form'", 1e-7, worst))
    q = strip_inner(lambda u: fock.bargmann_eval(f, u), lambda u: fock.bargmann_eval(f, u),
                    -9, 9, nx=16, weight=lambda u: np.exp(-np.pi * np.abs(u) ** 2))
    out.append(_le("bargmann_isometry", "unitary Bargmann-type transform", 1e-6,
                   abs(q - f.norm() ** 2) / f.norm() ** 2))
    return out


# ------------------------------------------------------------- vasilevski

def check_vasilevski():
    rng = np.random.default_rng(41)
    out = []
    z, w = _rand_pts(rng, 100), _rand_pts(rng, 100)
    worst = 0.0
    for N in (1, 2, 3, 4):
        for nu in (0.0, 0.3):
            kp = fock.fock_kernel_poly(N, nu, z, w)
            ks = fock.fock_kernel_poly_sum(N, nu, z, w)
            worst = max(worst, float(np.max(np.abs(kp - ks) / (1 + np.abs(kp)))))
    out.append(_le("vasilevski_kernel_identity", "'the following orthogonal decompositions'", 1e-9, worst))
    x = np.linspace(0.0, 30.0, 20)
    lag = max(float(np.max(np.abs(laguerre(n, 1.0, x) - sum(laguerre(r, 0.0, x) for r in range(n + 1)))
                        / np.maximum(1, np.abs(laguerre(n, 1.0, x)))))
              for n in range(17))
    out.append(_le("laguerre_summation_identity", "'well-known identity for Laguerre polynomials'", 1e-12, lag))
    # double-index orthogonality: <V_{h_r1} e_k, V_{h_r2} e_m> = delta
    worst = 0.0
    for r1 in range(3):
        for r2 in range(3):
            for k in (-1, 0, 1):
                for m in (-1, 0, 1):
                    val = moyal_inner(basis_signal(k, 0.3), hermite_window(r1),
                                      basis_signal(m, 0.3), hermite_window(r2))
                    target = 1.0 if (r1, k) == (r2, m) else 0.0
                    worst = max(worst, abs(val - target))
    out.append(_le("double_index_orthogonality", "orthogonality of the true polyanalytic layers", 1e-12, worst))
    z0, w0 = _rand_pts(rng, 20), _rand_pts(rng, 20)
    kt = fock.fock_kernel_true(0, 0.3, z0, w0)
    ka = fock.fock_kernel_analytic(0.3, z0, w0)
    kp1 = fock.fock_kernel_poly(1, 0.3, z0, w0)
    out.append(_le("order_one_kernels_coincide", "L_0 = 1", 1e-12,
                   float(max(np.max(np.abs(kt - ka)), np.max(np.abs(kp1 - ka))))))
    return out


# ------------------------------------------------------------- wexler-raz

def check_wexler_raz():
    g = gaussian_window()
    d = frames.dual_window(g, "1/2")
    res = frames.wexler_raz_residual(g, d, 0.5, range(-3, 4), range(-3, 4))
    out = [_le("wexler_raz_gaussian_dual", "'if there exists gamma in S_0 such that'", 1e-6, res)]
    out.append(_le("dual_symmetry", "symmetric window gives symmetric dual", 1e-8,
                   float(np.max(np.abs(d.values - d.time_eval(-d.grid))))))
    sig = [frames.dual_window(g, b, grid_step=1 / 16).sigma_min for b in ("1/2", "4/5", "19/20")]
    out.append(Check("dual_sigma_monotone", "degradation toward critical density", 0.0,
                     float(min(sig[0] - sig[1], sig[1] - sig[2])), bool(sig[0] > sig[1] > sig[2])))
    spec = frames.FrameSpec(g, 0.5, 0.3, 12)
    f = basis_signal(0, 0.3)
    rec = frames.reconstruct(spec, frames.analyze(spec, f), d)
    err = math.sqrt(sum(abs(v - (1.0 if k == 0 else 0.0)) ** 2 for k, v in rec.coeffs.items()))
    out.append(_le("dual_reconstruction_roundtrip", "'the reconstruction formula'", 1e-5, err))
    return out


# ----------------------------------------------------------------- frames

def check_frames():
    out = []
    g = gaussian_window()
    bs = [frames.frame_bounds(frames.FrameSpec(g, 0.5, 0.0, K)) for K in (32, 64, 128)]
    out.append(_le("gaussian_frame_bound_stability", "'Z is sampling for' (beta < 1)", 1e-3, bs[-1].convergence))
    out.append(_ge("gaussian_frame_ratio", "'Z is sampling for' (beta < 1)", 0.05, bs[-1].ratio))
    b = frames.frame_bounds(frames.FrameSpec(g, 1.25, 0.0, 128))
    out.append(_le("gaussian_no_frame_ratio", "'Z is sampling for' fails for 1/beta < 1", 1e-6, b.ratio))
    h = frames.frame_bounds(frames.FrameSpec(hermite_window(1), 0.4, 0.0, 128))
    out.append(_ge("hermite_frame_ratio", "'If beta < 1/(r+1), then'", 1e-4, h.ratio))
    out.append(_le("hermite_frame_bound_stability", "'If beta < 1/(r+1), then'", 1e-2, h.convergence))
    rng = np.random.default_rng(51)
    spec = frames.FrameSpec(g, 0.5, 0.3, 16)
    fb = frames.frame_bounds(spec)
    M = frames.analysis_matrix(spec)
    S = M.conj().T @ M
    out.append(_ge("frame_operator_psd", "positivity of the frame operator", -1e-10,
                   float(np.linalg.eigvalsh(S)[0])))
    worst = 0.0
    for _ in range(50):
        a = rng.normal(size=33) + 1j * rng.normal(size=33)
        rq = float(np.real(a.conj() @ S @ a) / np.real(a.conj() @ a))
        worst = max(worst, fb.A - rq, rq - fb.B)
    out.append(_le("rayleigh_sandwich", "'the sampling inequality holds'", 1e-9, worst))
    f = random_signal(rng, 0.3, 16)
    Sf = frames.frame_apply(spec, f).dense(16)
    wal = frames.walnut_apply(spec, f).dense(16)
    jan = frames.janssen_apply(spec, f).dense(16)
    out.append(_le("walnut_consistency", "'arrive at Walnut's representation'", 1e-6,
                   float(np.max(np.abs(wal - Sf)))))
    out.append(_le("janssen_consistency", "'important Janssen's representation'", 1e-6,
                   float(np.max(np.abs(jan - Sf)))))
    verdicts = [frames.sufficient_frame_predicate("gaussian", 0.5).verdict == "frame",
                frames.sufficient_frame_predicate("gaussian", 1.5).verdict == "not_frame",
                frames.sufficient_frame_predicate("hermite:2", 0.5).verdict == "unknown"]
    out.append(Check("frame_predicates", "sufficient frame criteria", 0.0, float(sum(verdicts)),
                     all(verdicts)))
    return out


# --------------------------------------------------------------- sampling

def check_sampling():
    out = []
    rng = np.random.default_rng(61)
    Z = sampling.PointSet.vertical_lattice(0.5, -80, 80)
    w0 = 0.35 + 0.45j
    worst = 0.0
    for nu in (0.0, 0.3):
        vals = fock.fock_kernel_analytic(nu, Z.z, w0)
        zp = rng.uniform(0, 1, 20) + 1j * rng.uniform(-1, 1, 20)
        rec = sampling.sample_reconstruct(Z, vals, zp, nu=nu)
        tr = fock.fock_kernel_analytic(nu, zp, w0)
        worst = max(worst, float(np.max(np.abs(rec - tr) / np.abs(tr))))
    out.append(_le("sampling_reconstruction", "'with uniform convergence on compacts'", 1e-4, worst))
    worst = 0.0
    for beta in (0.2, 0.25, 0.5, 2.0):
        L = sampling.PointSet.vertical_lattice(beta, -5, 5)
        d = sampling.beurling_density(L, r_max=200.0)
        worst = max(worst, abs(d.exact - 1 / beta) * beta,
                    abs(d.lower - 1 / beta) * beta, abs(d.upper - 1 / beta) * beta)
    out.append(_le("beurling_density_lattice", "'When Z is the regular lattice'", 0.05, worst))
    pts = sampling.PointSet.finite(rng.uniform(0, 1, 100) + 1j * rng.uniform(-5, 5, 100))
    out.append(_le("separation_vs_bruteforce", "'called the separation constant'", 1e-15,
                   abs(sampling.separation(pts) - sampling.separation_brute(pts))))
    Zs = sampling.PointSet.vertical_lattice(0.5, -20, 20)
    worst = 0.0
    for k in (-3, 0, 2):
        zk = Zs.node(k)
        d1 = sampling.node_product_deriv(Zs, k)
        d2 = fock.cauchy_derivative(lambda u: sampling.node_product_g(Zs, u), zk, 1, 0.1)
        worst = max(worst, abs(d1 - d2) / abs(d1))
    out.append(_le("node_product_derivative", "derivative of the canonical product at a node", 1e-8, worst))
    return out


def interpolation_data(seed=71):
    rng = np.random.default_rng(seed)
    Z = sampling.PointSet.vertical_lattice(3.0, -10, 10)
    a = rng.normal(size=len(Z)) + 1j * rng.normal(size=len(Z))
    return Z, a


def weighted_sup(Z, a, R, r=1, nx=4):
    xs = np.arange(nx) / nx
    ys = np.linspace(-R, R, int(8 * R) + 1)
    P = (xs[None, :] + 1j * ys[:, None]).ravel()
    return float(np.max(np.abs(sampling.interpolate_true(r, Z, a, P, weighted=True, data_weighted=True))))


def check_interpolation():
    Z, a = interpolation_data()
    out = []
    err = float(np.max(np.abs(sampling.interpolate_true(1, Z, a, Z.z) - a)))
    out.append(_le("interpolation_node_exactness", "'consider the following interpolation function'", 1e-8, err))
    s_in = weighted_sup(Z, a, 31.0)
    s_out = weighted_sup(Z, a, 45.0)
    out.append(_le("interpolation_weighted_no_growth", "membership in the weighted space", 1e-12,
                   max(0.0, s_out - s_in) / s_in))
    single = [weighted_sup(Z, np.eye(len(Z))[i], 45.0) for i in range(len(Z))]
    bound = float(np.sum(np.abs(a))) * max(single)
    out.append(Check("interpolation_weighted_bound", "membership in the weighted space", bound, s_out,
                     bool(np.isfinite(s_out) and s_out <= bound)))
    out.append(_le("interpolation_uniform_in_n", "membership in the weighted space", 2.0,
                   max(single) / single[len(Z) // 2]))
    refused = False
    try:
        sampling.interpolate_true(1, sampling.PointSet.vertical_lattice(1.5, -3, 3), np.ones(7), 0.1)
    except sampling.DensityPreconditionError:
        refused = True
    out.append(Check("interpolation_density_precondition", "'If D^+(Z) < 1/(r+1)'", 0.0,
                     float(refused), refused))
    return out


# ------------------------------------------------------------------ super

def check_super():
    out = []
    G = superframes.VectorWindow.hermite(2)
    b = [superframes.super_frame_bounds(G, 0.4, 0.0, K) for K in (64, 128)]
    out.append(_ge("superframe_ratio", "'If beta < 1/N'", 1e-4, b[-1].ratio))
    out.append(_le("superframe_stability", "'If beta < 1/N'", 1e-2, b[-1].convergence))
    rng = np.random.default_rng(81)
    worst = 0.0
    for _ in range(20):
        F1 = superframes.VectorSignal(0.3, (random_signal(rng, 0.3, 3), random_signal(rng, 0.3, 3)))
        F2 = superframes.VectorSignal(0.3, (random_signal(rng, 0.3, 3), random_signal(rng, 0.3, 3)))
        lhs = superframes.vector_moyal(F1, G, F2, G)
        rhs = sum(inner_product(f, h) for f, h in zip(F1.channels, F2.channels))
        worst = max(worst, abs(lhs - rhs) / max(1.0, abs(rhs)))
    out.append(_le("vector_moyal", "'This defines an isometry'", 1e-12, worst))
    Bs = [superframes.super_frame_bounds(superframes.VectorWindow.hermite(N), 0.3, 0.0, 32) for N in (1, 2, 3)]
    scal = [frames.frame_bounds(frames.FrameSpec(hermite_window(r), 0.3, 0.0, 32)).A for r in range(3)]
    viol = 0.0
    for N in (1, 2):
        viol = max(viol, Bs[N - 1].B - Bs[N].B, Bs[N].A - min(scal[: N + 1]))
    out.append(_le("superframe_monotonicity", "stacked frame operator interlacing", 1e-9, viol))
    F = superframes.VectorSignal(0.3, (random_signal(rng, 0.3, 2), random_signal(rng, 0.3, 2)))
    q = strip_inner(lambda u: superframes.super_bargmann(F, u), lambda u: superframes.super_bargmann(F, u),
                    -10, 10, nx=16, weight=lambda u: np.exp(-np.pi * np.abs(u) ** 2))
    out.append(_le("super_bargmann_isometry", "'is isometric'", 1e-6, abs(q - F.norm() ** 2) / F.norm() ** 2))
    # per-channel scalar duals: the channel-summed bracket gives N delta_{k0}, so the
    # plain residual against delta_{k0} is reported alongside
    D = superframes.VectorWindow(tuple(frames.dual_window(g, "2/5") for g in G.windows), check=False)
    S = superframes.super_wr_matrix(G, D, 0.4)
    target = np.zeros_like(S)
    target[3, :] = G.N
    out.append(_le("super_wr_per_channel_duals", "'or, equivalently, if there exists' (N delta)", 1e-6,
                   float(np.max(np.abs(S - target)))))
    plain = superframes.super_wr_residual(G, D, 0.4)
    out.append(Check("super_wr_residual_reported", "'or, equivalently, if there exists'", math.inf, plain,
                     bool(math.isfinite(plain))))
    return out


SUITES: Dict[str, List[Callable]] = {
    "moyal": [check_basis_orthonormality, check_moyal, check_ident],
    "kernels": [check_kernels, check_bargmann],
    "vasilevski": [check_vasilevski],
    "wexler_raz": [check_wexler_raz],
    "frames": [check_frames],
    "sampling": [check_sampling],
    "interpolation": [check_interpolation],
    "super": [check_super],
}


def run_suite(name: str) -> dict:
    """Run a suite ('all' runs every suite) and return a JSON-ready report."""
    if name == "all":
        names = list(SUITES)
    elif name in SUITES:
        names = [name]
    else:
        raise KeyError(name)
    checks = []
    for n in names:
        for fn in SUITES[n]:
            res = fn()
            for c in res:
                c.name = f"{n}.{c.name}"
            checks.extend(res)
    return {"suite": name, "passed": all(c.passed for c in checks),
            "checks": [c.to_dict() for c in checks]}

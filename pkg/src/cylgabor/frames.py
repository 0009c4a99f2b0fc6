"""Gabor frames on L^2_nu(0,1) for the lattice {0} x beta Z of the cylinder.

The frame elements are Sigma_nu(M_{beta n} g); their analysis coefficients are
V_g f(0, beta n) = sum_k a_k F(conj g)(beta n - nu - k), so the analysis
operator is the matrix M_{n,k} = F(conj g)(beta n - nu - k) and the frame
operator is M^* M on coefficient space. On L^2(R) the same frame operator is
that of the system {M_{beta n} T_k g}, which is what the dual-window
construction inverts.
"""

from __future__ import annotations

import json
import math
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Optional, Sequence

import numpy as np
from scipy.interpolate import make_interp_spline

from .errors import (ConvergenceError, DomainError, NotAFrameError, RequiresDecayError)
from .qp_signal import Envelope, QPSignal, Window, signal_from_dense
from .special_fn import gauss_legendre_panels

TAIL_TOL = 1e-12
QUAD_TOL = 1e-10


@dataclass(frozen=True)
class FrameSpec:
    """Window, lattice parameter beta, character nu, truncation K and tail tolerance."""

    window: Window
    beta: float
    nu: float = 0.0
    K: int = 32
    tol: float = TAIL_TOL

    def __post_init__(self):
        if not self.beta > 0:
            raise DomainError("beta must be positive")
        if int(self.K) < 1:
            raise DomainError("K must be at least 1")
        if not self.tol > 0:
            raise DomainError("tol must be positive")

    def with_K(self, K: int) -> "FrameSpec":
        return FrameSpec(self.window, self.beta, self.nu, int(K), self.tol)


@dataclass(frozen=True)
class FrameBounds:
    """Extremal eigenvalues of the truncated frame operator.

    convergence is |A_K - A_{K/2}| / A_K (inf when A_K = 0).
    """

    A: float
    B: float
    K_used: int
    N_rows_used: int
    convergence: float

    @property
    def ratio(self) -> float:
        return self.A / self.B if self.B > 0 else 0.0

    def to_dict(self) -> dict:
        return {"A": self.A, "B": self.B, "K": self.K_used, "N": self.N_rows_used,
                "convergence": self.convergence}


def _row_count(spec: FrameSpec) -> int:
    try:
        R = spec.window.freq_radius(spec.tol)
    except RequiresDecayError:
        raise
    return int(math.ceil((spec.K + abs(spec.nu) + R) / spec.beta)) + 1


def analysis_matrix(spec: FrameSpec) -> np.ndarray:
    """M_{n,k} = F(conj g)(beta n - nu - k), rows n = -N..N, columns k = -K..K.

    N is chosen from the frequency decay envelope so that every neglected
    entry of every column is below ``spec.tol``.
    """
    N = _row_count(spec)
    n = np.arange(-N, N + 1)
    k = np.arange(-spec.K, spec.K + 1)
    return spec.window.ft_conj_eval(spec.beta * n[:, None] - spec.nu - k[None, :]).astype(complex)


def _extremes(M: np.ndarray):
    ev = np.linalg.eigvalsh(M.conj().T @ M)
    return float(max(ev[0], 0.0)), float(ev[-1])


def frame_bounds(spec: FrameSpec) -> FrameBounds:
    """Truncated frame bounds with a K versus K/2 convergence diagnostic."""
    if spec.K > 512:
        raise DomainError("frame_bounds supports K <= 512")
    M = analysis_matrix(spec)
    A, B = _extremes(M)
    if spec.K >= 2:
        A_half, _ = _extremes(analysis_matrix(spec.with_K(spec.K // 2)))
        conv = abs(A - A_half) / A if A > 0 else math.inf
    else:
        conv = math.inf
    return FrameBounds(A, B, spec.K, M.shape[0] // 2, conv)


def _coeffs(spec: FrameSpec, f: QPSignal) -> np.ndarray:
    if f.nu != spec.nu:
        raise DomainError(f"nu mismatch: signal {f.nu}, frame {spec.nu}")
    return f.dense(spec.K)


def frame_apply(spec: FrameSpec, f: QPSignal) -> QPSignal:
    """S f with coefficient vector M^* M a on k = -K..K."""
    a = _coeffs(spec, f)
    M = analysis_matrix(spec)
    return signal_from_dense(spec.nu, M.conj().T @ (M @ a), spec.K)


def analyze(spec: FrameSpec, f: QPSignal) -> np.ndarray:
    """Samples V_g f(0, beta n) for n = -N..N."""
    return analysis_matrix(spec) @ _coeffs(spec, f)


# ---------------------------------------------- correlation / Janssen data

def _time_radius(w: Window, tol: float) -> float:
    return w.time_radius(tol)


def correlation_fn(g: Window, gamma: Window, beta: float, n: int, x, tol: float = TAIL_TOL):
    """G_n(x) = sum_k conj(g(x - n/beta - k)) gamma(x - k); 1-periodic in x."""
    Rg = _time_radius(g, tol)
    Rc = _time_radius(gamma, tol)
    x = np.asarray(x, dtype=float)
    s = n / beta
    xmin = float(np.min(x)) if x.size else 0.0
    xmax = float(np.max(x)) if x.size else 0.0
    lo = math.floor(min(xmin - Rc, xmin - s - Rg)) - 1
    hi = math.ceil(max(xmax + Rc, xmax - s + Rg)) + 1
    k = np.arange(lo, hi + 1)
    u = x[..., None] - k
    out = (np.conj(g.time_eval(u - s)) * gamma.time_eval(u)).sum(-1)
    return out if out.ndim else complex(out)


def _quad(fn, a: float, b: float, tol: float):
    """Gauss-Legendre panels with a width-halving check."""
    if b <= a:
        return 0j
    width = 0.5
    prev = None
    for _ in range(6):
        t, w = gauss_legendre_panels(a, b, width=width, order=20)
        val = complex(np.sum(w * fn(t)))
        if prev is not None and abs(val - prev) <= tol:
            return val
        prev = val
        width /= 2
    raise ConvergenceError("Gauss-Legendre panels did not converge", tail=abs(val - prev))


def janssen_coeffs(g: Window, gamma: Window, beta: float, k: int, n: int,
                   tol: float = QUAD_TOL) -> complex:
    """<gamma, M_k T_{n/beta} g> = int gamma(t) conj(g(t - n/beta)) e^{-2 pi i k t} dt."""
    s = n / beta
    Rg = _time_radius(g, tol * 1e-3)
    Rc = _time_radius(gamma, tol * 1e-3)
    a, b = max(-Rc, s - Rg), min(Rc, s + Rg)
    return _quad(lambda t: gamma.time_eval(t) * np.conj(g.time_eval(t - s))
                 * np.exp(-2j * np.pi * k * t), a, b, tol)


def janssen_table(g: Window, gamma: Window, beta: float, k_range: Sequence[int],
                  n_range: Sequence[int], tol: float = QUAD_TOL) -> np.ndarray:
    """Matrix J[i, j] = <gamma, M_{k_i} T_{n_j/beta} g>, one quadrature per n."""
    k_arr = np.asarray(list(k_range))
    out = np.zeros((k_arr.size, len(n_range)), dtype=complex)
    Rg = _time_radius(g, tol * 1e-3)
    Rc = _time_radius(gamma, tol * 1e-3)
    for j, n in enumerate(n_range):
        s = n / beta
        a, b = max(-Rc, s - Rg), min(Rc, s + Rg)
        if b <= a:
            continue
        fn = (lambda t, s=s: (gamma.time_eval(t) * np.conj(g.time_eval(t - s)))[None, :]
              * np.exp(-2j * np.pi * k_arr[:, None] * t[None, :]))
        width, prev = 0.5, None
        for _ in range(6):
            t, w = gauss_legendre_panels(a, b, width=width, order=20)
            val = (fn(t) * w).sum(-1)
            if prev is not None and np.max(np.abs(val - prev)) <= tol:
                break
            prev, width = val, width / 2
        else:
            raise ConvergenceError("Janssen quadrature did not converge")
        out[:, j] = val
    return out


def _n_tail(g: Window, gamma: Window, beta: float, tol: float) -> int:
    return int(math.ceil(beta * (_time_radius(g, tol) + _time_radius(gamma, tol)))) + 1


def wexler_raz_residual(g: Window, gamma: Window, beta: float, k_range=range(-3, 4),
                        l_range=range(-3, 4), n_tail: Optional[int] = None,
                        tol: float = QUAD_TOL) -> float:
    """max_{k,l} |beta^{-1} sum_{|n|<=n_tail} <gamma, M_k T_{n/beta} g> e^{2 pi i n l/beta} - delta_{k0}|.

    With n_tail=None the range is certified by the time decay envelopes: all
    omitted n have disjoint effective supports.
    """
    if n_tail is None:
        n_tail = _n_tail(g, gamma, beta, tol * 1e-3)
    ks = list(k_range)
    ls = np.asarray(list(l_range), dtype=float)
    ns = np.arange(-n_tail, n_tail + 1)
    J = janssen_table(g, gamma, beta, ks, ns, tol)
    phase = np.exp(2j * np.pi * ns[:, None] * ls[None, :] / beta)
    S = (J @ phase) / beta
    delta = np.array([1.0 if k == 0 else 0.0 for k in ks])[:, None]
    return float(np.max(np.abs(S - delta)))


def _coeff_operator(spec: FrameSpec, f: QPSignal, coeff_fn, n_tail: int) -> QPSignal:
    """(S f)_j = beta^{-1} sum_n sum_k c_{n, j-k} e^{-2 pi i n (nu+k)/beta} a_k."""
    a = _coeffs(spec, f)
    K = spec.K
    ks = np.arange(-K, K + 1)
    out = np.zeros(2 * K + 1, dtype=complex)
    m_range = np.arange(-2 * K, 2 * K + 1)
    for n in range(-n_tail, n_tail + 1):
        c = coeff_fn(n, m_range)
        if not np.any(c):
            continue
        b = a * np.exp(-2j * np.pi * n * (spec.nu + ks) / spec.beta)
        C = c[(ks[:, None] - ks[None, :]) + 2 * K]
        out += C @ b
    return signal_from_dense(spec.nu, out / spec.beta, K)


def walnut_apply(spec: FrameSpec, f: QPSignal, gamma: Optional[Window] = None,
                 n_grid: int = 256) -> QPSignal:
    """S f = beta^{-1} sum_n G_n(x) f(x - n/beta) with Fourier coefficients of
    the correlation functions G_n taken by the trapezoid rule on [0, 1)."""
    g = spec.window
    gamma = g if gamma is None else gamma
    x = np.arange(n_grid) / n_grid
    n_tail = _n_tail(g, gamma, spec.beta, spec.tol)

    def coeff(n, m):
        G = correlation_fn(g, gamma, spec.beta, n, x, spec.tol)
        F = np.fft.fft(G) / n_grid
        return F[np.mod(m, n_grid)]

    return _coeff_operator(spec, f, coeff, n_tail)


def janssen_apply(spec: FrameSpec, f: QPSignal, gamma: Optional[Window] = None) -> QPSignal:
    """S f = beta^{-1} sum_{k,n} <gamma, M_k T_{n/beta} g> M_k T_{n/beta} f restricted
    to coefficient space, with the Janssen coefficients from quadrature."""
    g = spec.window
    gamma = g if gamma is None else gamma
    n_tail = _n_tail(g, gamma, spec.beta, spec.tol)

    def coeff(n, m):
        return janssen_table(g, gamma, spec.beta, m, [n])[:, 0]

    return _coeff_operator(spec, f, coeff, n_tail)


# ------------------------------------------------------------ dual window

def as_fraction(beta, max_den: int = 1000) -> Fraction:
    """Rational value of beta from a Fraction, 'p/q' string or float."""
    if isinstance(beta, Fraction):
        fr = beta
    elif isinstance(beta, str):
        fr = Fraction(beta.strip())
    else:
        fr = Fraction(float(beta)).limit_denominator(max_den)
        if abs(float(fr) - float(beta)) > 1e-12:
            raise DomainError(f"beta={beta} is not a rational with denominator <= {max_den}")
    if fr <= 0:
        raise DomainError("beta must be positive")
    return fr


@dataclass(frozen=True)
class SampledWindow(Window):
    """Window given by samples on a uniform grid plus a quintic-spline interpolant."""

    grid: np.ndarray = field(default=None, compare=False)
    values: np.ndarray = field(default=None, compare=False)
    sigma_min: float = math.nan


def _fit_envelope(t, vals, power: float) -> Envelope:
    t = np.abs(np.asarray(t, dtype=float))
    vals = np.abs(np.asarray(vals))
    mask = vals > 1e-300
    if not np.any(mask):
        return Envelope(1e-300, 1.0, power)
    # rate from a least-squares fit of log|v| against |t|^p on the tail, then
    # amplitude raised so the envelope dominates every sample
    tp = t[mask] ** power
    lv = np.log(vals[mask])
    tail = tp > 0.25 * tp.max()
    if tail.sum() >= 4:
        slope = np.polyfit(tp[tail], lv[tail], 1)[0]
    else:
        slope = np.polyfit(tp, lv, 1)[0]
    rate = max(-0.9 * slope, 1e-3)
    amp = float(np.max(vals * np.exp(rate * t ** power)))
    return Envelope(1.5 * amp, rate, power)


def _zak_fibers(g: Window, p: int, q: int, s: int, half_width: float, tol: float):
    """Solve the canonical-dual equations on every Zak fiber.

    Returns the grid t, the dual samples on t, the minimal singular value
    sqrt(min eig A(theta)) over all fibers and the largest eigenvalue.
    """
    beta = p / q
    Rg = g.time_radius(tol)
    n_max = int(math.ceil(2 * Rg * beta)) + 1
    L = 4
    while L * q < 4 * half_width:
        L *= 2
    h = 1.0 / (p * s)
    t_all = []
    v_all = []
    sig = math.inf
    lam_max = 0.0
    theta = np.arange(L) / L
    for i0 in range(s):
        x0 = i0 * h
        for c in range(q):
            # index ell = rho + p mu, mu = -L/2 .. L/2-1, position x0 + (c + q ell)/p
            mu = np.arange(-L // 2, L // 2)
            A = np.zeros((L, p, p), dtype=complex)
            for rho in range(p):
                xr = x0 + (c + q * rho) / p
                for n in range(-n_max, n_max + 1):
                    W = complex(correlation_fn(g, g, beta, n, xr, tol)) / beta
                    if W == 0:
                        continue
                    rp = (rho - n) % p
                    d = (rho - n - rp) // p
                    A[:, rho, rp] += W * np.exp(2j * np.pi * d * theta)
            ell = np.arange(p)[:, None] + p * mu[None, :]
            pos = x0 + (c + q * ell) / p
            gs = g.time_eval(pos)
            # polyphase transform V_rho(theta) = sum_mu v_{rho + p mu} e^{-2 pi i mu theta}
            Gt = np.fft.fft(np.fft.ifftshift(gs, axes=1), axis=1)
            eig = np.linalg.eigvalsh(0.5 * (A + np.conj(np.transpose(A, (0, 2, 1)))))
            sig = min(sig, float(np.sqrt(max(eig.min(), 0.0))))
            lam_max = max(lam_max, float(eig.max()))
            if eig.min() <= 0:
                continue
            Gam = np.linalg.solve(A, Gt.T[..., None])[..., 0].T
            gam = np.fft.fftshift(np.fft.ifft(Gam, axis=1), axes=1)
            t_all.append(pos.ravel())
            v_all.append(gam.ravel())
    return t_all, v_all, sig, lam_max


def dual_window(g: Window, beta, grid_step: float = 1.0 / 64, half_width: float = 6.0,
                tol: float = 1e-10) -> SampledWindow:
    """Canonical dual S^{-1} g of the system {M_{beta n} T_k g} on L^2(R), beta = p/q.

    The frame operator is block-diagonalised by the Zak-type decomposition
    x = x0 + (c + q ell)/p; on each fiber the p-periodic Walnut coefficients
    give a p x p polyphase symbol A(theta) which is inverted pointwise.

    Raises
    ------
    NotAFrameError
        If the smallest fiber singular value is below ``tol`` or below the
        round-off floor 64 sqrt(eps lambda_max) of the eigenvalue solver.
    """
    fr = as_fraction(beta)
    p, q = fr.numerator, fr.denominator
    s = max(1, int(math.ceil(1.0 / (p * grid_step))))
    t_all, v_all, sig, lam_max = _zak_fibers(g, p, q, s, half_width, tol * 1e-2)
    floor = max(tol, 64 * math.sqrt(np.finfo(float).eps * lam_max))
    if not sig > floor or not t_all:
        raise NotAFrameError(f"smallest Zak-domain singular value {sig:.3e} below {floor:.1e}",
                             sigma_min=sig)
    t = np.concatenate(t_all)
    v = np.concatenate(v_all)
    order = np.argsort(t)
    t, v = t[order], v[order]
    keep = np.abs(t) <= half_width + 1e-12
    t, v = t[keep], v[keep]
    if np.all(np.abs(v.imag) <= 1e-14 * np.max(np.abs(v))) and g.is_real:
        v = v.real.astype(complex)
    spline = make_interp_spline(t, v, k=5)
    lo, hi = t[0], t[-1]
    step = float(np.median(np.diff(t)))

    def time_eval(x, spline=spline, lo=lo, hi=hi):
        x = np.asarray(x, dtype=float)
        inside = (x >= lo) & (x <= hi)
        out = np.zeros(x.shape, dtype=complex)
        if np.any(inside):
            out[inside] = spline(x[inside])
        return out if out.ndim else complex(out)

    def ft_conj(xi, t=t, v=v, step=step):
        xi = np.asarray(xi, dtype=float)
        out = (np.conj(v) * np.exp(-2j * np.pi * xi[..., None] * t)).sum(-1) * step
        return out if out.ndim else complex(out)

    env = _fit_envelope(t, v, 1.0)
    xs = np.linspace(-8, 8, 801)
    fenv = _fit_envelope(xs, ft_conj(xs), 2.0)
    return SampledWindow("sampled", time_eval, ft_conj, env, fenv, support=float(hi),
                         label=f"dual({g.label},{fr})", meta={"beta": fr, "grid_step": step},
                         grid=t, values=v, sigma_min=sig)


def reconstruct(spec: FrameSpec, samples, gamma: Window) -> QPSignal:
    """Synthesis sum_n c_n Sigma_nu(M_{beta n} gamma) in coefficient space:
    out_j = sum_n c_n conj(F(conj gamma)(beta n - nu - j)).

    ``samples`` is either an array for n = -N..N (N = len//2) or a dict {n: c_n}.
    """
    if isinstance(samples, dict):
        ns = np.asarray(sorted(samples), dtype=int)
        c = np.asarray([samples[n] for n in ns], dtype=complex)
    else:
        c = np.asarray(samples, dtype=complex)
        N = c.size // 2
        ns = np.arange(-N, N + 1)
        if ns.size != c.size:
            raise DomainError("sample array must have odd length 2N+1")
    j = np.arange(-spec.K, spec.K + 1)
    if gamma.ft_conj_eval is None:
        raise RequiresDecayError("dual window has no frequency evaluator")
    if not np.any(c):
        return signal_from_dense(spec.nu, np.zeros(j.size), spec.K)
    Mg = gamma.ft_conj_eval(spec.beta * ns[:, None] - spec.nu - j[None, :])
    return signal_from_dense(spec.nu, np.conj(Mg).T @ c, spec.K)


# ---------------------------------------------------------- predicates

@dataclass(frozen=True)
class Verdict:
    verdict: str
    certificate: str

    def to_dict(self):
        return {"verdict": self.verdict, "certificate": self.certificate}


def _parse_kind(window_kind):
    if isinstance(window_kind, Window):
        if window_kind.kind == "hermite":
            return "hermite", window_kind.order
        return window_kind.kind, None
    if isinstance(window_kind, tuple):
        return window_kind[0], window_kind[1]
    kind = str(window_kind)
    if kind.startswith("hermite:"):
        return "hermite", int(kind.split(":", 1)[1])
    if kind.startswith("tp"):
        return "totally_positive", None
    return kind, None


def _is_rational(beta) -> bool:
    try:
        as_fraction(beta)
        return True
    except DomainError:
        return False


def sufficient_frame_predicate(window_kind, beta) -> Verdict:
    """Known frame criteria for the lattice {0} x beta Z.

    gaussian: frame iff beta < 1 ("Z is sampling for").
    hermite:r: frame if beta < 1/(r+1) ("If beta < 1/(r+1), then"), unknown otherwise.
    totally_positive with rational beta: frame if beta < 1, unknown otherwise.
    """
    kind, r = _parse_kind(window_kind)
    b = float(Fraction(beta)) if isinstance(beta, str) else float(beta)
    if kind == "gaussian" or (kind == "hermite" and r == 0):
        cert = "Gaussian lattice criterion, 'Z is sampling for' (iff 1/beta > 1)"
        return Verdict("frame" if b < 1 else "not_frame", cert)
    if kind == "hermite":
        cert = f"Hermite sufficient condition, 'If beta < 1/(r+1), then' with r={r}"
        return Verdict("frame" if b < 1.0 / (r + 1) else "unknown", cert)
    if kind == "totally_positive":
        cert = "totally positive windows, 'assume that beta is rational' with beta < 1"
        if _is_rational(beta) and b < 1:
            return Verdict("frame", cert)
        return Verdict("unknown", cert)
    return Verdict("unknown", "no criterion for this window class")


def bounds_report(spec: FrameSpec, bounds: FrameBounds, verdict: Verdict,
                  ratio_floor: float = 1e-6) -> dict:
    """JSON-ready report; flags disagreement between predicate and estimate."""
    rep = bounds.to_dict()
    rep["verdict_predicate"] = verdict.verdict
    rep["certificate"] = verdict.certificate
    flag = None
    if verdict.verdict == "frame" and bounds.ratio <= ratio_floor:
        flag = "predicate says frame but A/B is below the floor"
    if verdict.verdict == "not_frame" and bounds.ratio > ratio_floor:
        flag = "predicate says not_frame but A/B is above the floor"
    rep["disagreement"] = flag
    return rep


__all__ = ["FrameSpec", "FrameBounds", "analysis_matrix", "frame_bounds", "frame_apply",
           "analyze", "correlation_fn", "janssen_coeffs", "janssen_table",
           "wexler_raz_residual", "walnut_apply", "janssen_apply", "dual_window",
           "SampledWindow", "reconstruct", "sufficient_frame_predicate", "Verdict",
           "bounds_report", "as_fraction"]

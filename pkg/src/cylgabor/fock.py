"""Bargmann-type transforms, Fock-space kernels on C/Z, Weyl translations,
complex periodization, holomorphic derivatives and the raising operator.

Normalisation table (library convention on the left):

=============================================  ==================================
bargmann_eval(e_{k,nu}, z)                      2^{1/4} phi_{k,nu}(z)
orthonormal basis of F_nu                       2^{1/4} phi_{k,nu}
fock_kernel_analytic(nu, z, w)                  sqrt2 e^{pi(z^2+conj(w)^2)/2} theta-sum
kernel_gaussian_closed(nu, z, w)                e^{i pi(x xi - x' xi')} e^{-pi(|z|^2+|w|^2)/2}
                                                * fock_kernel_analytic(-nu, z, w)
fock_kernel_true(r, nu, z, w)                   M(z) conj(M(w)) gabor_kernel(h_r, nu, conj z, conj w)
true_bargmann_eval(r, f, z)                     (pi^r r!)^{-1/2} (d_z - pi conj z)^r bargmann_eval(f, z)
=============================================  ==================================

with phi_{k,nu}(z) = e^{pi z^2/2 + 2 pi i z (nu+k) - pi (nu+k)^2}.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Callable, Optional

import numpy as np

from .errors import ConvergenceError, DomainError, InvalidTranslationError, UnsupportedOrderError
from .qp_signal import Envelope, QPSignal, gaussian_window, hermite_window
from .special_fn import DEFAULT_POLICY, TruncationPolicy, hermite_poly, laguerre
from .stft import _laguerre_gauss_radius, _poincare_sum, stft_xy

_G0 = None


def _gauss():
    global _G0
    if _G0 is None:
        _G0 = gaussian_window()
    return _G0


_HERMITE_CACHE: dict = {}


def _hermite(r):
    if r == 0:
        return _gauss()
    if r not in _HERMITE_CACHE:
        _HERMITE_CACHE[r] = hermite_window(r)
    return _HERMITE_CACHE[r]


def multiplier(z):
    """M(z) = e^{-i pi x xi + pi |z|^2 / 2}."""
    z = np.asarray(z, dtype=complex)
    out = np.exp(-1j * np.pi * z.real * z.imag + np.pi * np.abs(z) ** 2 / 2)
    return out if out.ndim else complex(out)


def phi_basis(k: int, nu: float, z):
    """phi_{k,nu}(z) = e^{pi z^2/2 + 2 pi i z (nu+k) - pi (nu+k)^2}."""
    z = np.asarray(z, dtype=complex)
    lam = nu + k
    out = np.exp(np.pi * z * z / 2 + 2j * np.pi * z * lam - np.pi * lam * lam)
    return out if out.ndim else complex(out)


def true_bargmann_eval(r: int, f: QPSignal, z):
    """B^{(r)} f(z) = M(z) V_{h_r} f(x, -xi); r = 0 is the Bargmann transform.

    The map is unitary from L^2_nu(0,1) onto its image in L^2 of the strip
    with weight e^{-pi |z|^2}. Each term is evaluated with the multiplier and
    the Gaussian factor of h_r merged into one exponent, which keeps large |z|
    free of overflow.
    """
    if r < 0 or r > 16:
        raise UnsupportedOrderError(f"order {r} outside 0..16")
    z = np.asarray(z, dtype=complex)
    if f.ks.size == 0:
        out = np.zeros(z.shape, dtype=complex)
        return out if out.ndim else 0j
    x = z.real[..., None]
    xi = z.imag[..., None]
    lam = f.nu + f.ks
    t = -xi - lam
    expo = (-1j * np.pi * x * xi + np.pi * (x * x + xi * xi) / 2
            + 2j * np.pi * x * (lam + xi) - np.pi * t * t)
    poly = (-1j) ** r * hermite_poly(int(r), math.sqrt(2 * math.pi) * t)
    out = (f.a * poly * np.exp(expo)).sum(-1)
    return out if out.ndim else complex(out)


def bargmann_eval(f: QPSignal, z):
    """Bargmann transform B f(z) = M(z) V_{h_0} f(x, -xi).

    For f in L^2_nu(0,1) this is entire and satisfies
    B f(z + 1) = e^{2 pi i nu} e^{pi/2 + pi z} B f(z).
    """
    return true_bargmann_eval(0, f, z)


def bargmann_integral(f_eval: Callable, z, half_width: float = 8.0, order: int = 40):
    """Classical integral form e^{-pi z^2/2} int f(t) e^{2 pi t z - pi t^2} dt,
    by Gauss-Legendre panels on [-half_width, half_width]; here f is any
    function on R (e.g. a quasi-periodic signal restricted to the window).

    Relation: bargmann_eval = 2^{1/4} * bargmann_integral.
    """
    from .special_fn import gauss_legendre_panels
    t, w = gauss_legendre_panels(-half_width, half_width, width=0.5, order=order)
    z = np.asarray(z, dtype=complex)
    ft = f_eval(t) * w
    zz = z[..., None]
    out = (ft * np.exp(2 * np.pi * t * zz - np.pi * t * t - np.pi * zz * zz / 2)).sum(-1)
    return out if out.ndim else complex(out)


# ------------------------------------------------------------- HoloFn

@dataclass(frozen=True)
class QuasiPeriod:
    """Automorphy declaration.

    kind 'cylinder': F(z+1) = e^{2 pi i nu} e^{pi/2 + pi z} F(z), character = nu.
    kind 'dual': F(z + i/beta) = e^{2 pi i l/beta} e^{pi/(2 beta^2) - i pi z/beta} F(z),
    character = l.
    """

    kind: str
    character: float
    beta: Optional[float] = None

    def __post_init__(self):
        if self.kind not in ("cylinder", "dual"):
            raise DomainError(f"unknown quasi-period kind {self.kind!r}")
        if self.kind == "dual" and not (self.beta and self.beta > 0):
            raise DomainError("dual quasi-periodicity needs beta > 0")


@dataclass(frozen=True)
class GrowthEnvelope:
    """Growth bound |F(x + iy)| <= amplitude exp(rate_x x^2 + rate_y y^2 + lin_y |y|).

    An isotropic :class:`Envelope` with rate c corresponds to rate_x = rate_y = c.
    """

    amplitude: float
    rate_x: float
    rate_y: float
    lin_y: float = 0.0

    @classmethod
    def coerce(cls, env) -> "GrowthEnvelope":
        if isinstance(env, cls):
            return env
        if isinstance(env, Envelope) and env.power == 2.0:
            return cls(env.amplitude, env.rate, env.rate)
        raise DomainError("growth envelope must be Gaussian (power 2)")

    def log_bound(self, z):
        z = np.asarray(z, dtype=complex)
        return (math.log(self.amplitude) + self.rate_x * z.real ** 2
                + self.rate_y * z.imag ** 2 + self.lin_y * np.abs(z.imag))


@dataclass(frozen=True)
class HoloFn:
    """Entire function with optional automorphy and growth declarations.

    Parameters
    ----------
    eval : callable
        Vectorised z -> F(z).
    quasi_period : QuasiPeriod, optional
    envelope : GrowthEnvelope or Envelope, optional
        Growth bound; an isotropic Envelope means |F(z)| <= amplitude exp(rate |z|^2).
    """

    eval: Callable
    quasi_period: Optional[QuasiPeriod] = None
    envelope: Optional[Envelope] = None
    check: bool = True

    def __post_init__(self):
        if not self.check:
            return
        probes = np.array([0.1 + 0.2j, 0.37 - 0.8j, -0.6 + 1.1j, 0.9 + 0.05j, 0.25 - 1.7j])
        if self.quasi_period is not None:
            res, scale = automorphy_residual(self, probes, 1)
            if np.any(res > 1e-8 * np.maximum(scale, 1.0)):
                raise DomainError(
                    f"declared quasi-periodicity violated: residual {float(np.max(res)):.3e}")
        if self.envelope is not None:
            object.__setattr__(self, "envelope", GrowthEnvelope.coerce(self.envelope))
            ring = np.concatenate([rad * np.exp(2j * np.pi * np.arange(32) / 32)
                                   for rad in (0.5, 1.0, 2.0, 3.0)])
            vals = np.abs(self.eval(ring))
            bound = np.exp(self.envelope.log_bound(ring))
            if np.any(vals > bound * (1 + 1e-9)):
                raise DomainError("declared growth envelope violated on probe ring")

    def __call__(self, z):
        return self.eval(np.asarray(z, dtype=complex))


def automorphy_residual(F: HoloFn, z, n: int = 1):
    """Residual of the declared functional equation for the shift by n periods.

    Returns
    -------
    residual, scale : ndarray
        |F(z + n p) - j(n, z) F(z)| and |F(z + n p)| at each z.
    """
    q = F.quasi_period
    if q is None:
        raise DomainError("function declares no quasi-periodicity")
    z = np.asarray(z, dtype=complex)
    if q.kind == "cylinder":
        lhs = F.eval(z + n)
        fac = np.exp(2j * np.pi * n * q.character + np.pi * n * n / 2 + np.pi * z * n)
    else:
        gam = 1j * n / q.beta
        lhs = F.eval(z + gam)
        fac = np.exp(2j * np.pi * n * q.character / q.beta
                     + np.pi * abs(gam) ** 2 / 2 + np.pi * z * np.conj(gam))
    return np.abs(lhs - fac * F.eval(z)), np.abs(lhs)


def bargmann_envelope(f: QPSignal) -> GrowthEnvelope:
    """|B f(z)| <= 2^{1/4} sum|a_k| e^{pi x^2/2 - pi y^2/2 + 2 pi max|nu+k| |y|}."""
    if f.ks.size == 0:
        return GrowthEnvelope(1e-300, 0.0, 0.0)
    C = float(np.max(np.abs(f.nu + f.ks)))
    return GrowthEnvelope(2.0 ** 0.25 * float(np.sum(np.abs(f.a))) * (1 + 1e-12),
                          math.pi / 2, -math.pi / 2, 2 * math.pi * C)


def bargmann_holofn(f: QPSignal, r: int = 0) -> HoloFn:
    """Wrap B f (r = 0) as an automorphic entire function with its growth
    envelope; r > 0 gives the true polyanalytic transform without declarations."""
    if r == 0:
        return HoloFn(lambda z: bargmann_eval(f, z), QuasiPeriod("cylinder", f.nu),
                      bargmann_envelope(f))
    return HoloFn(lambda z: true_bargmann_eval(r, f, z), None, check=False)


def weyl_translate(F: HoloFn, w: complex, z):
    """tau(w) F(z) = e^{pi z conj(w) - pi |w|^2 / 2} F(z - w).

    Raises
    ------
    InvalidTranslationError
        If F is cylinder-quasi-periodic and Im w is not an integer.
    """
    w = complex(w)
    q = F.quasi_period
    if q is not None and q.kind == "cylinder" and abs(w.imag - round(w.imag)) > 1e-12:
        raise InvalidTranslationError(
            f"Im w = {w.imag} must be an integer for cylinder-periodic functions")
    z = np.asarray(z, dtype=complex)
    out = np.exp(np.pi * z * np.conj(w) - np.pi * abs(w) ** 2 / 2) * F.eval(z - w)
    return out if np.ndim(out) else complex(out)


# ------------------------------------------------------------- kernels

def fock_kernel_theta(nu: float, z, w, pol: TruncationPolicy = DEFAULT_POLICY):
    """Theta form sqrt2 e^{pi(z^2 + conj(w)^2)/2} sum_k e^{-2 pi (k+nu)^2 + 2 pi i (k+nu)(z - conj w)}.

    This is sum_k psi_k(z) conj(psi_k(w)) over the orthonormal basis
    psi_k = 2^{1/4} phi_{k,nu}; the series has modulus 2i in theta notation.
    """
    z = np.asarray(z, dtype=complex)
    w = np.asarray(w, dtype=complex)
    z, w = np.broadcast_arrays(z, w)
    u = z - np.conj(w)
    c = -u.imag / 2 - nu
    D = math.sqrt(math.log(1.0 / pol.abs_tol) / (2 * math.pi)) + 1
    lo = math.floor(float(np.min(c)) - D)
    hi = math.ceil(float(np.max(c)) + D)
    if hi - lo + 1 > pol.max_terms:
        raise ConvergenceError(f"theta form needs {hi - lo + 1} terms > max_terms")
    k = np.arange(lo, hi + 1) + nu
    zz, ww, uu = z[..., None], np.conj(w)[..., None], u[..., None]
    expo = np.pi * (zz * zz + ww * ww) / 2 - 2 * np.pi * k * k + 2j * np.pi * k * uu
    out = math.sqrt(2.0) * np.exp(expo).sum(-1)
    return out if out.ndim else complex(out)


def fock_kernel_analytic(nu: float, z, w, pol: TruncationPolicy = DEFAULT_POLICY,
                         cross_check: bool = False):
    """Reproducing kernel of the analytic Fock space F_nu on the strip:
    e^{pi z conj w} sum_k e^{2 pi i k nu} e^{pi k (z - conj w) - pi k^2/2}.

    With ``cross_check`` the theta form is evaluated too and a
    ConvergenceError is raised if the two disagree beyond 1e-9 (relative).
    """
    z = np.asarray(z, dtype=complex)
    w = np.asarray(w, dtype=complex)
    out = _poincare_sum(z, w, 1.0, nu, 0, pol, np.zeros(np.broadcast(z, w).shape))
    if cross_check:
        th = fock_kernel_theta(nu, z, w, pol)
        if np.any(np.abs(out - th) > 1e-9 * np.maximum(np.abs(out), 1.0)):
            raise ConvergenceError("Poincare and theta forms disagree")
    return out if out.ndim else complex(out)


def fock_kernel_true(r: int, nu: float, z, w, pol: TruncationPolicy = DEFAULT_POLICY):
    """Kernel of the true polyanalytic space of order r:
    e^{pi z conj w} sum_k e^{2 pi i k nu} e^{pi k (z - conj w) - pi k^2/2} L_r(pi |z-w-k|^2).
    """
    z = np.asarray(z, dtype=complex)
    w = np.asarray(w, dtype=complex)
    out = _poincare_sum(z, w, 1.0, nu, int(r), pol, np.zeros(np.broadcast(z, w).shape))
    return out if out.ndim else complex(out)


def fock_kernel_poly(N: int, nu: float, z, w, pol: TruncationPolicy = DEFAULT_POLICY):
    """Kernel of the polyanalytic space of order N (Laguerre L^1_{N-1} form)."""
    if N < 1:
        raise DomainError("N must be positive")
    z = np.asarray(z, dtype=complex)
    w = np.asarray(w, dtype=complex)
    z, w = np.broadcast_arrays(z, w)
    R = _laguerre_gauss_radius(N, pol.abs_tol)
    dx = z.real - w.real
    lo = math.floor(float(np.min(dx)) - R) - 1
    hi = math.ceil(float(np.max(dx)) + R) + 1
    if hi - lo + 1 > pol.max_terms:
        raise DomainError(f"kernel sum needs {hi - lo + 1} terms > max_terms")
    k = np.arange(lo, hi + 1)
    zz, ww = z[..., None], w[..., None]
    expo = (np.pi * zz * np.conj(ww) + 2j * np.pi * k * nu
            + np.pi * k * (zz - np.conj(ww)) - np.pi * k * k / 2)
    out = (np.exp(expo) * laguerre(N - 1, 1.0, np.pi * np.abs(zz - ww - k) ** 2)).sum(-1)
    return out if out.ndim else complex(out)


def fock_kernel_poly_sum(N: int, nu: float, z, w, pol: TruncationPolicy = DEFAULT_POLICY):
    """Sum of the true polyanalytic kernels of orders 0..N-1."""
    return sum(fock_kernel_true(r, nu, z, w, pol) for r in range(N))


# ---------------------------------------------------------- derivatives

def _eval_on(F, pts):
    fn = F.eval if isinstance(F, HoloFn) else F
    try:
        vals = np.asarray(fn(pts), dtype=complex)
        if vals.shape == pts.shape:
            return vals
    except Exception:  # scalar-only callables
        pass
    return np.array([complex(fn(p)) for p in pts])


def taylor_coeffs(F, z: complex, order: int, radius: float = 0.5) -> np.ndarray:
    """Taylor coefficients c_0..c_order of F at z by the trapezoid rule on a circle."""
    n_nodes = 64 * (order + 1)
    omega = np.exp(2j * np.pi * np.arange(n_nodes) / n_nodes)
    vals = _eval_on(F, complex(z) + radius * omega)
    c = np.fft.fft(vals) / n_nodes
    return c[: order + 1] / radius ** np.arange(order + 1)


def cauchy_derivative(F, z: complex, order: int, radius: float = 0.5) -> complex:
    """order-th derivative of the holomorphic F at z via the Cauchy integral
    (64 (order+1) trapezoid nodes on the circle of the given radius)."""
    if order < 0 or order > 12:
        raise UnsupportedOrderError("derivative order must be in 0..12")
    c = taylor_coeffs(F, z, order, radius)
    return complex(c[order] * math.factorial(order))


def raising_apply(F, r: int, z: complex, radius: float = 0.5) -> complex:
    """(d_z - pi conj z)^r F at z for holomorphic F:
    sum_j C(r, j) (-pi conj z)^{r-j} F^{(j)}(z)."""
    if r < 0 or r > 8:
        raise UnsupportedOrderError("raising order must be in 0..8")
    z = complex(z)
    c = taylor_coeffs(F, z, r, radius)
    b = -np.pi * np.conj(z)
    return complex(sum(math.comb(r, j) * b ** (r - j) * c[j] * math.factorial(j)
                       for j in range(r + 1)))


def true_bargmann_from_raising(r: int, f: QPSignal, z: complex, radius: float = 0.5) -> complex:
    """(pi^r r!)^{-1/2} (d_z - pi conj z)^r B f(z); agrees with true_bargmann_eval."""
    F = HoloFn(lambda u: bargmann_eval(f, u), check=False)
    return raising_apply(F, r, z, radius) / math.sqrt(math.pi ** r * math.factorial(r))


# --------------------------------------------------------- periodization

def complex_periodize(F: HoloFn, beta: float, l: int, z,
                      pol: TruncationPolicy = DEFAULT_POLICY):
    """Periodization over Gamma' = i (1/beta) Z:
    sum_gamma conj(chi_l(gamma)) e^{-pi z conj(gamma) - pi |gamma|^2/2} F(z + gamma),
    chi_l(i n / beta) = e^{2 pi i n l / beta}.

    The output satisfies H(z + gamma) = chi_l(gamma) e^{pi |gamma|^2/2 + pi z conj gamma} H(z).
    F must declare a growth envelope with rate_y < pi/2; the retained n are
    those whose term bound exceeds abs_tol times the largest term bound.
    """
    env = F.envelope
    if env is None:
        raise ConvergenceError("complex periodization needs a declared growth envelope")
    env = GrowthEnvelope.coerce(env)
    if not env.rate_y < math.pi / 2:
        raise ConvergenceError(f"envelope rate {env.rate_y} >= pi/2 cannot certify convergence")
    z = np.asarray(z, dtype=complex)
    M = pol.max_terms // 2
    n_lo, n_hi = None, None
    for zz in np.atleast_1d(z).ravel():
        c = int(round(-beta * zz.imag))
        n = np.arange(c - M, c + M + 1)
        s_ = n / beta
        e = (-math.pi * zz.imag * s_ - math.pi * s_ * s_ / 2
             + env.log_bound(zz + 1j * s_))
        big = e >= e.max() + math.log(pol.abs_tol)
        if big[0] or big[-1]:
            raise ConvergenceError(f"periodization needs more than {pol.max_terms} terms")
        idx = np.nonzero(big)[0]
        lo, hi = int(n[idx[0]]), int(n[idx[-1]])
        n_lo = lo if n_lo is None else min(n_lo, lo)
        n_hi = hi if n_hi is None else max(n_hi, hi)
    out = np.zeros(z.shape, dtype=complex)
    for n in range(n_lo, n_hi + 1):
        gam = 1j * n / beta
        wt = np.exp(-2j * np.pi * n * l / beta - np.pi * z * np.conj(gam) - np.pi * abs(gam) ** 2 / 2)
        out = out + wt * F.eval(z + gam)
    return out if out.ndim else complex(out)


def complex_periodize_brute(F: HoloFn, beta: float, l: int, z, n_max: int = 40):
    """Same sum over |n| <= n_max with no truncation logic (oracle)."""
    z = np.asarray(z, dtype=complex)
    out = np.zeros(z.shape, dtype=complex)
    for n in range(-n_max, n_max + 1):
        gam = 1j * n / beta
        out = out + (np.exp(-2j * np.pi * n * l / beta - np.pi * z * np.conj(gam)
                            - np.pi * abs(gam) ** 2 / 2) * F.eval(z + gam))
    return out if out.ndim else complex(out)


__all__ = ["multiplier", "phi_basis", "true_bargmann_eval", "bargmann_eval", "bargmann_integral",
           "QuasiPeriod", "GrowthEnvelope", "HoloFn", "automorphy_residual", "bargmann_envelope",
           "bargmann_holofn", "weyl_translate", "fock_kernel_theta", "fock_kernel_analytic",
           "fock_kernel_true", "fock_kernel_poly", "fock_kernel_poly_sum", "taylor_coeffs",
           "cauchy_derivative", "raising_apply", "true_bargmann_from_raising", "complex_periodize",
           "complex_periodize_brute"]

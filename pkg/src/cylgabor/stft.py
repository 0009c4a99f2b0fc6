"""Short-time Fourier transform on the cylinder [0,1) x R and the
reproducing kernels of its Gabor spaces.

For f = sum_k a_k e_{k,nu},
    V_g f(x, xi) = sum_k a_k e^{2 pi i x (nu + k - xi)} F(conj g)(xi - nu - k).

Kernel convention: ``gabor_kernel(g, nu, z, w)`` is the bilinear sum
sum_k V_g e_k(z) conj(V_g e_k(w)), so that F(w) = <F, K(., w)>. The closed
forms ``kernel_gaussian_closed`` / ``kernel_hermite_closed`` are written in
the opposite argument order: closed(z, w) == gabor_kernel(w, z).
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from ._parallel import parallel_map
from .errors import DomainError
from .qp_signal import QPSignal, Window, window_inner
from .special_fn import DEFAULT_POLICY, TruncationPolicy, laguerre


@dataclass(frozen=True)
class CylinderPoint:
    """Point z = x + i xi of the strip."""

    x: float
    xi: float

    @property
    def z(self) -> complex:
        return complex(self.x, self.xi)

    def canonicalize(self) -> "CylinderPoint":
        return CylinderPoint(self.x - math.floor(self.x), self.xi)


@dataclass(frozen=True)
class GridSpec:
    """Uniform grid with inclusive endpoints."""

    x0: float
    x1: float
    nx: int
    xi0: float
    xi1: float
    nxi: int

    def __post_init__(self):
        if self.nx < 2 or self.nxi < 2:
            raise DomainError("grid needs nx, nxi >= 2")
        if not (self.x1 > self.x0 and self.xi1 > self.xi0):
            raise DomainError("grid needs x1 > x0 and xi1 > xi0")

    @classmethod
    def parse(cls, text: str) -> "GridSpec":
        parts = text.split(",")
        if len(parts) != 6:
            raise DomainError("grid must be x0,x1,nx,xi0,xi1,nxi")
        x0, x1, nx, xi0, xi1, nxi = parts
        return cls(float(x0), float(x1), int(nx), float(xi0), float(xi1), int(nxi))

    def axes(self):
        return np.linspace(self.x0, self.x1, self.nx), np.linspace(self.xi0, self.xi1, self.nxi)

    def points(self) -> np.ndarray:
        """Complex points, xi-major (xi outer, x inner), shape (nxi, nx)."""
        xs, xis = self.axes()
        return xs[None, :] + 1j * xis[:, None]


def _split(p):
    """Return x, xi arrays from complex arrays / CylinderPoint / tuples."""
    if isinstance(p, CylinderPoint) or (hasattr(p, "x") and hasattr(p, "xi")):
        return np.asarray(float(p.x)), np.asarray(float(p.xi))
    if isinstance(p, tuple) and len(p) == 2:
        return np.asarray(p[0], dtype=float), np.asarray(p[1], dtype=float)
    p = np.asarray(p, dtype=complex)
    return p.real, p.imag


def stft_xy(f: QPSignal, g: Window, x, xi):
    """Vectorised V_g f(x, xi) for broadcastable arrays x, xi."""
    x = np.asarray(x, dtype=float)
    xi = np.asarray(xi, dtype=float)
    shape = np.broadcast(x, xi).shape
    if f.ks.size == 0:
        return np.zeros(shape, dtype=complex)
    lam = f.nu + f.ks
    xx = x[..., None]
    xxi = xi[..., None]
    terms = f.a * np.exp(2j * np.pi * xx * (lam - xxi)) * g.ft_conj_eval(xxi - lam)
    return terms.sum(axis=-1)


def stft_eval(f: QPSignal, g: Window, p):
    """V_g f at p (CylinderPoint, complex x + i xi, or array of complex)."""
    x, xi = _split(p)
    out = stft_xy(f, g, x, xi)
    return out if out.ndim else complex(out)


def stft_grid(f: QPSignal, g: Window, grid: GridSpec) -> np.ndarray:
    """Matrix of V_g f on the grid; row j is xi_j, column i is x_i."""
    xs, xis = grid.axes()
    rows = parallel_map(lambda xi: stft_xy(f, g, xs, xi), list(xis))
    return np.vstack(rows)


def basis_image(g: Window, k: int, nu: float, p):
    """V_g e_{k,nu}(x, xi) = e^{2 pi i x (nu + k - xi)} F(conj g)(xi - nu - k)."""
    x, xi = _split(p)
    out = np.exp(2j * np.pi * x * (nu + k - xi)) * g.ft_conj_eval(xi - nu - k)
    return out if np.ndim(out) else complex(out)


def moyal_inner(f1: QPSignal, g1: Window, f2: QPSignal, g2: Window) -> complex:
    """<V_{g1} f1, V_{g2} f2> over (0,1) x R evaluated in coefficient space.

    The x-integral is exact (orthogonality of e^{2 pi i x (k - m)}); the
    remaining xi-integral int F(conj g1) conj(F(conj g2)) is independent of k
    and equals conj(<g1, g2>).
    """
    if f1.nu != f2.nu:
        raise DomainError("nu mismatch")
    common, i1, i2 = np.intersect1d(f1.ks, f2.ks, return_indices=True)
    coeff = complex(np.sum(f1.a[i1] * np.conj(f2.a[i2])))
    if coeff == 0:
        return 0j
    return coeff * np.conj(window_inner(g1, g2))


def strip_inner(F1, F2, xi_lo: float, xi_hi: float, nx: int = 64, weight=None,
                panel: float = 0.25, order: int = 20) -> complex:
    """Quadrature of int_0^1 int_{xi_lo}^{xi_hi} F1 conj(F2) [weight] dxi dx.

    The x-integral uses the trapezoid rule on nx points (exact for
    1-periodic trigonometric integrands of degree < nx); the xi-integral uses
    Gauss-Legendre panels. F1, F2 and weight take complex arrays z = x + i xi.
    """
    from .special_fn import gauss_legendre_panels
    xs = np.arange(nx) / nx
    xis, w = gauss_legendre_panels(xi_lo, xi_hi, width=panel, order=order)
    z = xs[None, :] + 1j * xis[:, None]
    vals = F1(z) * np.conj(F2(z))
    if weight is not None:
        vals = vals * weight(z)
    return complex(np.sum(vals.mean(axis=1) * w))


def _kernel_k_range(g: Window, nu, xi, xip, pol):
    R = g.freq_radius(pol.abs_tol)
    lo = math.floor(min(np.min(xi), np.min(xip)) - nu - R) - 1
    hi = math.ceil(max(np.max(xi), np.max(xip)) - nu + R) + 1
    if hi - lo + 1 > pol.max_terms:
        raise DomainError(f"kernel sum needs {hi - lo + 1} terms > max_terms")
    return np.arange(lo, hi + 1)


def gabor_kernel(g: Window, nu: float, z, w, pol: TruncationPolicy = DEFAULT_POLICY):
    """Reproducing kernel of the Gabor space V_g(L^2_nu):
    K(z, w) = e^{-2 pi i (x xi - x' xi')} sum_k e^{2 pi i (nu+k)(x-x')}
              F(conj g)(xi-nu-k) conj(F(conj g)(xi'-nu-k)).
    """
    x, xi = _split(z)
    xp, xip = _split(w)
    k = _kernel_k_range(g, nu, xi, xip, pol)
    lam = nu + k
    x, xi, xp, xip = (np.asarray(v)[..., None] for v in np.broadcast_arrays(x, xi, xp, xip))
    terms = (np.exp(2j * np.pi * lam * (x - xp))
             * g.ft_conj_eval(xi - lam) * np.conj(g.ft_conj_eval(xip - lam)))
    out = np.exp(-2j * np.pi * (x[..., 0] * xi[..., 0] - xp[..., 0] * xip[..., 0])) * terms.sum(-1)
    return out if out.ndim else complex(out)


def _laguerre_gauss_radius(r, tol):
    """R with e^{-pi R^2/2} (1 + pi R^2)^r < tol."""
    R = 1.0
    while math.exp(-math.pi * R * R / 2) * (1 + math.pi * R * R) ** r >= tol:
        R += 0.25
    return R


def _poincare_sum(z, w, char_sign, nu, r, pol, weight):
    """Shared series sum_k e^{char_sign 2 pi i k nu} e^{pi k (z - conj w) - pi k^2/2}
    L_r(pi |z-w-k|^2) times e^{pi z conj w}, with an optional extra log-weight
    folded into each exponent to avoid overflow."""
    z = np.asarray(z, dtype=complex)
    w = np.asarray(w, dtype=complex)
    z, w, weight = np.broadcast_arrays(z, w, np.asarray(weight))
    R = _laguerre_gauss_radius(r, pol.abs_tol)
    dx = z.real - w.real
    lo = math.floor(float(np.min(dx)) - R) - 1
    hi = math.ceil(float(np.max(dx)) + R) + 1
    if hi - lo + 1 > pol.max_terms:
        raise DomainError(f"kernel sum needs {hi - lo + 1} terms > max_terms")
    k = np.arange(lo, hi + 1)
    zz, ww = z[..., None], w[..., None]
    expo = (np.pi * zz * np.conj(ww) + char_sign * 2j * np.pi * k * nu
            + np.pi * k * (zz - np.conj(ww)) - np.pi * k * k / 2 + weight[..., None])
    terms = np.exp(expo)
    if r:
        terms = terms * laguerre(r, 0.0, np.pi * np.abs(zz - ww - k) ** 2)
    return terms.sum(-1)


def _gabor_prefactor_log(z, w):
    z = np.asarray(z, dtype=complex)
    w = np.asarray(w, dtype=complex)
    return (1j * np.pi * (z.real * z.imag - w.real * w.imag)
            - np.pi / 2 * (np.abs(z) ** 2 + np.abs(w) ** 2))


def kernel_gaussian_closed(nu: float, z, w, pol: TruncationPolicy = DEFAULT_POLICY):
    """Closed form of the Gaussian-window kernel:
    e^{i pi (x xi - x' xi')} e^{-pi(|z|^2+|w|^2)/2} e^{pi z conj w}
    sum_k e^{-2 pi i k nu} e^{-pi conj(w) k + pi k z - pi k^2/2}.

    Equals ``gabor_kernel(gaussian, nu, w, z)``.
    """
    z, w = _as_complex(z), _as_complex(w)
    out = _poincare_sum(z, w, -1.0, nu, 0, pol, _gabor_prefactor_log(z, w))
    return out if out.ndim else complex(out)


def kernel_hermite_closed(r: int, nu: float, z, w, pol: TruncationPolicy = DEFAULT_POLICY):
    """Laguerre-weighted closed form of the Hermite-window kernel:
    the Gaussian closed form with each term multiplied by L_r(pi |z - w - k|^2).

    Equals ``gabor_kernel(hermite(r), nu, w, z)``; r = 0 reproduces
    :func:`kernel_gaussian_closed`.
    """
    z, w = _as_complex(z), _as_complex(w)
    out = _poincare_sum(z, w, -1.0, nu, int(r), pol, _gabor_prefactor_log(z, w))
    return out if out.ndim else complex(out)


def _as_complex(p):
    if isinstance(p, CylinderPoint) or (hasattr(p, "x") and hasattr(p, "xi")):
        return np.asarray(complex(p.x, p.xi))
    return np.asarray(p, dtype=complex)


__all__ = ["CylinderPoint", "GridSpec", "stft_eval", "stft_xy", "stft_grid", "basis_image",
           "moyal_inner", "strip_inner", "gabor_kernel", "kernel_gaussian_closed", "kernel_hermite_closed"]

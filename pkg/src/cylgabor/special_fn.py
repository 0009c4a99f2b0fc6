"""Special functions: Hermite functions and polynomials, Laguerre polynomials,
Jacobi and Hermite theta series, totally positive Fourier factors and the
dual-grid canonical product g_beta.

All evaluators are vectorised over their real/complex arguments.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from typing import Sequence

import numpy as np

from .errors import ConvergenceError, DomainError, UnsupportedOrderError

HERMITE_MAX_ORDER = 64
LAGUERRE_MAX_ORDER = 128
THETA_MAX_IMAG = 50.0
_QUARTER = 2.0 ** 0.25


@dataclass(frozen=True)
class TruncationPolicy:
    """Cutoff policy for every infinite series or product.

    Parameters
    ----------
    abs_tol : float
        Target bound on the neglected tail.
    max_terms : int
        Hard cap on the number of retained terms.
    """

    abs_tol: float = 1e-12
    max_terms: int = 512

    def __post_init__(self):
        if not self.abs_tol > 0:
            raise DomainError("abs_tol must be positive")
        if int(self.max_terms) < 8:
            raise DomainError("max_terms must be at least 8")


DEFAULT_POLICY = TruncationPolicy()


@dataclass(frozen=True)
class TPFactorization:
    """Finite factorization of a totally positive window's Fourier transform.

    ghat(xi) = c exp(-gamma xi^2) exp(2 pi i nu_shift xi)
               prod_j (1 + 2 pi i nu_j xi)^{-1} exp(-2 pi i nu_j xi)
    """

    c: float
    gamma: float
    nu_shift: float = 0.0
    nu_j: tuple = field(default_factory=tuple)

    def __post_init__(self):
        object.__setattr__(self, "nu_j", tuple(float(v) for v in self.nu_j))
        if not self.c > 0:
            raise DomainError("c must be positive")
        if self.gamma < 0:
            raise DomainError("gamma must be nonnegative")
        if any(v == 0.0 for v in self.nu_j):
            raise DomainError("nu_j must be nonzero")
        s = self.gamma + sum(v * v for v in self.nu_j)
        if not (s > 0 and math.isfinite(s)):
            raise DomainError("gamma + sum nu_j^2 must be positive and finite")


def _check_hermite_order(r):
    if r < 0 or int(r) != r:
        raise UnsupportedOrderError(f"order must be a nonnegative integer, got {r}")
    if r > HERMITE_MAX_ORDER:
        raise UnsupportedOrderError(f"order {r} above ceiling {HERMITE_MAX_ORDER}")


def _hermite_recurrence(r, s, p0):
    """Run the normalised three-term recurrence up to order r.

    p_{n+1} = sqrt(2/(n+1)) s p_n - sqrt(n/(n+1)) p_{n-1}, starting from p0.
    Returns the list [p_0, ..., p_r].
    """
    out = [p0]
    if r == 0:
        return out
    p_prev = p0
    p_cur = math.sqrt(2.0) * s * p0
    out.append(p_cur)
    for n in range(1, r):
        p_next = math.sqrt(2.0 / (n + 1)) * s * p_cur - math.sqrt(n / (n + 1)) * p_prev
        p_prev, p_cur = p_cur, p_next
        out.append(p_cur)
    return out


def hermite_poly(r: int, t):
    """Normalised Hermite polynomial.

    H_r(t) = (2^{1/4}/sqrt(r!)) (-1/sqrt 2)^r e^{t^2} d^r/dt^r e^{-t^2},
    i.e. 2^{1/4} (2^r r!)^{-1/2} times the physicists' polynomial.

    Parameters
    ----------
    r : int
        Order, 0 <= r <= 64.
    t : float or array_like
    """
    _check_hermite_order(r)
    t = np.asarray(t, dtype=float)
    p0 = np.full_like(t, _QUARTER)
    res = _hermite_recurrence(int(r), t, p0)[-1]
    return res if res.ndim else float(res)


def hermite_fn(r: int, t):
    """Unit-norm Hermite function h_r(t) = H_r(sqrt(2 pi) t) e^{-pi t^2}.

    The Gaussian factor is carried through the recurrence so large |t|
    underflows cleanly instead of producing inf * 0.
    """
    _check_hermite_order(r)
    t = np.asarray(t, dtype=float)
    p0 = _QUARTER * np.exp(-np.pi * t * t)
    res = _hermite_recurrence(int(r), np.sqrt(2 * np.pi) * t, p0)[-1]
    return res if res.ndim else float(res)


def hermite_fn_all(rmax: int, t):
    """Array of shape (rmax+1, *t.shape) with h_0..h_rmax at t."""
    _check_hermite_order(rmax)
    t = np.asarray(t, dtype=float)
    p0 = _QUARTER * np.exp(-np.pi * t * t)
    return np.stack(_hermite_recurrence(int(rmax), np.sqrt(2 * np.pi) * t, p0))


def laguerre(k: int, alpha: float, x):
    """Generalised Laguerre polynomial L_k^alpha(x) by the standard recurrence."""
    if k < 0 or int(k) != k:
        raise UnsupportedOrderError(f"order must be a nonnegative integer, got {k}")
    if k > LAGUERRE_MAX_ORDER:
        raise UnsupportedOrderError(f"order {k} above ceiling {LAGUERRE_MAX_ORDER}")
    x = np.asarray(x, dtype=float)
    l_prev = np.ones_like(x)
    if k == 0:
        return l_prev if l_prev.ndim else float(l_prev)
    l_cur = 1.0 + alpha - x
    for n in range(1, int(k)):
        l_next = ((2 * n + 1 + alpha - x) * l_cur - (n + alpha) * l_prev) / (n + 1)
        l_prev, l_cur = l_cur, l_next
    return l_cur if l_cur.ndim else float(l_cur)


def _gauss_cutoff(tol):
    return math.sqrt(max(math.log(1.0 / tol), 0.0) / math.pi)


def jacobi_theta(a: float, b: float, z, pol: TruncationPolicy = DEFAULT_POLICY):
    """theta_{a,b}(z) = sum_k exp(-pi (k+a)^2 + 2 pi i (k+a)(z+b)), modulus i.

    Raises
    ------
    DomainError
        If |Im z| > 50.
    ConvergenceError
        If the symmetric window exceeds ``pol.max_terms``.
    """
    z = np.asarray(z, dtype=complex)
    ymax = float(np.max(np.abs(z.imag))) if z.size else 0.0
    if ymax > THETA_MAX_IMAG:
        raise DomainError(f"|Im z| = {ymax} exceeds {THETA_MAX_IMAG}")
    K = int(math.ceil(abs(a) + ymax + _gauss_cutoff(pol.abs_tol)))
    if 2 * K + 1 > pol.max_terms:
        raise ConvergenceError(
            f"theta window needs {2 * K + 1} terms > max_terms={pol.max_terms}",
            tail=math.exp(-math.pi * max(pol.max_terms // 2 - abs(a) - ymax, 0) ** 2),
        )
    k = np.arange(-K, K + 1) + a
    zz = z[..., None]
    s = np.exp(-np.pi * k * k + 2j * np.pi * k * (zz + b)).sum(axis=-1)
    return s if s.ndim else complex(s)


def _hermite_tail_radius(r, tol):
    """Smallest u beyond the last zero of h_r with |h_r(u)| < tol."""
    u = math.sqrt((2 * r + 1) / (2 * math.pi))
    while abs(hermite_fn(r, u)) >= tol:
        u += 0.05
    return u


def hermite_theta(r: int, alpha: float, beta: float, z,
                  pol: TruncationPolicy = DEFAULT_POLICY):
    """Hermite theta function.

    sum_k exp(-pi (k+alpha)^2 + 2 pi i (z-beta)(k+alpha)) H_r(sqrt(2 pi)(k+alpha+Im z)).

    Evaluated in the equivalent stable form
    e^{pi y^2} sum_k h_r(k+alpha+y) e^{2 pi i (x-beta)(k+alpha)}.
    """
    _check_hermite_order(r)
    z = np.asarray(z, dtype=complex)
    ymax = float(np.max(np.abs(z.imag))) if z.size else 0.0
    if ymax > THETA_MAX_IMAG:
        raise DomainError(f"|Im z| = {ymax} exceeds {THETA_MAX_IMAG}")
    R = _hermite_tail_radius(int(r), pol.abs_tol)
    K = int(math.ceil(abs(alpha) + ymax + R))
    if 2 * K + 1 > pol.max_terms:
        raise ConvergenceError(
            f"Hermite theta window needs {2 * K + 1} terms > max_terms={pol.max_terms}")
    k = np.arange(-K, K + 1) + alpha
    x = z.real[..., None]
    y = z.imag[..., None]
    terms = hermite_fn(int(r), k + y) * np.exp(2j * np.pi * (x - beta) * k)
    s = np.exp(np.pi * z.imag ** 2) * terms.sum(axis=-1)
    return s if s.ndim else complex(s)


def _gbeta_terms(beta, pol, re_max):
    K = int(math.ceil(re_max + math.log(1.0 / pol.abs_tol) / (2 * math.pi * beta))) + 1
    if K > pol.max_terms:
        raise DomainError(
            f"Re z = {re_max} needs {K} product factors > max_terms={pol.max_terms}")
    return K


def _on_zero_set(beta, z):
    """True where z lies on (Z minus {0}) + i Z / beta, within 1e-12."""
    period = 1.0 / beta
    yred = z.imag - period * np.round(z.imag / period)
    xr = np.round(z.real)
    return (np.abs(z.real - xr) < 1e-12) & (np.abs(yred) < 1e-12) & (xr != 0)


def gbeta_dualgrid(beta: float, z, pol: TruncationPolicy = DEFAULT_POLICY):
    """Canonical product vanishing on Z minus {0}, periodic under z -> z + i/beta.

    g(z) = prod_{k>0} (1 - e^{2 beta pi (z-k)}) prod_{k<0} (1 - e^{2 beta pi (k-z)}).
    Not to be confused with :func:`cylgabor.sampling.node_product_g`, which is
    built on a node set and carries an e^{pi z^2 / 2} prefactor.
    """
    if not beta > 0:
        raise DomainError("beta must be positive")
    z = np.asarray(z, dtype=complex)
    re_max = float(np.max(np.abs(z.real))) if z.size else 0.0
    K = _gbeta_terms(beta, pol, re_max)
    k = np.arange(1, K + 1)
    zz = z[..., None]
    with np.errstate(divide="ignore", invalid="ignore"):
        logs = (np.log(1 - np.exp(2 * beta * np.pi * (zz - k)))
                + np.log(1 - np.exp(2 * beta * np.pi * (-k - zz))))
    val = np.exp(logs.sum(axis=-1))
    val = np.where(_on_zero_set(beta, z), 0.0, val)
    return val if val.ndim else complex(val)


def hbeta(r: int, beta: float, z, pol: TruncationPolicy = DEFAULT_POLICY):
    """H_beta(z) = e^{-pi z^2 / 2} g_beta(z)^{r+1}."""
    z = np.asarray(z, dtype=complex)
    val = np.exp(-np.pi * z * z / 2) * gbeta_dualgrid(beta, z, pol) ** (r + 1)
    return val if np.ndim(val) else complex(val)


def tp_window_ft(fac: TPFactorization, xi):
    """Fourier transform of a totally positive window from its factorization."""
    xi = np.asarray(xi, dtype=float)
    val = fac.c * np.exp(-fac.gamma * xi * xi) * np.exp(2j * np.pi * fac.nu_shift * xi)
    for v in fac.nu_j:
        val = val * np.exp(-2j * np.pi * v * xi) / (1 + 2j * np.pi * v * xi)
    return val if val.ndim else complex(val)


def tp_sech_factorization(a: float, n_pairs: int) -> TPFactorization:
    """Finite factorization of the transform of 1/(e^{at} + e^{-at}).

    The transform is (pi/(2a)) sech(pi^2 xi / a). Its product
    prod_k (1 + 4 x^2/(2k+1)^2)^{-1}, x = pi xi / a, is kept for k < n_pairs
    as pairs +-1/(a(2k+1)), and the remaining factors are absorbed to first
    order into the Gaussian term, gamma = 4 pi^2 S / a^2 with
    S = pi^2/8 - sum_{k<n_pairs} (2k+1)^{-2}.
    """
    if not a > 0 or n_pairs < 0:
        raise DomainError("need a > 0 and n_pairs >= 0")
    s = math.pi ** 2 / 8 - sum(1.0 / (2 * k + 1) ** 2 for k in range(n_pairs))
    nus = []
    for k in range(n_pairs):
        v = 1.0 / (a * (2 * k + 1))
        nus.extend([v, -v])
    return TPFactorization(c=math.pi / (2 * a), gamma=4 * math.pi ** 2 * s / a ** 2,
                           nu_shift=0.0, nu_j=tuple(nus))


def gauss_legendre_panels(a: float, b: float, width: float = 1.0, order: int = 20):
    """Nodes and weights of composite Gauss-Legendre quadrature on [a, b]."""
    n = max(1, int(math.ceil((b - a) / width)))
    x0, w0 = np.polynomial.legendre.leggauss(order)
    edges = np.linspace(a, b, n + 1)
    half = 0.5 * np.diff(edges)
    mid = 0.5 * (edges[:-1] + edges[1:])
    nodes = (mid[:, None] + half[:, None] * x0[None, :]).ravel()
    weights = (half[:, None] * w0[None, :]).ravel()
    return nodes, weights


__all__: Sequence[str] = [
    "TruncationPolicy", "DEFAULT_POLICY", "TPFactorization", "hermite_poly", "hermite_fn",
    "hermite_fn_all", "laguerre", "jacobi_theta", "hermite_theta", "gbeta_dualgrid", "hbeta",
    "tp_window_ft", "tp_sech_factorization", "gauss_legendre_panels",
]

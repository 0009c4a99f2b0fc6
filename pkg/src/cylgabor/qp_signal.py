"""Quasi-periodic signals in L^2_nu(0,1), analysis windows and the
periodization operator.

A signal is f(t) = sum_k a_k e^{2 pi i t (nu + k)}; it satisfies
f(t + n) = e^{2 pi i n nu} f(t). Signals are stored in coefficient space only.
"""

from __future__ import annotations

import json
import math
from dataclasses import dataclass, field
from typing import Callable, Iterable, Optional

import numpy as np

from .errors import ConstructionError, DomainError, RequiresDecayError
from .special_fn import (DEFAULT_POLICY, TPFactorization, TruncationPolicy,
                         gauss_legendre_panels, hermite_fn, tp_window_ft)

NORM_TOL = 1e-8


@dataclass(frozen=True)
class QPSignal:
    """Element of L^2_nu(0,1) given by finitely many Fourier coefficients.

    Attributes
    ----------
    nu : float
        Character parameter.
    ks : ndarray of int
        Sorted coefficient indices.
    a : ndarray of complex
        Coefficients aligned with ``ks``.
    """

    nu: float
    ks: np.ndarray
    a: np.ndarray

    @property
    def K(self) -> int:
        return int(np.max(np.abs(self.ks))) if self.ks.size else 0

    @property
    def coeffs(self) -> dict:
        return {int(k): complex(v) for k, v in zip(self.ks, self.a)}

    def norm(self) -> float:
        return float(np.sqrt(np.sum(np.abs(self.a) ** 2)))

    def dense(self, K: int) -> np.ndarray:
        """Coefficient vector on k = -K..K (entries outside the support are 0)."""
        if self.ks.size and self.K > K:
            raise DomainError(f"signal support K={self.K} exceeds requested {K}")
        out = np.zeros(2 * K + 1, dtype=complex)
        out[self.ks + K] = self.a
        return out

    def __call__(self, t):
        return eval_signal(self, t)


def make_signal(nu: float, entries: Iterable) -> QPSignal:
    """Build a signal from (k, a_k) pairs.

    Raises
    ------
    ConstructionError
        On duplicate indices.
    """
    entries = list(entries)
    ks = [int(k) for k, _ in entries]
    if len(set(ks)) != len(ks):
        raise ConstructionError("duplicate coefficient index")
    order = np.argsort(ks, kind="stable")
    ks_arr = np.asarray(ks, dtype=int)[order]
    a_arr = np.asarray([complex(v) for _, v in entries], dtype=complex)[order]
    return QPSignal(float(nu), ks_arr, a_arr)


def signal_from_dense(nu: float, coeffs, K: int, drop_zeros: bool = False) -> QPSignal:
    """Signal from a dense vector on k = -K..K."""
    coeffs = np.asarray(coeffs, dtype=complex)
    ks = np.arange(-K, K + 1)
    if drop_zeros:
        keep = coeffs != 0
        ks, coeffs = ks[keep], coeffs[keep]
    return QPSignal(float(nu), ks.astype(int), coeffs.copy())


def basis_signal(k: int, nu: float) -> QPSignal:
    """The basis element e_{k,nu}."""
    return make_signal(nu, [(k, 1.0)])


def eval_signal(f: QPSignal, t):
    """f(t) = sum_k a_k e^{2 pi i t (nu + k)}."""
    t = np.asarray(t, dtype=float)
    if f.ks.size == 0:
        out = np.zeros(t.shape, dtype=complex)
    else:
        out = (f.a * np.exp(2j * np.pi * t[..., None] * (f.nu + f.ks))).sum(axis=-1)
    return out if out.ndim else complex(out)


def inner_product(f1: QPSignal, f2: QPSignal) -> complex:
    """<f1, f2> = sum_k a_k conj(b_k)."""
    if f1.nu != f2.nu:
        raise DomainError(f"nu mismatch: {f1.nu} vs {f2.nu}")
    if f1 is f2:
        return complex(np.sum(np.abs(f1.a) ** 2))
    common, i1, i2 = np.intersect1d(f1.ks, f2.ks, return_indices=True)
    return complex(np.sum(f1.a[i1] * np.conj(f2.a[i2])))


# ---------------------------------------------------------------- windows

@dataclass(frozen=True)
class Envelope:
    """Decay bound amplitude * exp(-rate |t|^power)."""

    amplitude: float
    rate: float
    power: float = 2.0

    def bound(self, t):
        return self.amplitude * np.exp(-self.rate * np.abs(t) ** self.power)

    def radius(self, tol: float) -> float:
        """Smallest R with bound(R) <= tol."""
        if self.amplitude <= tol:
            return 0.0
        return (math.log(self.amplitude / tol) / self.rate) ** (1.0 / self.power)


@dataclass(frozen=True)
class Window:
    """Unit-norm analysis window on the real line.

    Attributes
    ----------
    kind : str
        'gaussian', 'hermite', 'totally_positive', 'sampled' or 'custom'.
    time_eval : callable
        t -> g(t), vectorised.
    ft_conj_eval : callable
        xi -> F(conj g)(xi) = int conj(g(t)) e^{-2 pi i xi t} dt, vectorised.
    decay : Envelope or None
        Bound on |g|.
    ft_decay : Envelope or None
        Bound on |F(conj g)|; defaults to ``decay``.
    order : int or None
        Hermite index for Hermite windows.
    support : float or None
        Half-width outside which ``time_eval`` is identically zero.
    """

    kind: str
    time_eval: Callable
    ft_conj_eval: Callable
    decay: Optional[Envelope] = None
    ft_decay: Optional[Envelope] = None
    order: Optional[int] = None
    support: Optional[float] = None
    label: str = ""
    meta: dict = field(default_factory=dict, compare=False)

    def __call__(self, t):
        return self.time_eval(t)

    def freq_envelope(self) -> Envelope:
        env = self.ft_decay or self.decay
        if env is None:
            raise RequiresDecayError(f"window '{self.label or self.kind}' has no decay bound")
        return env

    def time_envelope(self) -> Envelope:
        if self.decay is None:
            raise RequiresDecayError(f"window '{self.label or self.kind}' has no decay bound")
        return self.decay

    def time_radius(self, tol: float) -> float:
        R = self.time_envelope().radius(tol)
        if self.support is not None:
            R = min(R, self.support)
        return R

    def freq_radius(self, tol: float) -> float:
        return self.freq_envelope().radius(tol)

    @property
    def is_real(self) -> bool:
        return self.kind in ("gaussian", "hermite")


def _quad_norm_sq(fn, R):
    x, w = gauss_legendre_panels(-R, R, width=0.5, order=20)
    return float(np.sum(w * np.abs(fn(x)) ** 2))


def _validate_window(win: Window, check_norm=True):
    if check_norm:
        if win.ft_decay is not None or win.decay is not None:
            try:
                R = win.freq_radius(1e-18)
                fn = win.ft_conj_eval
            except RequiresDecayError:
                R = win.time_radius(1e-18)
                fn = win.time_eval
        else:
            R, fn = 12.0, win.time_eval
        nsq = _quad_norm_sq(fn, max(R, 1.0))
        if nsq == 0.0:
            raise ConstructionError("zero window")
        if abs(nsq - 1.0) > NORM_TOL:
            raise ConstructionError(f"window is not unit norm: |g|^2 = {nsq!r}")
    probes = np.linspace(-8.0, 8.0, 401)
    for env, fn, name in ((win.decay, win.time_eval, "time"),
                          (win.ft_decay, win.ft_conj_eval, "frequency")):
        if env is None:
            continue
        vals = np.abs(fn(probes))
        if np.any(vals > env.bound(probes) * (1 + 1e-9) + 1e-300):
            raise ConstructionError(f"{name} decay envelope violated on probe grid")
    return win


def gaussian_window() -> Window:
    """h_0(t) = 2^{1/4} e^{-pi t^2}, with F(conj h_0) = h_0."""
    env = Envelope(2.0 ** 0.25, math.pi, 2.0)
    win = Window("gaussian", lambda t: hermite_fn(0, t),
                 lambda xi: hermite_fn(0, xi) + 0j, env, env, order=0, label="gaussian")
    return _validate_window(win)


def _hermite_envelope(r):
    t = np.linspace(0.0, math.sqrt((2 * r + 1) / (2 * math.pi)) + 6.0, 4001)
    rate = math.pi / 2
    amp = float(np.max(np.abs(hermite_fn(r, t)) * np.exp(rate * t * t)))
    return Envelope(1.05 * amp, rate, 2.0)


def hermite_window(r: int) -> Window:
    """Hermite window h_r; F(conj h_r) = (-i)^r h_r under the e^{-2 pi i xi t} convention."""
    r = int(r)
    if r == 0:
        return gaussian_window()
    phase = (-1j) ** r
    env = _hermite_envelope(r)
    win = Window("hermite", lambda t, r=r: hermite_fn(r, t),
                 lambda xi, r=r, ph=phase: ph * hermite_fn(r, xi), env, env,
                 order=r, label=f"hermite:{r}")
    return _validate_window(win)


def tp_window(fac: TPFactorization, normalize: bool = True) -> Window:
    """Totally positive window from a finite factorization with gamma > 0.

    The time-domain values are computed by Gauss-Legendre quadrature of the
    inverse Fourier integral. With ``normalize`` the constant c is rescaled
    so that the window has unit norm.
    """
    if not fac.gamma > 0:
        raise RequiresDecayError("finite factorizations need gamma > 0 for a decay bound")
    R = math.sqrt(math.log(1e40) / fac.gamma)
    xs, ws = gauss_legendre_panels(-R, R, width=0.25, order=20)
    if normalize:
        nsq = float(np.sum(ws * np.abs(tp_window_ft(fac, xs)) ** 2))
        fac = TPFactorization(fac.c / math.sqrt(nsq), fac.gamma, fac.nu_shift, fac.nu_j)
    ghat_nodes = tp_window_ft(fac, xs) * ws

    def time_eval(t, xs=xs, gw=ghat_nodes):
        t = np.asarray(t, dtype=float)
        out = (gw * np.exp(2j * np.pi * t[..., None] * xs)).sum(axis=-1)
        return out if out.ndim else complex(out)

    def ft_conj(xi, fac=fac):
        xi = np.asarray(xi, dtype=float)
        return np.conj(tp_window_ft(fac, -xi))

    ft_env = Envelope(fac.c, fac.gamma, 2.0)
    # time side: Gaussian of variance ~gamma convolved with one-sided exponentials
    if fac.nu_j:
        rate, power = 0.9 / max(abs(v) for v in fac.nu_j), 1.0
    else:
        rate, power = 0.9 * math.pi ** 2 / fac.gamma, 2.0
    probe = np.linspace(-12.0, 12.0, 961)
    vals = np.abs(time_eval(probe))
    amp = float(np.max(vals * np.exp(rate * np.abs(probe) ** power)))
    env = Envelope(1.5 * amp, rate, power)
    win = Window("totally_positive", time_eval, ft_conj, env, ft_env,
                 label="tp", meta={"factorization": fac})
    return _validate_window(win)


def custom_window(time_eval: Callable, ft_conj_eval: Callable,
                  decay: Optional[Envelope] = None, ft_decay: Optional[Envelope] = None,
                  label: str = "custom", check_norm: bool = True) -> Window:
    """User-supplied window; decay envelopes are optional but required by
    periodization and frame routines."""
    win = Window("custom", time_eval, ft_conj_eval, decay, ft_decay, label=label)
    return _validate_window(win, check_norm=check_norm)


def window_inner(g1: Window, g2: Window) -> complex:
    """<g1, g2> on L^2(R) by quadrature on the frequency side (Plancherel)."""
    R = max(g1.freq_radius(1e-18), g2.freq_radius(1e-18), 1.0)
    x, w = gauss_legendre_panels(-R, R, width=0.5, order=20)
    # F(conj g)(xi) = conj(ghat(-xi)) so <g1, g2> = int conj(Fg1) Fg2
    return complex(np.sum(w * np.conj(g1.ft_conj_eval(x)) * g2.ft_conj_eval(x)))


# ------------------------------------------------------------ periodization

def periodize_shift(g: Window, z, nu: float, t, pol: TruncationPolicy = DEFAULT_POLICY):
    """Sigma_nu(pi(x, xi) g)(t) = sum_k e^{2 pi i k nu} e^{2 pi i xi (t-k)} g(t-k-x).

    Parameters
    ----------
    z : complex or CylinderPoint-like
        Time-frequency shift x + i xi.
    """
    if g.decay is None:
        raise RequiresDecayError("periodization requires a declared decay bound")
    x, xi = _xy(z)
    t = np.asarray(t, dtype=float)
    R = g.time_radius(pol.abs_tol)
    tmin = float(np.min(t)) if t.size else 0.0
    tmax = float(np.max(t)) if t.size else 0.0
    k = np.arange(math.floor(tmin - x - R) - 1, math.ceil(tmax - x + R) + 2)
    if k.size > pol.max_terms:
        raise DomainError(f"periodization needs {k.size} terms > max_terms")
    u = t[..., None] - k
    terms = np.exp(2j * np.pi * k * nu) * np.exp(2j * np.pi * xi * u) * g.time_eval(u - x)
    out = terms.sum(axis=-1)
    return out if out.ndim else complex(out)


def _xy(z):
    if hasattr(z, "x") and hasattr(z, "xi"):
        return float(z.x), float(z.xi)
    z = complex(z)
    return z.real, z.imag


# ------------------------------------------------------------------- I/O

def signal_to_json(f: QPSignal) -> str:
    """Serialise to {"nu": ..., "coeffs": [[k, re, im], ...]}."""
    data = {"nu": f.nu,
            "coeffs": [[int(k), float(v.real), float(v.imag)] for k, v in zip(f.ks, f.a)]}
    return json.dumps(data)


def signal_from_obj(obj) -> QPSignal:
    if not isinstance(obj, dict) or "nu" not in obj or "coeffs" not in obj:
        raise ConstructionError("signal JSON needs fields 'nu' and 'coeffs'")
    entries = []
    for i, row in enumerate(obj["coeffs"]):
        if not (isinstance(row, (list, tuple)) and len(row) == 3):
            raise ConstructionError(f"coeffs[{i}]: expected [k, re, im], got {row!r}")
        k, re, im = row
        if int(k) != k:
            raise ConstructionError(f"coeffs[{i}]: index {k!r} is not an integer")
        entries.append((int(k), complex(float(re), float(im))))
    return make_signal(float(obj["nu"]), entries)


def signal_from_json(text: str) -> QPSignal:
    try:
        obj = json.loads(text)
    except json.JSONDecodeError as exc:
        raise ConstructionError(f"malformed signal JSON at line {exc.lineno}: {exc.msg}")
    return signal_from_obj(obj)


def save_signal(f: QPSignal, path) -> None:
    with open(path, "w") as fh:
        fh.write(signal_to_json(f) + "\n")


def load_signal(path) -> QPSignal:
    with open(path) as fh:
        return signal_from_json(fh.read())


__all__ = ["QPSignal", "make_signal", "signal_from_dense", "basis_signal", "eval_signal",
           "inner_product", "Envelope", "Window", "gaussian_window", "hermite_window", "tp_window",
           "custom_window", "window_inner", "periodize_shift", "signal_to_json", "signal_from_obj",
           "signal_from_json", "save_signal", "load_signal"]

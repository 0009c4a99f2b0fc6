"""Vector-valued signals, the vectorial STFT, superframe bounds, super
Wexler-Raz residuals and the super Bargmann transform.

A vector signal F = (f_1, ..., f_N) in L^2_nu(0,1)^N is analysed with a
vector window G = (g_1, ..., g_N) of orthonormal windows:
V_G F(x, xi) = sum_i V_{g_i} f_i(x, xi).
"""

from __future__ import annotations

import json
import math
from dataclasses import dataclass
from typing import Sequence

import numpy as np

from .errors import ConstructionError, DomainError
from .fock import true_bargmann_eval
from .frames import FrameBounds, FrameSpec, Verdict, analysis_matrix, janssen_table, _n_tail
from .qp_signal import QPSignal, Window, hermite_window, inner_product, signal_from_obj, window_inner
from .stft import stft_eval

ORTHO_TOL = 1e-8


@dataclass(frozen=True)
class VectorSignal:
    """N quasi-periodic channels sharing the character nu."""

    nu: float
    channels: tuple

    def __post_init__(self):
        ch = tuple(self.channels)
        if not ch:
            raise ConstructionError("a vector signal needs at least one channel")
        if any(c.nu != self.nu for c in ch):
            raise ConstructionError("all channels must share nu")
        object.__setattr__(self, "channels", ch)

    @property
    def N(self) -> int:
        return len(self.channels)

    def norm(self) -> float:
        return math.sqrt(sum(c.norm() ** 2 for c in self.channels))


@dataclass(frozen=True)
class VectorWindow:
    """N pairwise orthonormal windows (checked by quadrature)."""

    windows: tuple
    check: bool = True

    def __post_init__(self):
        w = tuple(self.windows)
        if not w:
            raise ConstructionError("a vector window needs at least one window")
        object.__setattr__(self, "windows", w)
        if self.check:
            G = self.gram()
            if np.max(np.abs(G - np.eye(len(w)))) > ORTHO_TOL:
                raise ConstructionError("vector window channels are not orthonormal")

    @property
    def N(self) -> int:
        return len(self.windows)

    def gram(self) -> np.ndarray:
        n = len(self.windows)
        return np.array([[window_inner(self.windows[i], self.windows[j]) for j in range(n)]
                         for i in range(n)])

    @classmethod
    def hermite(cls, N: int) -> "VectorWindow":
        """(h_0, ..., h_{N-1})."""
        return cls(tuple(hermite_window(r) for r in range(N)))


def _match(F: VectorSignal, G: VectorWindow):
    if F.N != G.N:
        raise DomainError(f"channel count mismatch: signal {F.N}, window {G.N}")


def vector_stft(F: VectorSignal, G: VectorWindow, p):
    """V_G F(p) = sum_i V_{g_i} f_i(p)."""
    _match(F, G)
    return sum(stft_eval(f, g, p) for f, g in zip(F.channels, G.windows))


def vector_moyal(F1: VectorSignal, G1: VectorWindow, F2: VectorSignal, G2: VectorWindow) -> complex:
    """<V_{G1} F1, V_{G2} F2> = sum_{i,j} <f1_i, f2_j> conj(<g1_i, g2_j>) over the strip."""
    _match(F1, G1)
    _match(F2, G2)
    if F1.nu != F2.nu:
        raise DomainError("nu mismatch")
    total = 0j
    for f1, g1 in zip(F1.channels, G1.windows):
        for f2, g2 in zip(F2.channels, G2.windows):
            c = inner_product(f1, f2)
            if c != 0:
                gi = 1.0 + 0j if g1 is g2 else window_inner(g1, g2)
                total += c * np.conj(gi)
    return complex(total)


def super_analysis_matrix(G: VectorWindow, beta: float, nu: float, K: int,
                          tol: float = 1e-12) -> np.ndarray:
    """Stacked matrix [M_1 | ... | M_N] with entries F(conj g_i)(beta n - nu - k)."""
    specs = [FrameSpec(g, beta, nu, K, tol) for g in G.windows]
    mats = [analysis_matrix(s) for s in specs]
    N = max(m.shape[0] for m in mats) // 2
    out = []
    for m in mats:
        pad = N - m.shape[0] // 2
        out.append(np.pad(m, ((pad, pad), (0, 0))))
    return np.hstack(out)


def _extremes(M):
    ev = np.linalg.eigvalsh(M.conj().T @ M)
    return float(max(ev[0], 0.0)), float(ev[-1])


def super_frame_bounds(G: VectorWindow, beta: float, nu: float = 0.0, K: int = 32,
                       tol: float = 1e-12) -> FrameBounds:
    """Extremal eigenvalues of the stacked frame operator with a K/2 diagnostic."""
    if K > 512:
        raise DomainError("super_frame_bounds supports K <= 512")
    M = super_analysis_matrix(G, beta, nu, K, tol)
    A, B = _extremes(M)
    if K >= 2:
        A_half, _ = _extremes(super_analysis_matrix(G, beta, nu, K // 2, tol))
        conv = abs(A - A_half) / A if A > 0 else math.inf
    else:
        conv = math.inf
    return FrameBounds(A, B, K, M.shape[0] // 2, conv)


def super_wr_matrix(G: VectorWindow, Gamma: VectorWindow, beta: float, k_range=range(-3, 4),
                    l_range=range(-3, 4), n_tail=None, tol: float = 1e-10) -> np.ndarray:
    """beta^{-1} sum_n <Gamma, M_k T_{n/beta} G> e^{2 pi i n l/beta} with the vector
    bracket summed over channels; rows k, columns l."""
    if G.N != Gamma.N:
        raise DomainError("channel count mismatch")
    if n_tail is None:
        n_tail = max(_n_tail(g, c, beta, tol * 1e-3) for g, c in zip(G.windows, Gamma.windows))
    ks = list(k_range)
    ls = np.asarray(list(l_range), dtype=float)
    ns = np.arange(-n_tail, n_tail + 1)
    J = sum(janssen_table(g, c, beta, ks, ns, tol) for g, c in zip(G.windows, Gamma.windows))
    phase = np.exp(2j * np.pi * ns[:, None] * ls[None, :] / beta)
    return (J @ phase) / beta


def super_wr_residual(G: VectorWindow, Gamma: VectorWindow, beta: float, k_range=range(-3, 4),
                      l_range=range(-3, 4), n_tail=None, tol: float = 1e-10) -> float:
    """max_{k,l} |super_wr_matrix - delta_{k0}|."""
    ks = list(k_range)
    S = super_wr_matrix(G, Gamma, beta, ks, l_range, n_tail, tol)
    delta = np.array([1.0 if k == 0 else 0.0 for k in ks])[:, None]
    return float(np.max(np.abs(S - delta)))


def super_bargmann(F: VectorSignal, z):
    """B F(z) = sum_r B^{(r)} f_r(z), r = 0..N-1; polyanalytic of order N."""
    if F.N > 16:
        raise DomainError("super Bargmann transform supports at most 16 channels")
    return sum(true_bargmann_eval(r, f, z) for r, f in enumerate(F.channels))


def super_sufficient_predicate(N: int, beta: float) -> Verdict:
    """Frame if beta < 1/N; for N = 1 the Gaussian criterion is an equivalence."""
    if N < 1:
        raise DomainError("N must be positive")
    b = float(beta)
    if N == 1:
        return Verdict("frame" if b < 1 else "not_frame",
                       "Gaussian lattice criterion, 'Z is sampling for' (iff 1/beta > 1)")
    return Verdict("frame" if b < 1.0 / N else "unknown",
                   f"Hermite superframe condition, 'If beta < 1/N' with N={N}")


# ------------------------------------------------------------------- I/O

def vector_signal_to_json(F: VectorSignal) -> str:
    return json.dumps({"nu": F.nu, "channels": [
        [[int(k), float(v.real), float(v.imag)] for k, v in zip(c.ks, c.a)] for c in F.channels]})


def vector_signal_from_json(text: str) -> VectorSignal:
    try:
        obj = json.loads(text)
    except json.JSONDecodeError as exc:
        raise ConstructionError(f"malformed vector signal JSON at line {exc.lineno}: {exc.msg}")
    if not isinstance(obj, dict) or "nu" not in obj or "channels" not in obj:
        raise ConstructionError("vector signal JSON needs fields 'nu' and 'channels'")
    chans = []
    for i, c in enumerate(obj["channels"]):
        try:
            chans.append(signal_from_obj({"nu": obj["nu"], "coeffs": c}))
        except ConstructionError as exc:
            raise ConstructionError(f"channels[{i}]: {exc}")
    return VectorSignal(float(obj["nu"]), tuple(chans))


__all__ = ["VectorSignal", "VectorWindow", "vector_stft", "vector_moyal", "super_analysis_matrix",
           "super_frame_bounds", "super_wr_matrix", "super_wr_residual", "super_bargmann",
           "super_sufficient_predicate", "vector_signal_to_json", "vector_signal_from_json"]

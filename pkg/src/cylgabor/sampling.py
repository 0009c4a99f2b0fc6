"""Point sets on the strip C/Z, separation and Beurling densities, the explicit
sampling formula for the analytic Fock space and the interpolant for the
true polyanalytic spaces.

Node products. ``node_product_g`` is built on a node set z_k indexed by
integers with Im z_k increasing in k:

    g(z) = e^{pi z^2/2} prod_{k>=0} (1 - e^{2 pi i (z_k - z)}) prod_{k<0} (1 - e^{2 pi i (z - z_k)}).

It is unrelated to :func:`cylgabor.special_fn.gbeta_dualgrid`, the canonical
product on (Z minus {0}) + i Z / beta used for the Hermite frame criterion.
All products are evaluated as sums of logarithms.
"""

from __future__ import annotations

import csv
import math
from dataclasses import dataclass, field
from typing import Optional, Sequence

import numpy as np

from .errors import DensityPreconditionError, DomainError, UndefinedSeparationError, UnsupportedOrderError
from .special_fn import DEFAULT_POLICY, TruncationPolicy
from .stft import CylinderPoint


@dataclass(frozen=True)
class PointSet:
    """Finite list of strip points with optional generating structure.

    Attributes
    ----------
    z : ndarray of complex
        Points x + i xi (x is not reduced; the metric works modulo 1).
    indices : ndarray of int
        Node indices k; Im z must be non-decreasing in k.
    structure : str
        'finite', 'vertical_lattice' or 'periodic'.
    params : dict
        beta/offset for lattices, period/base for periodic sets,
        extent (y0, y1) for finite sets.
    """

    z: np.ndarray
    indices: np.ndarray
    structure: str = "finite"
    params: dict = field(default_factory=dict, compare=False)

    def __post_init__(self):
        z = np.asarray(self.z, dtype=complex).ravel()
        idx = np.asarray(self.indices, dtype=int).ravel()
        if z.shape != idx.shape:
            raise DomainError("points and indices differ in length")
        order = np.argsort(idx, kind="stable")
        z, idx = z[order], idx[order]
        if np.any(np.diff(idx) == 0):
            raise DomainError("duplicate node index")
        if np.any(np.diff(z.imag) < 0):
            raise DomainError("Im z_k must be non-decreasing in k")
        if z.size > 1:
            xr = np.mod(z.real, 1.0)
            key = np.round(xr, 12) + 1j * np.round(z.imag, 12)
            if np.unique(key).size != z.size:
                raise DomainError("points must be pairwise distinct modulo 1")
        object.__setattr__(self, "z", z)
        object.__setattr__(self, "indices", idx)

    def __len__(self):
        return self.z.size

    @property
    def points(self):
        return [CylinderPoint(float(v.real), float(v.imag)) for v in self.z]

    @classmethod
    def finite(cls, z, indices=None, extent=None) -> "PointSet":
        """Finite set. Without indices, points are sorted by Im and the first
        point with Im >= 0 gets index 0."""
        z = np.asarray(z, dtype=complex).ravel()
        if indices is None:
            order = np.argsort(z.imag, kind="stable")
            z = z[order]
            k0 = int(np.searchsorted(z.imag, 0.0, side="left"))
            indices = np.arange(z.size) - k0
        params = {}
        if extent is not None:
            params["extent"] = (float(extent[0]), float(extent[1]))
        elif z.size:
            params["extent"] = (float(z.imag.min()), float(z.imag.max()))
        return cls(z, np.asarray(indices), "finite", params)

    @classmethod
    def vertical_lattice(cls, beta: float, n_min: int, n_max: int, offset: complex = 0.0) -> "PointSet":
        """offset + i beta n for n = n_min..n_max."""
        if not beta > 0:
            raise DomainError("beta must be positive")
        n = np.arange(int(n_min), int(n_max) + 1)
        return cls(complex(offset) + 1j * beta * n, n, "vertical_lattice",
                   {"beta": float(beta), "offset": complex(offset)})

    @classmethod
    def periodic(cls, period_imag: float, base, m_min: int, m_max: int) -> "PointSet":
        """base points translated by i period m for m = m_min..m_max."""
        base = np.sort_complex(np.asarray(base, dtype=complex).ravel())
        base = base[np.argsort(base.imag, kind="stable")]
        if period_imag <= 0 or base.size == 0:
            raise DomainError("need period > 0 and at least one base point")
        if np.any(base.imag < 0) or np.any(base.imag >= period_imag):
            raise DomainError("base points must have 0 <= Im < period")
        m = np.arange(int(m_min), int(m_max) + 1)
        z = (base[None, :] + 1j * period_imag * m[:, None]).ravel()
        idx = (m[:, None] * base.size + np.arange(base.size)[None, :]).ravel()
        return cls(z, idx, "periodic", {"period": float(period_imag), "base": base})

    def node(self, k: int) -> complex:
        pos = np.searchsorted(self.indices, k)
        if pos >= self.indices.size or self.indices[pos] != k:
            raise DomainError(f"no node with index {k}")
        return complex(self.z[pos])


def _cyl_dist(a, b):
    dx = np.abs(a.real - b.real)
    dx = np.abs(dx - np.round(dx))
    return np.hypot(dx, a.imag - b.imag)


def separation(Z: PointSet) -> float:
    """min_{j != k} d(z_j, z_k) for the cylinder metric (x-difference taken mod 1)."""
    if Z.structure == "vertical_lattice" and len(Z) >= 2:
        # lattice points share Re, so the distance is the Im gap beta
        return float(Z.params["beta"])
    if len(Z) < 2:
        raise UndefinedSeparationError("separation needs at least two points")
    z = Z.z
    best = math.inf
    order = np.argsort(z.imag)
    zs = z[order]
    # sweep over Im-sorted points; stop once the Im gap exceeds the best distance
    for i in range(zs.size - 1):
        j = i + 1
        while j < zs.size and zs[j].imag - zs[i].imag < best:
            best = min(best, float(_cyl_dist(zs[i], zs[j])))
            j += 1
    return best


def separation_brute(Z: PointSet) -> float:
    """O(n^2) oracle for :func:`separation`."""
    if len(Z) < 2:
        raise UndefinedSeparationError("separation needs at least two points")
    d = _cyl_dist(Z.z[:, None], Z.z[None, :])
    np.fill_diagonal(d, np.inf)
    return float(d.min())


@dataclass(frozen=True)
class DensityEstimate:
    lower: float
    upper: float
    exact: Optional[float]
    window_limited: bool
    radii: tuple = ()
    lower_track: tuple = ()
    upper_track: tuple = ()

    def to_dict(self):
        return {"lower": self.lower, "upper": self.upper, "exact": self.exact,
                "window_limited": self.window_limited}


def exact_density(Z: PointSet) -> Optional[float]:
    """Closed form points-per-period / period for lattice and periodic structures."""
    if Z.structure == "vertical_lattice":
        return 1.0 / Z.params["beta"]
    if Z.structure == "periodic":
        return len(Z.params["base"]) / Z.params["period"]
    return None


def _sweep(ys: np.ndarray, w: np.ndarray, radii: np.ndarray):
    lows, ups = [], []
    for r in radii:
        cnt = np.searchsorted(ys, w + r, side="left") - np.searchsorted(ys, w, side="left")
        lows.append(float(cnt.min()) / r)
        ups.append(float(cnt.max()) / r)
    return lows, ups


def beurling_density(Z: PointSet, r_max: float = 50.0, r_steps: int = 12,
                     w_per_unit: int = 64) -> DensityEstimate:
    """Lower/upper Beurling densities from counts n(Z, I_{w,r}) / r with
    I_{w,r} = [0,1) x [w, w+r).

    Lattice and periodic structures report the exact value and a sweep over a
    regenerated window of points. Finite sets sweep w from below their declared
    extent to one unit past it, so empty windows are seen and the lower
    estimate of a finite set is 0; they are flagged window-limited.
    """
    if not r_max >= 1 or r_steps < 1:
        raise DomainError("need r_max >= 1 and r_steps >= 1")
    radii = np.geomspace(1.0, r_max, int(r_steps))
    exact = exact_density(Z)
    if Z.structure in ("vertical_lattice", "periodic"):
        span = 2 * r_max
        if Z.structure == "vertical_lattice":
            beta = Z.params["beta"]
            n = int(math.ceil(2 * span / beta)) + 1
            ys = np.sort((Z.params["offset"] + 1j * beta * np.arange(-n, n + 1)).imag)
        else:
            P = Z.params["period"]
            m = int(math.ceil(2 * span / P)) + 1
            full = PointSet.periodic(P, Z.params["base"], -m, m)
            ys = np.sort(full.z.imag)
        w = np.linspace(-span / 2, span / 2, int(span * w_per_unit) + 1)
        lows, ups = _sweep(ys, w, radii)
        limited = False
    else:
        ys = np.sort(Z.z.imag)
        y0, y1 = Z.params.get("extent", (float(ys.min()), float(ys.max())) if ys.size else (0.0, 0.0))
        w = np.linspace(y0 - r_max, y1 + 1.0, max(2, int((y1 - y0 + r_max + 1.0) * w_per_unit) + 1))
        lows, ups = _sweep(ys, w, radii) if ys.size else ([0.0] * radii.size, [0.0] * radii.size)
        limited = True
    return DensityEstimate(lows[-1], ups[-1], exact, limited, tuple(radii.tolist()),
                           tuple(lows), tuple(ups))


# ------------------------------------------------------------ node products

def _factor_logs(Z: PointSet, z):
    """log of each product factor at z, shape z.shape + (len(Z),)."""
    zz = np.asarray(z, dtype=complex)[..., None]
    pos = Z.indices >= 0
    arg = np.where(pos, 2j * np.pi * (Z.z - zz), 2j * np.pi * (zz - Z.z))
    with np.errstate(divide="ignore"):
        return np.log(-np.expm1(arg))


def node_product_log(Z: PointSet, z):
    """log g(z) (principal branch per factor; -inf real part at nodes)."""
    z = np.asarray(z, dtype=complex)
    out = np.pi * z * z / 2 + _factor_logs(Z, z).sum(-1)
    return out if out.ndim else complex(out)


def node_product_g(Z: PointSet, z, pol: TruncationPolicy = DEFAULT_POLICY):
    """g(z) over the nodes of Z (truncated to the listed nodes).

    Not the dual-grid product :func:`cylgabor.special_fn.gbeta_dualgrid`.
    """
    with np.errstate(over="ignore", under="ignore"):
        out = np.exp(node_product_log(Z, z))
    return out


def node_product_tail(Z: PointSet, z) -> float:
    """Bound sum over the first omitted lattice nodes of |e^{2 pi i (z_k - z)}|,
    assuming the listed nodes continue with the same spacing."""
    if len(Z) < 2:
        return 0.0
    y = np.atleast_1d(np.asarray(z, dtype=complex)).imag
    step_hi = Z.z[-1].imag - Z.z[-2].imag
    step_lo = Z.z[1].imag - Z.z[0].imag
    top = Z.z[-1].imag + step_hi
    bot = Z.z[0].imag - step_lo
    hi = np.exp(-2 * np.pi * (top - y)) / max(1 - math.exp(-2 * math.pi * step_hi), 1e-300)
    lo = np.exp(-2 * np.pi * (y - bot)) / max(1 - math.exp(-2 * math.pi * step_lo), 1e-300)
    return float(np.max(hi + lo))


def _log_deriv_at_node(Z: PointSet, pos: int) -> complex:
    """log g'(z_k) = log(+-2 pi i) + pi z_k^2/2 + sum_{j != k} log(factor_j(z_k))."""
    zk = Z.z[pos]
    logs = _factor_logs(Z, zk)
    logs[pos] = 0.0
    sign = 1.0 if Z.indices[pos] >= 0 else -1.0
    return complex(np.log(sign * 2j * np.pi) + np.pi * zk * zk / 2 + logs.sum())


def node_product_deriv(Z: PointSet, k: int) -> complex:
    """g'(z_k) by the product rule with the vanishing factor removed."""
    pos = int(np.searchsorted(Z.indices, k))
    if pos >= len(Z) or Z.indices[pos] != k:
        raise DomainError(f"no node with index {k}")
    return complex(np.exp(_log_deriv_at_node(Z, pos)))


def node_product_logderiv(Z: PointSet, z):
    """g'(z)/g(z) = pi z + sum_{k>=0} 2 pi i q_k/(1-q_k) - sum_{k<0} 2 pi i p_k/(1-p_k),
    q_k = e^{2 pi i (z_k - z)}, p_k = e^{2 pi i (z - z_k)}; z must avoid the nodes."""
    z = np.asarray(z, dtype=complex)
    zz = z[..., None]
    pos = Z.indices >= 0
    u = np.where(pos, np.exp(2j * np.pi * (Z.z - zz)), np.exp(2j * np.pi * (zz - Z.z)))
    terms = np.where(pos, 2j * np.pi, -2j * np.pi) * u / (1 - u)
    out = np.pi * z + terms.sum(-1)
    return out if out.ndim else complex(out)


def sample_reconstruct(Z: PointSet, values, z, nu: float = 0.0,
                       pol: TruncationPolicy = DEFAULT_POLICY, return_tail: bool = False):
    """f(z) = 2 pi i sum_k f(z_k) g(z) e^{2 pi i nu (z - z_k)} / (g'(z_k)(1 - e^{2 pi i (z_k - z)})).

    For nu = 0 this is the classical cylinder sampling series; the character factor
    makes the series reproduce F_nu. At a node the node value is returned.
    With ``return_tail`` the pair (value, tail estimate) is returned, where
    the tail is the largest retained boundary term times the geometric factor
    of the omitted nodes.
    """
    values = np.asarray(values, dtype=complex)
    if values.shape != Z.z.shape:
        raise DomainError("one value per node required")
    z = np.asarray(z, dtype=complex)
    flat = np.atleast_1d(z).ravel()
    out = np.zeros(flat.shape, dtype=complex)
    tails = np.zeros(flat.shape)
    log_gp = np.array([_log_deriv_at_node(Z, i) for i in range(len(Z))])
    nz = values != 0
    for i, zi in enumerate(flat):
        hit = np.nonzero(np.abs(Z.z - zi) < 1e-14)[0]
        if hit.size:
            out[i] = values[hit[0]]
            continue
        if not np.any(nz):
            continue
        lg = node_product_log(Z, zi)
        with np.errstate(divide="ignore"):
            lden = np.log(-np.expm1(2j * np.pi * (Z.z[nz] - zi)))
        lt = lg - log_gp[nz] - lden + 2j * np.pi * nu * (zi - Z.z[nz])
        terms = 2j * np.pi * values[nz] * np.exp(lt)
        out[i] = terms.sum()
        ends = np.abs(terms[[0, -1]]) if terms.size > 1 else np.abs(terms)
        tails[i] = float(ends.max()) * max(node_product_tail(Z, zi), 1e-300) if terms.size else 0.0
    out = out.reshape(z.shape) if z.ndim else complex(out[0])
    if return_tail:
        return out, float(tails.max())
    return out


# ------------------------------------------------------------ interpolation

def _factor_series(q, sign: float, order: int):
    """Taylor coefficients in s of 1 - q e^{sign 2 pi i s} up to s^order."""
    m = np.arange(order + 1)
    c = -q * (sign * 2j * np.pi) ** m / np.array([math.factorial(int(j)) for j in m])
    c[0] = 1 - q
    return c


def _series_mul(a, b, order):
    return np.convolve(a, b)[: order + 1]


def _scaled_product(series_list, order):
    """Product of truncated series with a running log scale."""
    acc = np.zeros(order + 1, dtype=complex)
    acc[0] = 1.0
    log_scale = 0.0
    for s in series_list:
        acc = _series_mul(acc, s, order)
        m = float(np.max(np.abs(acc)))
        if m == 0:
            return acc, -np.inf
        acc /= m
        log_scale += math.log(m)
    return acc, log_scale


def _above(Z: PointSet, pos: int, split: str) -> np.ndarray:
    """Mask of nodes whose factor has the form 1 - e^{2 pi i (z_k - z)}."""
    if split == "node":
        return Z.indices > Z.indices[pos]
    if split == "origin":
        return Z.indices >= 0
    raise DomainError(f"unknown split {split!r}")


def _gn_series(Z: PointSet, pos: int, z: complex, order: int, split: str = "node"):
    """Series of g_n(z + s): all node factors except the n-th."""
    above = _above(Z, pos, split)
    series = []
    for j in range(len(Z)):
        if j == pos:
            continue
        if above[j]:
            q = np.exp(2j * np.pi * (Z.z[j] - z))
            series.append(_factor_series(q, -1.0, order))
        else:
            q = np.exp(2j * np.pi * (z - Z.z[j]))
            series.append(_factor_series(q, 1.0, order))
    return _scaled_product(series, order)


def _series_pow(c, e, order):
    out = np.zeros(order + 1, dtype=complex)
    out[0] = 1.0
    for _ in range(e):
        out = _series_mul(out, c, order)
    return out


def _log_gn_at_node(Z: PointSet, pos: int, split: str = "node") -> complex:
    zn = Z.z[pos]
    above = _above(Z, pos, split)
    arg = np.where(above, 2j * np.pi * (Z.z - zn), 2j * np.pi * (zn - Z.z))
    arg[pos] = -np.inf
    with np.errstate(divide="ignore"):
        logs = np.log(-np.expm1(arg))
    logs[pos] = 0.0
    return complex(logs.sum())


def interpolation_term(r: int, Z: PointSet, pos: int, z: complex, normalized: bool = True,
                       weighted: bool = False, split: str = "node", log_extra: float = 0.0) -> complex:
    """Contribution of node pos with a_n = 1.

    normalized=True divides by r! (2 pi i)^r g_n(z_n)^{r+1} so that the
    interpolant takes the value a_n at z_n; normalized=False uses the
    literal constant C_r = (pi^r/r!)^{1/2} (2 pi i)^{-r} and g_n(z_n)^{r-1}.
    weighted=True multiplies by e^{-pi |z|^2/2} inside the exponent.
    split='node' assigns the factor 1 - e^{2 pi i (z_k - z)} to nodes above
    z_n and 1 - e^{2 pi i (z - z_k)} to nodes below; split='origin' uses the
    k >= 0 / k < 0 assignment of the sampling product. log_extra is added to
    the exponent (used for weighted data).
    """
    zn = complex(Z.z[pos])
    yn_floor = math.floor(zn.imag)
    wn = complex(zn.real, yn_floor)
    z = complex(z)
    log_E = (np.pi * (z - zn) * np.conj(wn)
             + np.pi / 2 * ((z - wn) ** 2 - (zn - wn) ** 2))
    b = 2j * np.pi * (z.imag - yn_floor)
    # G_n(z+s) = (1 - e^{2 pi i (z_n - z - s)})^r g_n(z+s)^{r+1}
    gser, glog = _gn_series(Z, pos, z, r, split)
    lead = _series_pow(_factor_series(np.exp(2j * np.pi * (zn - z)), -1.0, r), r, r)
    Gser = _series_mul(lead, _series_pow(gser, r + 1, r), r)
    # e^{b s + pi s^2 / 2}
    ex = np.zeros(r + 1, dtype=complex)
    for i in range(r + 1):
        for j in range(i // 2 + 1):
            ex[i] += b ** (i - 2 * j) * (np.pi / 2) ** j / (math.factorial(i - 2 * j) * math.factorial(j))
    deriv = _series_mul(ex, Gser, r)[r] * math.factorial(r)
    if deriv == 0:
        return 0j
    lgn = _log_gn_at_node(Z, pos, split)
    if normalized:
        log_den = math.log(math.factorial(r)) + r * np.log(2j * np.pi) + (r + 1) * lgn
        log_C = 0.0
    else:
        log_den = (r - 1) * lgn
        log_C = 0.5 * math.log(math.pi ** r / math.factorial(r)) - r * np.log(2j * np.pi)
    total = log_E + (r + 1) * glog + log_C - log_den + np.log(deriv) + log_extra
    if weighted:
        total = total - np.pi * abs(z) ** 2 / 2
    return complex(np.exp(total))


def interpolate_true(r: int, Z: PointSet, values, z, pol: TruncationPolicy = DEFAULT_POLICY,
                     check_density: bool = True, normalized: bool = True, weighted: bool = False,
                     data_weighted: bool = False, split: str = "node"):
    """Interpolant in the true polyanalytic space of order r with f(z_n) = a_n.

    f(z) = sum_n a_n E_n(z) (d_z + 2 pi i (Im z - floor(y_n)))^r G_n(z) / (r! (2 pi i)^r g_n(z_n)^{r+1}),
    E_n(z) = e^{pi (z - z_n) conj(w_n) + pi((z - w_n)^2 - (z_n - w_n)^2)/2}, w_n = x_n + i floor(y_n),
    G_n = (1 - e^{2 pi i (z_n - z)})^r g_n^{r+1}. The shifted derivative is
    the operator obtained from (d_z - pi conj z)^r, evaluated through the
    Taylor coefficients of e^{b s + pi s^2/2} G_n(z + s). With ``weighted``
    the output is f(z) e^{-pi |z|^2/2}, computed without intermediate overflow;
    with ``data_weighted`` the values are read as f(z_n) e^{-pi |z_n|^2/2}.
    The node products g_n are split at z_n (see :func:`interpolation_term`).

    Raises
    ------
    DensityPreconditionError
        If the upper density is not below 1/(r+1).
    """
    if r < 0 or r > 4:
        raise UnsupportedOrderError("interpolation order must be in 0..4")
    values = np.asarray(values, dtype=complex)
    if values.shape != Z.z.shape:
        raise DomainError("one value per node required")
    if check_density:
        ex = exact_density(Z)
        d = ex if ex is not None else beurling_density(Z, r_max=max(1.0, float(np.ptp(Z.z.imag)) or 1.0)).upper
        if not d < 1.0 / (r + 1):
            raise DensityPreconditionError(
                f"upper density {d:.6g} is not below 1/(r+1) = {1.0 / (r + 1):.6g}", density=d)
    z = np.asarray(z, dtype=complex)
    flat = np.atleast_1d(z).ravel()
    out = np.zeros(flat.shape, dtype=complex)
    nz = np.nonzero(values)[0]
    for i, zi in enumerate(flat):
        out[i] = sum(values[p] * interpolation_term(
            r, Z, p, zi, normalized, weighted, split,
            np.pi * abs(Z.z[p]) ** 2 / 2 if data_weighted else 0.0) for p in nz)
    return out.reshape(z.shape) if z.ndim else complex(out[0])


# ------------------------------------------------------------------- I/O

def _complex_column(rows, re_key: str, im_key: str) -> np.ndarray:
    out = np.empty(len(rows), dtype=complex)
    for i, r in enumerate(rows):
        try:
            out[i] = complex(float(r[re_key]), float(r[im_key]))
        except (TypeError, ValueError):
            raise DomainError(f"CSV row {i + 2}: cannot read {re_key},{im_key} as numbers")
    return out


def read_points_csv(path) -> PointSet:
    """Point-set CSV with header x,xi; a lattice is recognised when the points
    share Re and have constant Im spacing."""
    with open(path, newline="") as fh:
        rows = list(csv.DictReader(fh))
    if not rows or "x" not in rows[0] or "xi" not in rows[0]:
        raise DomainError("points CSV needs header x,xi")
    z = _complex_column(rows, "x", "xi")
    z = z[np.argsort(z.imag, kind="stable")]
    if z.size >= 3:
        d = np.diff(z.imag)
        if np.allclose(z.real, z.real[0], atol=1e-14) and np.allclose(d, d[0], rtol=1e-10) and d[0] > 0:
            beta = float(d[0])
            n0 = int(round(z[0].imag / beta))
            off = complex(z[0].real, z[0].imag - n0 * beta)
            if abs(off.imag) < 1e-9:
                off = complex(off.real, 0.0)
            return PointSet.vertical_lattice(beta, n0, n0 + z.size - 1, off)
    return PointSet.finite(z)


def write_points_csv(Z: PointSet, path) -> None:
    with open(path, "w", newline="") as fh:
        w = csv.writer(fh, lineterminator="\n")
        w.writerow(["x", "xi"])
        for v in Z.z:
            w.writerow([repr(float(v.real)), repr(float(v.imag))])


def read_samples_csv(path):
    """Samples CSV with header x,xi,re,im -> (PointSet, values)."""
    with open(path, newline="") as fh:
        rows = list(csv.DictReader(fh))
    need = {"x", "xi", "re", "im"}
    if not rows or not need <= set(rows[0]):
        raise DomainError("samples CSV needs header x,xi,re,im")
    z = _complex_column(rows, "x", "xi")
    v = _complex_column(rows, "re", "im")
    order = np.argsort(z.imag, kind="stable")
    Z = PointSet.finite(z[order])
    return Z, v[order]


__all__ = ["PointSet", "separation", "separation_brute", "beurling_density", "DensityEstimate",
           "exact_density", "node_product_g", "node_product_log", "node_product_deriv",
           "node_product_logderiv", "node_product_tail", "sample_reconstruct",
           "interpolate_true", "interpolation_term", "read_points_csv", "write_points_csv",
           "read_samples_csv"]

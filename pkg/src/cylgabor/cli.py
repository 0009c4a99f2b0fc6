"""Command-line driver.

Subcommands: stft, framebounds, verify, density, reconstruct, dual, kernel.
Reports are JSON and grids/points are CSV; every float is written with 17
significant digits, so repeated runs give byte-identical files.

Exit codes: 0 success, 1 check failure or numerical failure, 2 usage error.
"""

from __future__ import annotations

import argparse
import csv
import io
import json
import math
import sys
from dataclasses import dataclass, field
from typing import Optional

import numpy as np

from . import checks, fock, frames, sampling
from .errors import ConvergenceError, CylGaborError, NotAFrameError
from .qp_signal import Window, gaussian_window, hermite_window, load_signal, tp_window
from .special_fn import TPFactorization, tp_sech_factorization
from .stft import GridSpec, gabor_kernel, stft_grid

# ------------------------------------------------------------- formatting


def fmt(v) -> str:
    """17 significant digits; non-finite values as nan/inf/-inf."""
    v = float(v)
    if math.isnan(v):
        return "nan"
    if math.isinf(v):
        return "inf" if v > 0 else "-inf"
    return format(v, ".17g")


def to_json(obj, indent: int = 2, _level: int = 0) -> str:
    """Deterministic JSON with floats at 17 significant digits (non-finite -> null)."""
    pad = " " * (indent * (_level + 1))
    end = " " * (indent * _level)
    if isinstance(obj, dict):
        if not obj:
            return "{}"
        items = [f"{pad}{json.dumps(str(k))}: {to_json(v, indent, _level + 1)}" for k, v in obj.items()]
        return "{\n" + ",\n".join(items) + "\n" + end + "}"
    if isinstance(obj, (list, tuple)):
        if not obj:
            return "[]"
        items = [pad + to_json(v, indent, _level + 1) for v in obj]
        return "[\n" + ",\n".join(items) + "\n" + end + "]"
    if isinstance(obj, (bool, np.bool_)):
        return "true" if obj else "false"
    if obj is None:
        return "null"
    if isinstance(obj, (int, np.integer)):
        return str(int(obj))
    if isinstance(obj, (float, np.floating)):
        return fmt(obj) if math.isfinite(obj) else "null"
    if isinstance(obj, (complex, np.complexfloating)):
        return to_json([obj.real, obj.imag], indent, _level)
    return json.dumps(str(obj))


def _emit(text: str, out: Optional[str]):
    if out:
        with open(out, "w", newline="") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)


def _csv_text(header, rows) -> str:
    buf = io.StringIO()
    w = csv.writer(buf, lineterminator="\n")
    w.writerow(header)
    for r in rows:
        w.writerow([fmt(v) if isinstance(v, (float, np.floating)) else v for v in r])
    return buf.getvalue()


def _grid_rows(P: np.ndarray, V: np.ndarray):
    return [(float(p.real), float(p.imag), float(v.real), float(v.imag))
            for p, v in zip(P.ravel(), V.ravel())]


# ---------------------------------------------------------------- config

class UsageError(Exception):
    """Bad flags or inputs; mapped to exit code 2."""


@dataclass
class RunConfig:
    command: str
    window: str = "gaussian"
    beta: Optional[str] = None
    nu: float = 0.0
    modes: int = 32
    tol: float = 1e-12
    grid: Optional[str] = None
    points: Optional[str] = None
    signal: Optional[str] = None
    out: Optional[str] = None
    suite: Optional[str] = None
    space: str = "fock-analytic"
    w: str = "0,0"
    extra: dict = field(default_factory=dict)

    def __post_init__(self):
        if not self.tol > 0:
            raise UsageError("--tol must be positive")
        if self.modes < 1:
            raise UsageError("--modes must be positive")

    def beta_value(self):
        if self.beta is None:
            raise UsageError(f"{self.command} needs --beta")
        b = self.beta.strip()
        try:
            val = float(frames.as_fraction(b)) if "/" in b else float(b)
        except (ValueError, ZeroDivisionError, CylGaborError):
            raise UsageError(f"--beta: cannot parse {self.beta!r}")
        if not val > 0:
            raise UsageError("--beta must be positive")
        return b if "/" in b else val

    def grid_spec(self) -> GridSpec:
        if self.grid is None:
            raise UsageError(f"{self.command} needs --grid x0,x1,nx,xi0,xi1,nxi")
        try:
            return GridSpec.parse(self.grid)
        except (ValueError, CylGaborError) as exc:
            raise UsageError(f"--grid: {exc}")

    def need(self, name):
        v = getattr(self, name)
        if v is None:
            raise UsageError(f"{self.command} needs --{name}")
        return v


def parse_window(text: str) -> Window:
    """gaussian | hermite:R | tp:FILE.

    A tp FILE is JSON, either {"c", "gamma", "nu_shift", "nu_j"} or
    {"sech": a, "n_pairs": n} for the truncated sech factorization.
    """
    if text == "gaussian":
        return gaussian_window()
    if text.startswith("hermite:"):
        try:
            r = int(text.split(":", 1)[1])
        except ValueError:
            raise UsageError(f"--window: bad Hermite order in {text!r}")
        return hermite_window(r)
    if text.startswith("tp:"):
        path = text.split(":", 1)[1]
        try:
            with open(path) as fh:
                obj = json.load(fh)
        except OSError as exc:
            raise UsageError(f"--window: {exc}")
        except json.JSONDecodeError as exc:
            raise UsageError(f"--window: malformed JSON at line {exc.lineno}: {exc.msg}")
        if "sech" in obj:
            fac = tp_sech_factorization(float(obj["sech"]), int(obj.get("n_pairs", 4)))
        else:
            try:
                fac = TPFactorization(float(obj["c"]), float(obj["gamma"]),
                                      float(obj.get("nu_shift", 0.0)), tuple(obj.get("nu_j", ())))
            except KeyError as exc:
                raise UsageError(f"--window: tp file lacks field {exc}")
        return tp_window(fac)
    raise UsageError(f"--window must be gaussian, hermite:R or tp:FILE, got {text!r}")


def _parse_complex(text: str) -> complex:
    try:
        re_, im_ = text.split(",")
        return complex(float(re_), float(im_))
    except ValueError:
        raise UsageError(f"expected RE,IM, got {text!r}")


# -------------------------------------------------------------- commands

def cmd_stft(cfg: RunConfig) -> int:
    f = load_signal(cfg.need("signal"))
    g = parse_window(cfg.window)
    grid = cfg.grid_spec()
    V = stft_grid(f, g, grid)
    _emit(_csv_text(["x", "xi", "re", "im"], _grid_rows(grid.points(), V)), cfg.out)
    return 0


def cmd_framebounds(cfg: RunConfig) -> int:
    g = parse_window(cfg.window)
    beta = cfg.beta_value()
    spec = frames.FrameSpec(g, float(frames.as_fraction(beta)) if isinstance(beta, str) else beta,
                            cfg.nu, cfg.modes, cfg.tol)
    b = frames.frame_bounds(spec)
    verdict = frames.sufficient_frame_predicate(cfg.window, beta)
    rep = frames.bounds_report(spec, b, verdict)
    rep = {"window": cfg.window, "beta": spec.beta, "nu": cfg.nu, **rep, "ratio": b.ratio}
    _emit(to_json(rep) + "\n", cfg.out)
    return 0


def cmd_verify(cfg: RunConfig) -> int:
    name = cfg.need("suite")
    if name != "all" and name not in checks.SUITES:
        raise UsageError(f"unknown suite {name!r}; choose from all, {', '.join(checks.SUITES)}")
    rep = checks.run_suite(name)
    _emit(to_json(rep) + "\n", cfg.out)
    return 0 if rep["passed"] else 1


def cmd_density(cfg: RunConfig) -> int:
    try:
        Z = sampling.read_points_csv(cfg.need("points"))
    except OSError as exc:
        raise UsageError(str(exc))
    r_max = float(cfg.extra.get("r_max") or 200.0)
    est = sampling.beurling_density(Z, r_max=r_max)
    rep = {"points": len(Z), "structure": Z.structure, **est.to_dict()}
    try:
        rep["separation"] = sampling.separation(Z)
    except CylGaborError:
        rep["separation"] = None
    _emit(to_json(rep) + "\n", cfg.out)
    return 0


def cmd_reconstruct(cfg: RunConfig) -> int:
    """Rebuild a Fock-space function from samples (x,xi,re,im CSV) on a grid.

    --space fock-analytic uses the sampling formula with character --nu;
    --space true:R uses the true polyanalytic interpolant of order R.
    """
    try:
        Z, vals = sampling.read_samples_csv(cfg.need("points"))
    except OSError as exc:
        raise UsageError(str(exc))
    grid = cfg.grid_spec()
    P = grid.points()
    if cfg.space == "fock-analytic":
        V = sampling.sample_reconstruct(Z, vals, P, nu=cfg.nu)
    elif cfg.space.startswith("true:"):
        V = sampling.interpolate_true(int(cfg.space.split(":", 1)[1]), Z, vals, P)
    else:
        raise UsageError("reconstruct --space must be fock-analytic or true:R")
    _emit(_csv_text(["x", "xi", "re", "im"], _grid_rows(P, np.asarray(V))), cfg.out)
    return 0


def cmd_dual(cfg: RunConfig) -> int:
    """Dual window samples to --out (CSV t,re,im); JSON report on stdout."""
    g = parse_window(cfg.window)
    beta = cfg.beta_value()
    d = frames.dual_window(g, beta, tol=min(cfg.tol, 1e-10))
    b = float(frames.as_fraction(beta)) if isinstance(beta, str) else float(beta)
    res = frames.wexler_raz_residual(g, d, b)
    rows = [(float(t), float(complex(v).real), float(complex(v).imag)) for t, v in zip(d.grid, d.values)]
    text = _csv_text(["t", "re", "im"], rows)
    rep = {"window": cfg.window, "beta": b, "sigma_min": d.sigma_min,
           "wexler_raz_residual": res, "samples": len(rows)}
    if cfg.out:
        _emit(text, cfg.out)
        sys.stdout.write(to_json(rep) + "\n")
    else:
        sys.stdout.write(text)
        sys.stderr.write(to_json(rep) + "\n")
    return 0


KERNELS = ("fock-analytic", "fock-theta", "fock-true:R", "fock-poly:N", "gabor")


def cmd_kernel(cfg: RunConfig) -> int:
    """K(z, w) for z on --grid and fixed --w RE,IM."""
    w = _parse_complex(cfg.w)
    grid = cfg.grid_spec()
    P = grid.points()
    s = cfg.space
    try:
        if s == "fock-analytic":
            V = fock.fock_kernel_analytic(cfg.nu, P, w)
        elif s == "fock-theta":
            V = fock.fock_kernel_theta(cfg.nu, P, w)
        elif s.startswith("fock-true:"):
            V = fock.fock_kernel_true(int(s.split(":", 1)[1]), cfg.nu, P, w)
        elif s.startswith("fock-poly:"):
            V = fock.fock_kernel_poly(int(s.split(":", 1)[1]), cfg.nu, P, w)
        elif s == "gabor":
            V = gabor_kernel(parse_window(cfg.window), cfg.nu, P, w)
        else:
            raise UsageError(f"kernel --space must be one of {', '.join(KERNELS)}")
    except ValueError as exc:
        if isinstance(exc, CylGaborError):
            raise
        raise UsageError(f"--space: {exc}")
    _emit(_csv_text(["x", "xi", "re", "im"], _grid_rows(P, np.asarray(V))), cfg.out)
    return 0


COMMANDS = {"stft": cmd_stft, "framebounds": cmd_framebounds, "verify": cmd_verify,
            "density": cmd_density, "reconstruct": cmd_reconstruct, "dual": cmd_dual,
            "kernel": cmd_kernel}


def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="cylgabor",
                                description="Time-frequency analysis on the flat cylinder.")
    sub = p.add_subparsers(dest="command", required=True)
    for name in COMMANDS:
        sp = sub.add_parser(name, help=(COMMANDS[name].__doc__ or "").strip().split("\n")[0])
        sp.add_argument("--window", default="gaussian", help="gaussian | hermite:R | tp:FILE")
        sp.add_argument("--beta", help="lattice step, rational a/b or real")
        sp.add_argument("--nu", type=float, default=0.0, help="character parameter")
        sp.add_argument("--modes", type=int, default=32, help="coefficient truncation K")
        sp.add_argument("--tol", type=float, default=1e-12, help="truncation tolerance")
        sp.add_argument("--grid", help="x0,x1,nx,xi0,xi1,nxi")
        sp.add_argument("--points", help="points or samples CSV")
        sp.add_argument("--signal", help="signal JSON")
        sp.add_argument("--out", help="output file (default stdout)")
        sp.add_argument("--space", default="fock-analytic", help="kernel or reconstruction space")
        sp.add_argument("--w", default="0,0", help="kernel second argument RE,IM")
        if name == "verify":
            sp.add_argument("suite_pos", nargs="?", metavar="SUITE")
            sp.add_argument("--suite")
        if name == "density":
            sp.add_argument("--r-max", dest="r_max", type=float, default=None)
    return p


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    extra = {}
    if args.command == "verify" and args.suite is None:
        args.suite = args.suite_pos
    if args.command == "density":
        extra["r_max"] = args.r_max
    try:
        cfg = RunConfig(args.command, args.window, args.beta, args.nu, args.modes, args.tol,
                        args.grid, args.points, args.signal, args.out,
                        getattr(args, "suite", None), args.space, args.w, extra)
        return COMMANDS[args.command](cfg)
    except UsageError as exc:
        parser.print_usage(sys.stderr)
        sys.stderr.write(f"cylgabor {args.command}: error: {exc}\n")
        return 2
    except (NotAFrameError, ConvergenceError) as exc:
        sys.stderr.write(f"cylgabor {args.command}: {type(exc).__name__}: {exc}\n")
        return 1
    except (CylGaborError, OSError) as exc:
        sys.stderr.write(f"cylgabor {args.command}: error: {exc}\n")
        return 2


if __name__ == "__main__":
    sys.exit(main())

"""Command-line front end.

Every subcommand writes its tables either to ``--out DIR`` (default taken
from ``$SIXPG_OUT``) or, if neither is set, prints the main table to stdout.
Floats are written with ``repr`` so CSV and JSON round-trip exactly.

Exit codes: 0 ok, 2 bad configuration, 3 numerical failure, 4 a ``--check``
threshold was violated.
"""
from __future__ import annotations

import argparse
import json
import logging
import math
import os
import re
import sys
import warnings
from dataclasses import asdict, dataclass, field, fields
from pathlib import Path

import numpy as np

from . import __version__
from .basis import BasisSet, eval_basis, eval_derivative
from .biorth import gram_matrix, normalized_offdiag
from .discretization import get_discretization
from .eigenvalues import build_table
from .errors import (
    CompatibilityError,
    DomainError,
    EvaluationError,
    RootBracketingError,
    SolverError,
)
from .expansion import (
    SpectralCoefficients,
    chi_coefficient,
    cosine_coefficient,
    expand,
    fit_decay_exponent,
)
from .solver import (
    assemble_semidiscrete,
    evolve,
    model1_exact,
    model1_rhs,
    model2_exact,
    model2_rhs,
    solve_model_problem_1,
    solve_model_problem_2,
)

log = logging.getLogger("sixpg")

OUT_ENV = "SIXPG_OUT"
ERROR_GRID = 2001

EXIT_OK, EXIT_CONFIG, EXIT_NUMERIC, EXIT_CHECK = 0, 2, 3, 4

REFERENCE_EVEN = (4.71352778544, 7.85397668926, 10.9955743090, 14.1371669411,
                  17.2787595947, 20.4203522483)

# thresholds used by --check
CHECKS = {
    "model1": {"max_error": 5e-4, "exponent": (-6.9, 0.3)},
    "model2": {"max_error": 1e-9, "exponent": (-6.9, 0.3)},
}


class ConfigError(ValueError):
    pass


class CheckFailed(RuntimeError):
    pass


# --- physical parameters ------------------------------------------------------

@dataclass(frozen=True)
class PhysicalParameters:
    fluid_density: float
    viscosity: float
    gravity: float
    half_width: float
    equilibrium_height: float
    bending_stiffness: float

    def __post_init__(self):
        for f in fields(self):
            v = getattr(self, f.name)
            if not (isinstance(v, (int, float)) and math.isfinite(v) and v > 0):
                raise DomainError(f"{f.name} must be finite and positive, got {v!r}")
        if self.equilibrium_height / self.half_width > 0.1:
            warnings.warn("h0/l > 0.1: the thin-film approximation is questionable", stacklevel=2)


def nondimensionalize(p: PhysicalParameters):
    """Return ``(bond, timescale)``."""
    bond = p.fluid_density * p.gravity * p.half_width ** 4 / p.bending_stiffness
    timescale = 12.0 * p.viscosity * p.half_width ** 6 / (p.bending_stiffness * p.equilibrium_height ** 3)
    return bond, timescale


# --- output helpers -------------------------------------------------------------

def _fmt(v):
    if isinstance(v, (float, np.floating)):
        return repr(float(v))
    if isinstance(v, (np.integer,)):
        return str(int(v))
    return str(v)


def csv_text(header, rows, comments=()):
    lines = [f"# {c}" for c in comments]
    lines.append(",".join(header))
    lines.extend(",".join(_fmt(v) for v in row) for row in rows)
    return "\n".join(lines) + "\n"


def _jsonable(obj):
    if isinstance(obj, dict):
        return {k: _jsonable(v) for k, v in obj.items()}
    if isinstance(obj, (list, tuple)):
        return [_jsonable(v) for v in obj]
    if isinstance(obj, np.ndarray):
        return [_jsonable(v) for v in obj.tolist()]
    if isinstance(obj, np.floating):
        return float(obj)
    if isinstance(obj, np.integer):
        return int(obj)
    if isinstance(obj, float) and not math.isfinite(obj):
        return repr(obj)
    return obj


def json_text(obj):
    return json.dumps(_jsonable(obj), indent=2, sort_keys=True) + "\n"


def table_text(fmt, header, rows, comments=()):
    if fmt == "json":
        return json_text({"columns": list(header), "rows": [list(r) for r in rows],
                          "notes": list(comments)})
    return csv_text(header, rows, comments)


class Sink:
    """Writes named artifacts to a directory, or the main one to stdout."""

    def __init__(self, out, stream=None):
        self.out = Path(out) if out else None
        self.stream = stream or sys.stdout
        self.written = []
        if self.out:
            self.out.mkdir(parents=True, exist_ok=True)

    def emit(self, name, text, main=True):
        if self.out:
            path = self.out / name
            path.write_text(text)
            self.written.append(str(path))
        elif main:
            self.stream.write(text)


def _ext(fmt):
    return "json" if fmt == "json" else "csv"


# --- function specs -------------------------------------------------------------

_SCALE = re.compile(r"^\s*([-+0-9.eE]+)\s*\*\s*(.+)$")


def parse_function(spec: str):
    """Parse ``x^p``, ``cos-k``, ``model1``, ``model2``, ``0`` or ``file:PATH``, optionally ``A*spec``."""
    m = _SCALE.match(spec)
    if m:
        try:
            a = float(m.group(1))
        except ValueError:
            raise ConfigError(f"bad scale factor in {spec!r}") from None
        g = parse_function(m.group(2))
        return lambda x: a * g(x)
    s = spec.strip()
    if s in ("0", "zero"):
        return lambda x: np.zeros_like(np.asarray(x, dtype=float))
    if s == "model1":
        return model1_rhs
    if s == "model2":
        return model2_rhs
    if mm := re.fullmatch(r"x\^(\d+)", s):
        p = int(mm.group(1))
        return lambda x: np.asarray(x, dtype=float) ** p
    if mm := re.fullmatch(r"cos-(\d+)", s):
        k = int(mm.group(1))
        return lambda x: np.cos(k * math.pi * np.asarray(x, dtype=float))
    if s.startswith("file:"):
        return _file_function(s[5:])
    raise ConfigError(f"unrecognised function spec {spec!r}")


def _file_function(path):
    from scipy.interpolate import CubicSpline
    try:
        data = np.loadtxt(path, delimiter=",", comments="#", ndmin=2)
    except (OSError, ValueError) as exc:
        raise ConfigError(f"cannot read samples from {path}: {exc}") from exc
    if data.shape[1] != 2 or data.shape[0] < 4:
        raise ConfigError(f"{path}: expected at least 4 rows of 'x,value'")
    x, y = data[:, 0], data[:, 1]
    if np.any(np.diff(x) <= 0) or x[0] > -1 or x[-1] < 1:
        raise ConfigError(f"{path}: x must increase strictly and cover [-1, 1]")
    return CubicSpline(x, y)


def parse_initial(spec: str, M: int, disc):
    """``mode:PARITY:m[:amp]`` selects one basis function; anything else is a function spec."""
    if spec.startswith("mode:"):
        parts = spec.split(":")
        if len(parts) not in (3, 4) or parts[1] not in ("even", "odd"):
            raise ConfigError(f"bad mode spec {spec!r}; use mode:even|odd:m[:amplitude]")
        try:
            m = int(parts[2])
            amp = float(parts[3]) if len(parts) == 4 else 1.0
        except ValueError:
            raise ConfigError(f"bad mode spec {spec!r}") from None
        if not (0 <= m <= M) or (parts[1] == "odd" and m == 0):
            raise ConfigError(f"mode index {m} out of range for M={M}")
        uc, us = np.zeros(M + 1), np.zeros(M + 1)
        (uc if parts[1] == "even" else us)[m] = amp
        return SpectralCoefficients(uc, us)
    return expand(parse_function(spec), M, disc)


# --- subcommands ----------------------------------------------------------------

def cmd_eigenvalues(args, sink):
    table = build_table(args.max_index)
    rows = [(e.index, e.parity, format(e.value, ".17g"), e.source) for e in table.entries()
            if not (e.parity == "odd" and e.index == 0)]
    sink.emit(f"eigenvalues.{_ext(args.format)}",
              table_text(args.format, ("index", "parity", "value", "source"), rows,
                         ("dimensionless eigenvalues lambda",)))
    if args.check:
        bad = [m for m, ref in enumerate(REFERENCE_EVEN[:args.max_index], 1)
               if abs(table.even_values[m] - ref) > 1e-9]
        if bad:
            raise CheckFailed(f"even eigenvalues off reference for m = {bad}")


def cmd_basis(args, sink):
    disc_table = build_table(max(args.index, 1))
    b = BasisSet(disc_table).get(args.kind, args.parity, args.index)
    x = np.linspace(-1.0, 1.0, args.samples)
    y = eval_basis(b, x)
    sink.emit(f"basis_{args.kind}_{args.parity}_{args.index}.{_ext(args.format)}",
              table_text(args.format, ("x", "value"), zip(x, y),
                         (f"{args.kind} {args.parity} eigenfunction m={args.index} lambda={b.lam!r}",)))
    if args.check and args.index > 0:
        orders = (0, 1, 5) if args.kind == "trial" else (1, 2, 3)
        for k in orders:
            vals = eval_basis(b, x) if k == 0 else eval_derivative(b, x, k)
            end = eval_basis(b, np.array([-1.0, 1.0])) if k == 0 else eval_derivative(b, np.array([-1.0, 1.0]), k)
            if np.max(np.abs(end)) > 1e-8 * np.max(np.abs(vals)):
                raise CheckFailed(f"boundary condition of order {k} violated: {end}")


def cmd_gram(args, sink):
    disc = get_discretization(args.max_index)
    summary = {"max_index": args.max_index}
    mats = {}
    for parity in ("even", "odd"):
        G = gram_matrix(disc.basis, parity, disc.rule)
        mats[parity] = G
        summary[f"{parity}_max_offdiag"] = float(np.max(normalized_offdiag(G)))
        summary[f"{parity}_diagonal"] = np.diag(G).tolist()
    k = disc.constants
    summary["c0"] = k.c0
    summary["inconsistent"] = [p for p in ("even", "odd") if summary[f"{p}_max_offdiag"] > 1e-9]
    summary["constants_method"] = k.method
    for parity, G in mats.items():
        idx = disc.basis.indices(parity)
        rows = [(parity, i, j, G[a, b]) for a, i in enumerate(idx) for b, j in enumerate(idx)]
        sink.emit(f"gram_{parity}.{_ext(args.format)}",
                  table_text(args.format, ("parity", "trial_index", "test_index", "value"), rows,
                             ("<psi_i, phi_j> by composite Gauss-Legendre",)), main=parity == "even")
    sink.emit("gram_summary.json", json_text(summary), main=False)
    if args.check and summary["inconsistent"]:
        raise CheckFailed(f"normalized Gram off-diagonal exceeds 1e-9 for {summary['inconsistent']}")


def _closed_form_coefficients(spec, M, disc):
    """Closed-form projections for ``x^p`` (odd p <= 7) and ``cos-k``; ``None`` otherwise."""
    if mm := re.fullmatch(r"x\^([1357])", spec):
        p = int(mm.group(1))
        return "odd", np.array([chi_coefficient(p, m) for m in range(1, M + 1)])
    if mm := re.fullmatch(r"cos-([1-9]\d*)", spec):
        k = int(mm.group(1))
        lam = disc.lam("even")
        return "even", np.array([cosine_coefficient(k, m, lam=lam[m]) for m in range(1, M + 1)])
    return None


def cmd_expand(args, sink):
    disc = get_discretization(args.max_index)
    M = args.max_index
    coeffs = expand(parse_function(args.function), M, disc)
    k = disc.constants
    rows = []
    for m in range(M + 1):
        rows.append((m, "even", coeffs.uc[m] * k.c[m], coeffs.uc[m]))
    for m in range(1, M + 1):
        rows.append((m, "odd", coeffs.us[m] * k.s[m], coeffs.us[m]))
    sink.emit(f"expand_coefficients.{_ext(args.format)}",
              table_text(args.format, ("m", "parity", "value", "value/constant"), rows,
                         (f"projections of {args.function} onto test functions",)))
    summary = {"function": args.function, "max_index": M, "m_min": args.m_min,
               "parity_restriction": coeffs.parity_restriction}
    cf = _closed_form_coefficients(args.function, M, disc)
    if cf is not None:
        parity, proj = cf
        q = (coeffs.uc if parity == "even" else coeffs.us)[1:] * (k.c if parity == "even" else k.s)[1:]
        summary["closed_form_max_rel_diff"] = float(np.max(np.abs(proj - q)) / np.max(np.abs(proj)))
    for parity in ("even", "odd"):
        vals = np.abs((coeffs.uc if parity == "even" else coeffs.us)[1:])
        try:
            fit = fit_decay_exponent(vals, args.m_min)
            summary[f"{parity}_fit"] = {"amplitude": fit.amplitude, "exponent": fit.exponent,
                                        "excluded_zeros": fit.excluded_zeros}
        except DomainError as exc:
            summary[f"{parity}_fit"] = {"error": str(exc)}
    sink.emit("expand_summary.json", json_text(summary), main=False)
    if args.check:
        window = {"x^7": ("odd", -1.0), "cos-2": ("even", -1.0)}.get(args.function)
        if window:
            fit = summary[f"{window[0]}_fit"]
            if "exponent" not in fit or abs(fit["exponent"] - window[1]) > 0.2:
                raise CheckFailed(f"decay exponent {fit} outside {window[1]} +- 0.2")


def _solve_problem(problem, M):
    if problem == "model1":
        return solve_model_problem_1(M), model1_exact, "us"
    if problem == "model2":
        return solve_model_problem_2(M), model2_exact, "uc"
    raise ConfigError(f"unknown problem {problem!r}")


def solve_summary(problem, M, m_min=20, grid_points=ERROR_GRID):
    sol, exact, block = _solve_problem(problem, M)
    x = np.linspace(-1.0, 1.0, grid_points)
    u = sol(x)
    err = np.abs(u - exact(x))
    coeffs = getattr(sol.coefficients, block)[1:]
    summary = {"problem": problem, "max_index": M, "grid_points": grid_points,
               "max_error": float(np.max(err)), "m_min": m_min}
    try:
        fit = fit_decay_exponent(np.abs(coeffs), m_min)
        summary["fit"] = {"amplitude": fit.amplitude, "exponent": fit.exponent,
                          "excluded_zeros": fit.excluded_zeros}
    except DomainError as exc:
        summary["fit"] = {"error": str(exc)}
    summary.update({k: float(v) for k, v in sol.diagnostics.items()})
    return sol, x, u, err, coeffs, summary


def _check_solve(summary, strict_fit=True):
    lim = CHECKS[summary["problem"]]
    problems = []
    if summary["max_error"] > lim["max_error"]:
        problems.append(f"max_error {summary['max_error']!r} > {lim['max_error']!r}")
    exp_ref, tol = lim["exponent"]
    fit = summary.get("fit", {})
    if strict_fit and ("exponent" not in fit or abs(fit["exponent"] - exp_ref) > tol):
        problems.append(f"decay exponent {fit.get('exponent')!r} outside {exp_ref} +- {tol}")
    return problems


def cmd_solve(args, sink):
    sol, x, u, err, coeffs, summary = solve_summary(args.problem, args.max_index, args.m_min)
    fmt = args.format
    sink.emit(f"solve_{args.problem}_solution.{_ext(fmt)}",
              table_text(fmt, ("x", "u", "abs_error"), zip(x, u, err),
                         (f"{args.problem} truncated series on a {len(x)}-point grid",)), main=False)
    sink.emit(f"solve_{args.problem}_coefficients.{_ext(fmt)}",
              table_text(fmt, ("m", "coefficient"), zip(range(1, len(coeffs) + 1), coeffs)), main=False)
    sink.emit(f"solve_{args.problem}_summary.json", json_text(summary))
    if args.check:
        problems = _check_solve(summary, strict_fit=args.max_index >= 100)
        if problems:
            raise CheckFailed("; ".join(problems))


def cmd_evolve(args, sink):
    M = args.max_index
    disc = get_discretization(M)
    f = parse_function(args.rhs)
    system = assemble_semidiscrete(M, args.bond, f, time_dependent=False, disc=disc)
    init = parse_initial(args.initial, M, disc)
    traj = evolve(system, init, args.t_final, args.dt, startup_steps=args.startup_steps,
                  record_every=args.record_every)
    header = ["t", "u0"] + [f"c{m}" for m in range(1, M + 1)] + [f"s{m}" for m in range(1, M + 1)]
    rows = [[t, s.uc[0], *s.uc[1:], *s.us[1:]] for t, s in zip(traj.times, traj.states)]
    sink.emit(f"evolve_trajectory.{_ext(args.format)}",
              table_text(args.format, header, rows,
                         (f"bond={args.bond!r} rhs={args.rhs} initial={args.initial} dt={args.dt!r}",
                          "time in units of the viscous-bending timescale")))


def cmd_nondim(args, sink):
    p = PhysicalParameters(args.density, args.viscosity, args.gravity, args.half_width,
                           args.height, args.stiffness)
    bond, ts = nondimensionalize(p)
    out = {"parameters": asdict(p), "bond": bond, "timescale": ts}
    if args.format == "json":
        sink.emit("nondim.json", json_text(out))
    else:
        sink.emit("nondim.csv", csv_text(("quantity", "value", "units"),
                                         [("bond", bond, "1"), ("timescale", ts, "s")]))


# --- convergence study ----------------------------------------------------------

@dataclass(frozen=True)
class StudyConfig:
    problem: str = "model1"
    truncations: tuple = (25, 50, 100)
    m_min: int = 20
    grid_points: int = ERROR_GRID
    output_dir: str | None = None
    max_error: float | None = None   # overrides the default --check threshold

    def __post_init__(self):
        if self.problem not in ("model1", "model2"):
            raise ConfigError(f"unknown problem {self.problem!r}")
        t = tuple(int(m) for m in self.truncations)
        if not t or any(m < 1 for m in t) or any(b <= a for a, b in zip(t, t[1:])):
            raise ConfigError(f"truncations must be positive and strictly increasing, got {t}")
        object.__setattr__(self, "truncations", t)
        if self.m_min < 0 or self.grid_points < 2:
            raise ConfigError("m_min must be >= 0 and grid_points >= 2")

    @classmethod
    def from_json(cls, path, **overrides):
        try:
            raw = json.loads(Path(path).read_text())
        except (OSError, json.JSONDecodeError) as exc:
            raise ConfigError(f"cannot read config {path}: {exc}") from exc
        known = {f.name for f in fields(cls)}
        extra = set(raw) - known
        if extra:
            raise ConfigError(f"unknown config keys {sorted(extra)}")
        raw.update({k: v for k, v in overrides.items() if v is not None})
        try:
            return cls(**raw)
        except TypeError as exc:
            raise ConfigError(str(exc)) from exc


@dataclass
class StudyReport:
    config: StudyConfig
    rows: list = field(default_factory=list)         # (M, max_error, status)
    coefficients: dict = field(default_factory=dict)  # M -> |u_m|
    fits: dict = field(default_factory=dict)

    def summary(self):
        return {"problem": self.config.problem, "m_min": self.config.m_min,
                "grid_points": self.config.grid_points,
                "truncations": list(self.config.truncations),
                "max_error": {str(M): e for M, e, _ in self.rows},
                "status": {str(M): s for M, _, s in self.rows},
                "fits": {str(M): f for M, f in self.fits.items()},
                "error_non_increasing": self.non_increasing()}

    def non_increasing(self):
        errs = [e for _, e, s in self.rows if s == "ok"]
        return all(b <= a for a, b in zip(errs, errs[1:]))


def run_convergence_study(cfg: StudyConfig) -> StudyReport:
    report = StudyReport(cfg)
    for M in cfg.truncations:
        try:
            _, _, _, _, coeffs, s = solve_summary(cfg.problem, M, cfg.m_min, cfg.grid_points)
        except (SolverError, FloatingPointError, DomainError) as exc:
            log.warning("M=%d failed: %s", M, exc)
            report.rows.append((M, math.nan, f"error: {exc}"))
            continue
        report.rows.append((M, s["max_error"], "ok"))
        report.coefficients[M] = np.abs(coeffs)
        report.fits[M] = s["fit"]
    return report


def write_study(report: StudyReport, sink: Sink, fmt="csv"):
    cfg = report.config
    notes = (f"problem={cfg.problem}", "dimensionless; error is the max over a uniform grid")
    coeff_rows = [(M, m, v) for M, vals in report.coefficients.items() for m, v in enumerate(vals, 1)]
    sink.emit(f"study_coefficients.{_ext(fmt)}",
              table_text(fmt, ("M", "m", "abs_coefficient"), coeff_rows, notes), main=False)
    sink.emit(f"study_errors.{_ext(fmt)}",
              table_text(fmt, ("M", "max_error", "status"), report.rows, notes))
    sink.emit("study_summary.json", json_text(report.summary()), main=False)


def cmd_study(args, sink):
    cfg = StudyConfig.from_json(args.config) if args.config else StudyConfig()
    over = {}
    if args.problem:
        over["problem"] = args.problem
    if args.truncations:
        over["truncations"] = tuple(int(v) for v in args.truncations.split(","))
    if args.m_min is not None:
        over["m_min"] = args.m_min
    if over:
        cfg = StudyConfig(**{**asdict(cfg), **over})
    if not sink.out and cfg.output_dir:
        sink = Sink(cfg.output_dir)
    report = run_convergence_study(cfg)
    write_study(report, sink, args.format)
    if args.check:
        problems = []
        if not report.non_increasing():
            problems.append("max error increases with M")
        M, e, status = report.rows[-1]
        lim = cfg.max_error if cfg.max_error is not None else CHECKS[cfg.problem]["max_error"]
        if status != "ok" or not e <= lim:
            problems.append(f"max error {e!r} at M={M} exceeds {lim!r}")
        if M >= 100:
            problems += _check_solve({"problem": cfg.problem, "max_error": e, "fit": report.fits.get(M, {})})
        if problems:
            raise CheckFailed("; ".join(sorted(set(problems))))
    return sink


# --- parser -----------------------------------------------------------------------

def build_parser():
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--out", default=None, help=f"output directory (default ${OUT_ENV}, else stdout)")
    common.add_argument("--format", choices=("csv", "json"), default="csv")
    common.add_argument("--check", action="store_true", help="exit 4 if reference thresholds are missed")
    common.add_argument("-v", "--verbose", action="store_true")

    p = argparse.ArgumentParser(prog="sixpg", description="Sixth-order biorthogonal spectral toolkit")
    p.add_argument("--version", action="version", version=__version__)
    sub = p.add_subparsers(dest="command", required=True)

    s = sub.add_parser("eigenvalues", parents=[common], help="tabulate eigenvalues")
    s.add_argument("--max-index", type=int, default=10)
    s.set_defaults(func=cmd_eigenvalues)

    s = sub.add_parser("basis", parents=[common], help="sample one eigenfunction")
    s.add_argument("--kind", choices=("trial", "test"), default="trial")
    s.add_argument("--parity", choices=("even", "odd"), default="even")
    s.add_argument("--index", type=int, default=1)
    s.add_argument("--samples", type=int, default=401)
    s.set_defaults(func=cmd_basis)

    s = sub.add_parser("gram", parents=[common], help="Gram matrix of trial vs test functions")
    s.add_argument("--max-index", type=int, default=30)
    s.set_defaults(func=cmd_gram)

    s = sub.add_parser("expand", parents=[common], help="expansion coefficients of a function")
    s.add_argument("--function", required=True, help="x^p | cos-k | model1 | model2 | file:PATH")
    s.add_argument("--max-index", type=int, default=100)
    s.add_argument("--m-min", type=int, default=20)
    s.set_defaults(func=cmd_expand)

    s = sub.add_parser("solve", parents=[common], help="solve a manufactured model problem")
    s.add_argument("--problem", choices=("model1", "model2"), required=True)
    s.add_argument("--max-index", type=int, default=100)
    s.add_argument("--m-min", type=int, default=20)
    s.set_defaults(func=cmd_solve)

    s = sub.add_parser("evolve", parents=[common], help="integrate the semi-discrete IBVP")
    s.add_argument("--bond", type=float, default=0.0)
    s.add_argument("--rhs", default="0", help="time-independent forcing spec")
    s.add_argument("--initial", default="0", help="function spec or mode:even|odd:m[:amp]")
    s.add_argument("--t-final", type=float, required=True)
    s.add_argument("--dt", type=float, required=True)
    s.add_argument("--max-index", type=int, default=30)
    s.add_argument("--startup-steps", type=int, default=2)
    s.add_argument("--record-every", type=int, default=1)
    s.set_defaults(func=cmd_evolve)

    s = sub.add_parser("study", parents=[common], help="convergence study over truncations")
    s.add_argument("--config", help="JSON StudyConfig file")
    s.add_argument("--problem", choices=("model1", "model2"))
    s.add_argument("--truncations", help="comma-separated, e.g. 25,50,100")
    s.add_argument("--m-min", type=int)
    s.set_defaults(func=cmd_study)

    s = sub.add_parser("nondim", parents=[common], help="Bond number and timescale from physical data")
    for name, hlp in (("density", "fluid density"), ("viscosity", "dynamic viscosity"),
                      ("gravity", "gravitational acceleration"), ("half-width", "half width l"),
                      ("height", "equilibrium film height h0"), ("stiffness", "bending stiffness B")):
        s.add_argument(f"--{name}", type=float, required=True, help=hlp)
    s.set_defaults(func=cmd_nondim)
    return p


def main(argv=None, stream=None):
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return EXIT_OK if exc.code == 0 else EXIT_CONFIG
    logging.basicConfig(level=logging.INFO if args.verbose else logging.WARNING,
                        format="%(levelname)s %(name)s: %(message)s")
    out = args.out or os.environ.get(OUT_ENV) or None
    err = sys.stderr
    try:
        sink = Sink(out, stream)
        args.func(args, sink)
    except CheckFailed as exc:
        print(f"check failed: {exc}", file=err)
        return EXIT_CHECK
    except (ConfigError, DomainError, CompatibilityError, OSError) as exc:
        print(f"configuration error: {exc}", file=err)
        return EXIT_CONFIG
    except (SolverError, RootBracketingError, EvaluationError, FloatingPointError,
            np.linalg.LinAlgError) as exc:
        print(f"numerical failure: {exc}", file=err)
        return EXIT_NUMERIC
    return EXIT_OK


if __name__ == "__main__":
    sys.exit(main())

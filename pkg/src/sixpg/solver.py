"""Petrov-Galerkin solves for the steady operator and the semi-discrete IBVP.

Conventions
-----------
Steady problems are ``u'''''' - bond * u'' = f`` with trial boundary
conditions. The unsteady problem is ``u_t - bond * u'' - u'''''' = f``, so its
steady state is the steady problem with ``bond -> -bond`` and ``f -> -f``.

Testing against ``phi_m`` and using biorthogonality gives, per parity block,

    K u = -f_hat,   K[m, n] = c_m lam_m**6 delta_mn + bond * beta_nm,

where ``f_hat[m] = <f, phi_m>``. The even zero mode has ``beta_n0 = 0`` for
every trial function, so its equation reads ``0 * u_0 = f_hat[0]``.
"""
from __future__ import annotations

import logging
import math
from dataclasses import dataclass, field
from typing import Callable

import numpy as np
from scipy.linalg import lu_factor, lu_solve
from scipy.linalg.lapack import dgecon

from .discretization import Discretization, get_discretization
from .errors import CompatibilityError, DomainError, SolverError
from .expansion import (
    SpectralCoefficients,
    beta_matrix_checked,
    chi_coefficient,
    cosine_coefficient,
    synthesize,
)
from .biorth import _sample

log = logging.getLogger(__name__)

COND_LIMIT = 1e12
# relative size of <f, 1> (vs. the largest projection) treated as zero
COMPAT_RTOL = 1e-10
MODEL2_BOND = 256.0 * math.pi ** 4


@dataclass(frozen=True)
class SteadyProblem:
    bond: float
    rhs: Callable | SpectralCoefficients
    M: int
    parity_restriction: str = "none"
    u0: float = 0.0   # gauge for the undetermined zero mode

    def __post_init__(self):
        if self.M < 1:
            raise DomainError(f"M must be >= 1, got {self.M}")
        if not math.isfinite(self.bond):
            raise DomainError("bond number must be finite")
        if self.parity_restriction not in ("none", "even-only", "odd-only"):
            raise DomainError(f"unknown parity restriction {self.parity_restriction!r}")


@dataclass(frozen=True)
class SpectralSolution:
    coefficients: SpectralCoefficients
    problem: str
    diagnostics: dict = field(default_factory=dict)

    def __call__(self, x, order: int = 0):
        return synthesize(self.coefficients, x, order=order)


def _projections(rhs, M: int, disc: Discretization):
    """``(pc, ps)`` with ``pc[m] = <f, phi_m^c>`` (``pc[0] = <f, 1>``) and ``ps[m] = <f, phi_m^s>``."""
    if isinstance(rhs, SpectralCoefficients):
        if rhs.M != M:
            raise DomainError(f"rhs coefficients have M={rhs.M}, problem has M={M}")
        k = disc.constants
        ps = rhs.us * np.concatenate([[0.0], k.s[1:M + 1]])
        return rhs.uc * k.c[:M + 1], ps
    vals = _sample(rhs, disc.rule.nodes)
    pc, ps = disc.project(vals)
    return pc[:M + 1].copy(), ps[:M + 1].copy()


def _factor(K: np.ndarray, label: str):
    """LU of ``K`` after row equilibration, with a reciprocal condition estimate."""
    scale = 1.0 / np.max(np.abs(K), axis=1)
    Ks = K * scale[:, None]
    lu, piv = lu_factor(Ks, check_finite=True)
    if np.any(np.diag(lu) == 0.0):
        raise SolverError(f"{label}: singular matrix", condition=math.inf)
    rcond, info = dgecon(lu, np.linalg.norm(Ks, 1), norm="1")
    cond = math.inf if rcond == 0 else 1.0 / rcond
    if info != 0 or cond > COND_LIMIT:
        raise SolverError(f"{label}: condition estimate {cond:.3e} exceeds {COND_LIMIT:.0e}", condition=cond)
    return (lu, piv, scale), cond


def _solve(factors, b):
    lu, piv, scale = factors
    return lu_solve((lu, piv), b * scale)


def steady_matrix(parity: str, M: int, bond: float, disc: Discretization) -> np.ndarray:
    """``K[m-1, n-1] = c_m lam_m**6 delta_mn + bond * beta_nm`` for ``m, n = 1..M``."""
    k = disc.constants
    lam = disc.lam(parity)[1:M + 1]
    diag = (k.c if parity == "even" else k.s)[1:M + 1] * lam ** 6
    K = np.diag(diag)
    if bond != 0.0:
        K = K + bond * beta_matrix_checked(parity, M, disc).entries.T
    return K


def _solve_block(parity, M, bond, rhs, disc, diagnostics):
    if bond == 0.0:
        k = disc.constants
        lam = disc.lam(parity)[1:M + 1]
        diag = (k.c if parity == "even" else k.s)[1:M + 1] * lam ** 6
        diagnostics[f"{parity}_condition"] = float(np.max(diag) / np.min(diag))
        return rhs / diag
    K = steady_matrix(parity, M, bond, disc)
    factors, cond = _factor(K, f"{parity} block")
    diagnostics[f"{parity}_condition"] = cond
    return _solve(factors, rhs)


def solve_steady(p: SteadyProblem, disc: Discretization | None = None) -> SpectralSolution:
    """Solve ``u'''''' - bond u'' = f``; the even zero mode is fixed by ``p.u0``."""
    M = p.M
    disc = disc or get_discretization(M)
    pc, ps = _projections(p.rhs, M, disc)
    if not (np.all(np.isfinite(pc)) and np.all(np.isfinite(ps))):
        raise DomainError("rhs projections are not finite")
    diagnostics = {}
    uc = np.zeros(M + 1)
    us = np.zeros(M + 1)
    if p.parity_restriction != "odd-only":
        scale = max(np.max(np.abs(pc)), np.max(np.abs(ps)), 1e-300)
        if abs(pc[0]) > COMPAT_RTOL * scale:
            raise CompatibilityError(
                f"forcing has <f, 1> = {pc[0]!r}; the steady problem needs it to vanish")
        diagnostics["compatibility_residual"] = float(pc[0])
        uc[0] = p.u0
        b = -pc[1:]
        if p.bond != 0.0 and p.u0 != 0.0:
            b = b - p.bond * p.u0 * disc_zero_row(M, disc)
        uc[1:] = _solve_block("even", M, p.bond, b, disc, diagnostics)
    if p.parity_restriction != "even-only":
        us[1:] = _solve_block("odd", M, p.bond, -ps[1:], disc, diagnostics)
    coeffs = SpectralCoefficients(uc, us, p.parity_restriction)
    return SpectralSolution(coeffs, f"steady(bond={p.bond!r}, M={M})", diagnostics)


def disc_zero_row(M, disc):
    return beta_matrix_checked("even", M, disc).zero_row


# --- the two manufactured problems ----------------------------------------

MODEL1_WEIGHTS = {1: -100800.0, 3: 907200.0, 5: -1995840.0, 7: 1235520.0}


def model1_rhs(x):
    """Sixth derivative of ``x (x^2 - 1)^6``."""
    x = np.asarray(x, dtype=float)
    return sum(w * x ** p for p, w in MODEL1_WEIGHTS.items())


def model1_exact(x):
    x = np.asarray(x, dtype=float)
    return x * (x - 1.0) ** 6 * (x + 1.0) ** 6


def model2_rhs(x):
    return -960.0 * math.pi ** 6 * np.cos(2.0 * math.pi * np.asarray(x, dtype=float))


def model2_exact(x):
    x = np.asarray(x, dtype=float)
    return np.cos(4.0 * math.pi * x) - np.cos(2.0 * math.pi * x)


def solve_model_problem_1(M: int, disc: Discretization | None = None) -> SpectralSolution:
    """``u'''''' = f`` with exact solution ``x (x-1)^6 (x+1)^6``; diagonal in the odd block."""
    if M < 1:
        raise DomainError(f"M must be >= 1, got {M}")
    disc = disc or get_discretization(M)
    rhs = np.array([sum(w * chi_coefficient(p, m) for p, w in MODEL1_WEIGHTS.items())
                    for m in range(1, M + 1)])
    lam = disc.lam("odd")[1:M + 1]
    us = np.zeros(M + 1)
    us[1:] = -rhs / (disc.constants.s[1:M + 1] * lam ** 6)
    coeffs = SpectralCoefficients(np.zeros(M + 1), us, "odd-only")
    return SpectralSolution(coeffs, f"model1(M={M})", {"odd_condition": float(lam[-1] ** 6 / lam[0] ** 6)})


def solve_model_problem_2(M: int, disc: Discretization | None = None) -> SpectralSolution:
    """``u'''''' - 256 pi^4 u'' = -960 pi^6 cos(2 pi x)``; dense even block, ``u_0 = 0``."""
    if M < 1:
        raise DomainError(f"M must be >= 1, got {M}")
    disc = disc or get_discretization(M)
    lam = disc.lam("even")[1:M + 1]
    rhs = 960.0 * math.pi ** 6 * np.array([cosine_coefficient(2, m, lam=l) for m, l in
                                           zip(range(1, M + 1), lam)])
    K = steady_matrix("even", M, MODEL2_BOND, disc)
    factors, cond = _factor(K, "model II")
    uc = np.zeros(M + 1)
    uc[1:] = _solve(factors, rhs)
    coeffs = SpectralCoefficients(uc, np.zeros(M + 1), "even-only")
    return SpectralSolution(coeffs, f"model2(M={M})", {"even_condition": cond})


def strong_residual(sol: SpectralSolution, f: Callable, bond: float, x) -> np.ndarray:
    """``u'''''' - bond u'' - f`` evaluated from the truncated series."""
    c = sol.coefficients
    r = synthesize(c, x, order=6) - np.asarray(f(x), dtype=float)
    if bond:
        r = r - bond * synthesize(c, x, order=2)
    return r


# --- semi-discrete system ---------------------------------------------------

@dataclass(frozen=True)
class SemiDiscreteSystem:
    """``c_l du_l/dt = sum_n A[n, l] u_n + bond beta_0l u_0 + f_l(t)`` per block.

    ``even_matrix[n-1, l-1] = bond beta_nl - c_l lam_l**6 delta_nl`` and the
    odd block is analogous. The zero mode obeys ``c_0 du_0/dt = f_0(t)``.
    ``forcing`` is ``f(x, t)`` or ``None``.
    """

    M: int
    bond: float
    even_matrix: np.ndarray
    odd_matrix: np.ndarray
    zero_mode_constant: float
    zero_coupling: np.ndarray       # bond * beta_0l, l = 1..M
    forcing: Callable | None = None
    time_dependent: bool = True
    disc: Discretization | None = field(default=None, repr=False, compare=False)
    _cache: dict = field(default_factory=dict, repr=False, compare=False)

    @property
    def c(self):
        return self.disc.constants.c[1:self.M + 1]

    @property
    def s(self):
        return self.disc.constants.s[1:self.M + 1]

    def forcing_at(self, t: float):
        """``(f0, fc, fs)`` projections of the forcing at time ``t``."""
        M = self.M
        if self.forcing is None:
            return 0.0, np.zeros(M), np.zeros(M)
        key = ("forcing", None if not self.time_dependent else float(t))
        hit = self._cache.get(key)
        if hit is not None:
            return hit
        f = self.forcing if not self.time_dependent else (lambda x: self.forcing(x, t))
        pc, ps = self.disc.project(_sample(f, self.disc.rule.nodes))
        out = (float(pc[0]), pc[1:M + 1].copy(), ps[1:M + 1].copy())
        if not self.time_dependent:
            self._cache[key] = out
        return out

    def rhs(self, state: SpectralCoefficients, t: float):
        """Time derivatives ``(du0, duc, dus)``."""
        f0, fc, fs = self.forcing_at(t)
        uc, us = state.uc[1:], state.us[1:]
        du0 = f0 / self.zero_mode_constant
        duc = (self.even_matrix.T @ uc + self.zero_coupling * state.u0c + fc) / self.c
        dus = (self.odd_matrix.T @ us + fs) / self.s
        return du0, duc, dus


def assemble_semidiscrete(M: int, bond: float, forcing: Callable | None = None, *,
                          time_dependent: bool = True, disc: Discretization | None = None,
                          beta_method: str = "closed-form") -> SemiDiscreteSystem:
    """Build the block ODE system. With ``time_dependent=False`` ``forcing`` is ``f(x)``."""
    if M < 1:
        raise DomainError(f"M must be >= 1, got {M}")
    if not math.isfinite(bond):
        raise DomainError("bond number must be finite")
    disc = disc or get_discretization(M)
    k = disc.constants
    mats = {}
    zero = np.zeros(M)
    for parity, const in (("even", k.c), ("odd", k.s)):
        lam = disc.lam(parity)[1:M + 1]
        A = -np.diag(const[1:M + 1] * lam ** 6)
        if bond != 0.0:
            if beta_method == "quadrature":
                from .expansion import beta_matrix
                cm = beta_matrix(parity, M, "quadrature", disc)
            else:
                cm = beta_matrix_checked(parity, M, disc)
            A = A + bond * cm.entries
            if parity == "even":
                zero = bond * cm.zero_row
        A.setflags(write=False)
        mats[parity] = A
    zero.setflags(write=False)
    return SemiDiscreteSystem(M, float(bond), mats["even"], mats["odd"], float(k.c0), zero,
                              forcing, time_dependent, disc)


def _step_factors(system: SemiDiscreteSystem, theta: float, dt: float):
    """LU factors of ``C - theta dt A^T`` for both blocks, cached on the system."""
    key = ("lu", theta, dt)
    hit = system._cache.get(key)
    if hit is None:
        hit = {}
        for parity, C, A in (("even", system.c, system.even_matrix), ("odd", system.s, system.odd_matrix)):
            lhs = np.diag(C) - theta * dt * A.T
            hit[parity] = lu_factor(lhs)
        system._cache[key] = hit
    return hit


def _theta_step(system, state, t, dt, theta):
    """One theta-method step (theta = 1/2 trapezoidal, 1 backward Euler)."""
    M = system.M
    f0a, fca, fsa = system.forcing_at(t)
    f0b, fcb, fsb = system.forcing_at(t + dt)
    u0a = state.u0c
    u0b = u0a + dt * ((1 - theta) * f0a + theta * f0b) / system.zero_mode_constant
    fac = _step_factors(system, theta, dt)
    out = {}
    for parity, C, A, u, fa, fb in (
            ("even", system.c, system.even_matrix, state.uc[1:], fca, fcb),
            ("odd", system.s, system.odd_matrix, state.us[1:], fsa, fsb)):
        ga, gb = fa, fb
        if parity == "even":
            ga = fa + system.zero_coupling * u0a
            gb = fb + system.zero_coupling * u0b
        rhs = C * u + (1 - theta) * dt * (A.T @ u) + dt * ((1 - theta) * ga + theta * gb)
        out[parity] = lu_solve(fac[parity], rhs)
    uc = np.concatenate([[u0b], out["even"]])
    us = np.concatenate([[0.0], out["odd"]])
    if not (np.all(np.isfinite(uc)) and np.all(np.isfinite(us))):
        raise SolverError("time step produced non-finite state")
    return SpectralCoefficients(uc, us)


def step_ibvp(system: SemiDiscreteSystem, state: SpectralCoefficients, t: float, dt: float,
              scheme: str = "trapezoidal") -> SpectralCoefficients:
    """Advance ``state`` from ``t`` to ``t + dt`` (trapezoidal by default)."""
    if not dt > 0 or not math.isfinite(dt):
        raise DomainError(f"dt must be positive and finite, got {dt!r}")
    if state.M != system.M:
        raise DomainError(f"state has M={state.M}, system has M={system.M}")
    theta = {"trapezoidal": 0.5, "backward-euler": 1.0}.get(scheme)
    if theta is None:
        raise DomainError(f"unknown scheme {scheme!r}")
    try:
        return _theta_step(system, state, t, dt, theta)
    except np.linalg.LinAlgError as exc:
        raise SolverError(f"factorization failed: {exc}") from exc


@dataclass(frozen=True)
class Trajectory:
    times: np.ndarray
    states: tuple

    @property
    def final(self) -> SpectralCoefficients:
        return self.states[-1]


def evolve(system: SemiDiscreteSystem, initial: SpectralCoefficients, t_final: float, dt: float,
           *, startup_steps: int = 2, record_every: int = 1) -> Trajectory:
    """Integrate to ``t_final``.

    The first step is replaced by ``startup_steps`` backward-Euler substeps
    (Rannacher startup), which damps the stiff modes that the trapezoidal
    rule alone would leave oscillating. ``startup_steps=0`` gives plain
    trapezoidal stepping.
    """
    if not t_final > 0 or not dt > 0:
        raise DomainError("t_final and dt must be positive")
    n = int(round(t_final / dt))
    if n < 1 or not math.isclose(n * dt, t_final, rel_tol=1e-9):
        raise DomainError("t_final must be a whole multiple of dt")
    state, t = initial, 0.0
    times, states = [0.0], [initial]
    for i in range(n):
        if i == 0 and startup_steps > 0:
            h = dt / startup_steps
            for j in range(startup_steps):
                state = step_ibvp(system, state, t + j * h, h, "backward-euler")
        else:
            state = step_ibvp(system, state, t, dt)
        t = (i + 1) * dt
        if (i + 1) % record_every == 0 or i == n - 1:
            times.append(t)
            states.append(state)
    return Trajectory(np.array(times), tuple(states))


def steady_state(system: SemiDiscreteSystem, u0: float = 0.0) -> SpectralCoefficients:
    """Fixed point of the (time-independent) semi-discrete system."""
    if system.time_dependent and system.forcing is not None:
        raise DomainError("steady state needs time-independent forcing")
    f0, fc, fs = system.forcing_at(0.0)
    if abs(f0) > COMPAT_RTOL * max(np.max(np.abs(fc), initial=0), np.max(np.abs(fs), initial=0), 1e-300):
        raise CompatibilityError(f"zero-mode forcing {f0!r} grows without bound")
    M = system.M
    uc = np.zeros(M + 1)
    us = np.zeros(M + 1)
    uc[0] = u0
    fe, _ = _factor(-system.even_matrix.T, "even block")
    uc[1:] = _solve(fe, fc + system.zero_coupling * u0)
    fo, _ = _factor(-system.odd_matrix.T, "odd block")
    us[1:] = _solve(fo, fs)
    return SpectralCoefficients(uc, us)

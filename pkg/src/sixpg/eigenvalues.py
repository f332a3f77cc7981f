"""Even and odd eigenvalues of the clamped sixth-order problem.

Odd eigenvalues are exactly ``m*pi``. Even eigenvalues are the positive roots of

    cos(2 lam) + 2 cos(lam) cosh(sqrt(3) lam) - 3 = 0,

which we solve in the scaled form ``G(lam) = 0`` (the relation divided by
``cosh(sqrt(3) lam)``) so the residual stays bounded for any ``lam``.
"""
from __future__ import annotations

import math
from dataclasses import dataclass, field
from typing import Literal

import numpy as np

from .errors import DomainError, RootBracketingError

SQRT3 = math.sqrt(3.0)
DEFAULT_TOL = 1e-13
ROOT_FIND_CUTOFF = 6

Parity = Literal["even", "odd"]
Source = Literal["exact-closed-form", "root-found", "asymptotic"]


@dataclass(frozen=True)
class Eigenvalue:
    parity: Parity
    index: int
    value: float
    source: Source


def _sech_sqrt3(lam: float) -> tuple[float, float]:
    """Return ``(sech(sqrt3*lam), tanh(sqrt3*lam))`` without overflow."""
    e = math.exp(-2.0 * SQRT3 * lam)
    return 2.0 * math.exp(-SQRT3 * lam) / (1.0 + e), (1.0 - e) / (1.0 + e)


def _check_lambda(lam) -> float:
    lam = float(lam)
    if not math.isfinite(lam) or lam <= 0.0:
        raise DomainError(f"eigenvalue argument must be finite and positive, got {lam!r}")
    return lam


def even_residual_scaled(lam: float) -> float:
    """Scaled even eigenvalue relation ``G(lam)``; zero exactly at even eigenvalues."""
    lam = _check_lambda(lam)
    sech, _ = _sech_sqrt3(lam)
    return math.cos(2.0 * lam) * sech + 2.0 * math.cos(lam) - 3.0 * sech


def even_residual_derivative(lam: float) -> float:
    """Analytic derivative ``dG/dlam``."""
    lam = _check_lambda(lam)
    sech, tanh = _sech_sqrt3(lam)
    return (
        -2.0 * math.sin(2.0 * lam) * sech
        - SQRT3 * math.cos(2.0 * lam) * sech * tanh
        - 2.0 * math.sin(lam)
        + 3.0 * SQRT3 * sech * tanh
    )


def _bisect_newton(lo: float, hi: float, tol: float) -> float:
    g_lo, g_hi = even_residual_scaled(lo), even_residual_scaled(hi)
    if g_lo == 0.0:
        return lo
    if g_hi == 0.0:
        return hi
    if g_lo * g_hi > 0.0:
        raise RootBracketingError(
            f"no sign change of the scaled even residual on [{lo}, {hi}]: G={g_lo}, {g_hi}"
        )
    # coarse bisection to land well inside the basin of the root
    for _ in range(30):
        mid = 0.5 * (lo + hi)
        g_mid = even_residual_scaled(mid)
        if g_mid == 0.0:
            return mid
        if g_lo * g_mid < 0.0:
            hi, g_hi = mid, g_mid
        else:
            lo, g_lo = mid, g_mid
    x = 0.5 * (lo + hi)
    for _ in range(50):
        g = even_residual_scaled(x)
        if abs(g) <= tol:
            return x
        step = g / even_residual_derivative(x)
        x_new = x - step
        if not lo <= x_new <= hi:
            break
        if x_new == x:
            return x
        x = x_new
    # Newton left the bracket or stalled: finish by bisection
    while hi - lo > 4.0 * np.spacing(hi):
        mid = 0.5 * (lo + hi)
        g_mid = even_residual_scaled(mid)
        if abs(g_mid) <= tol:
            return mid
        if g_lo * g_mid < 0.0:
            hi = mid
        else:
            lo, g_lo = mid, g_mid
    return 0.5 * (lo + hi)


def even_eigenvalue(m: int, tol: float = DEFAULT_TOL, cutoff: int = ROOT_FIND_CUTOFF) -> Eigenvalue:
    if m < 0:
        raise DomainError(f"even eigenvalue index must be >= 0, got {m}")
    if tol < np.finfo(float).eps:
        raise DomainError(f"tolerance {tol} is below machine epsilon")
    if m == 0:
        return Eigenvalue("even", 0, 0.0, "exact-closed-form")
    centre = (m + 0.5) * math.pi
    if m >= cutoff:
        return Eigenvalue("even", m, centre, "asymptotic")
    root = _bisect_newton(centre - 0.5 * math.pi, centre + 0.5 * math.pi, tol)
    return Eigenvalue("even", m, root, "root-found")


def odd_eigenvalue(m: int) -> Eigenvalue:
    # cos(lam) - cosh(sqrt3 lam) < 0 for lam > 0, so only sin(lam) = 0 contributes
    if m < 1:
        raise DomainError(f"odd eigenvalue index must be >= 1, got {m}")
    return Eigenvalue("odd", m, m * math.pi, "exact-closed-form")


@dataclass(frozen=True)
class EigenvalueTable:
    """Even eigenvalues for indices ``0..M`` and odd ones for ``1..M``.

    ``even_values`` and ``odd_values`` are read-only arrays of length ``M+1``;
    ``odd_values[0]`` is NaN because there is no odd zero mode.
    """

    max_index: int
    even: tuple[Eigenvalue, ...]
    odd: tuple[Eigenvalue, ...]
    root_find_cutoff: int = ROOT_FIND_CUTOFF
    even_values: np.ndarray = field(init=False, repr=False, compare=False)
    odd_values: np.ndarray = field(init=False, repr=False, compare=False)

    def __post_init__(self):
        if len(self.even) != self.max_index + 1 or len(self.odd) != self.max_index:
            raise ValueError("table lengths inconsistent with max_index")
        ev = np.array([e.value for e in self.even])
        od = np.concatenate([[np.nan], [e.value for e in self.odd]])
        ev.setflags(write=False)
        od.setflags(write=False)
        object.__setattr__(self, "even_values", ev)
        object.__setattr__(self, "odd_values", od)

    def values(self, parity: Parity) -> np.ndarray:
        return self.even_values if parity == "even" else self.odd_values

    def get(self, parity: Parity, m: int) -> Eigenvalue:
        if parity == "even":
            return self.even[m]
        if m < 1:
            raise DomainError("odd eigenvalues start at index 1")
        return self.odd[m - 1]

    def entries(self):
        """All eigenvalues ordered by (index, parity), even before odd."""
        out = [self.even[0]]
        for m in range(1, self.max_index + 1):
            out.append(self.even[m])
            out.append(self.odd[m - 1])
        return out


def build_table(M: int, tol: float = DEFAULT_TOL, cutoff: int = ROOT_FIND_CUTOFF) -> EigenvalueTable:
    if M < 1:
        raise DomainError(f"max index must be >= 1, got {M}")
    even = tuple(even_eigenvalue(m, tol, cutoff) for m in range(M + 1))
    odd = tuple(odd_eigenvalue(m) for m in range(1, M + 1))
    return EigenvalueTable(M, even, odd, cutoff)

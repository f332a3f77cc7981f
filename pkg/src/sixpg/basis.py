"""Trial and test eigenfunctions on [-1, 1] with exact derivatives.

Every eigenfunction with index >= 1 is a sum of products ``trig(alpha x) *
hyp(a x)``. Hyperbolic factors are carried as ratios ``cosh(a x)/cosh(a)`` and
``sinh(a x)/cosh(a)`` (see :class:`ScaledHyperbolic`), with the matching
``cosh(a)`` folded into the O(1) amplitude. Internally each product is
expanded into terms ``Re(A * exp(z x - shift))`` with ``Re(z x - shift) <= 0``
on the interval, so the k-th derivative is just ``Re(A z**k exp(z x - shift))``.

Amplitudes follow the trial normalisation in which the leading ``cos(lam x)``
or ``sin(lam x)`` has unit coefficient; test functions use the same
convention.
"""
from __future__ import annotations

import math
from dataclasses import dataclass, field
from typing import Literal

import numpy as np
from numpy.polynomial import Polynomial

from .eigenvalues import SQRT3, Eigenvalue, EigenvalueTable
from .errors import DomainError

Kind = Literal["trial", "test"]

# atol on |x| > 1 checks, so grids built as linspace(-1, 1) pass
_X_SLACK = 1e-12


@dataclass(frozen=True)
class ScaledHyperbolic:
    """Bounded forms of ``cosh(a x)/cosh(a)`` and ``sinh(a x)/cosh(a)``.

    ``e2 = exp(-2a)`` is the only global exponential; every x-dependent
    exponential has a non-positive exponent for ``|x| <= 1``.
    """

    a: float

    @property
    def e2(self) -> float:
        return math.exp(-2.0 * self.a)

    @property
    def tanh(self) -> float:
        e2 = self.e2
        return (1.0 - e2) / (1.0 + e2)

    def cosh_ratio(self, x):
        x = np.asarray(x, dtype=float)
        return (np.exp(self.a * (x - 1.0)) + np.exp(-self.a * (x + 1.0))) / (1.0 + self.e2)

    def sinh_ratio(self, x):
        x = np.asarray(x, dtype=float)
        return (np.exp(self.a * (x - 1.0)) - np.exp(-self.a * (x + 1.0))) / (1.0 + self.e2)

    def exp_terms(self, hyp: str):
        """``[(weight, rate, shift)]`` with ``hyp(a x)/cosh(a) = sum w exp(rate x - shift)``."""
        w = 1.0 / (1.0 + self.e2)
        sign = 1.0 if hyp == "cosh" else -1.0
        return [(w, self.a, self.a), (sign * w, -self.a, self.a)]


def _check_x(x):
    x = np.asarray(x, dtype=float)
    if np.any(np.abs(x) > 1.0 + _X_SLACK) or not np.all(np.isfinite(x)):
        raise DomainError("basis functions are defined on [-1, 1] only")
    return x


def _trial_even_amplitudes(lam):
    """Amplitudes of cos(lam x/2) ch(x) and sin(lam x/2) sh(x) for psi_m^c."""
    a = 0.5 * SQRT3 * lam
    e = math.exp(-2.0 * a)
    t = (1.0 - e) / (1.0 + e)
    half = 0.5 * lam
    c, s = math.cos(half), math.sin(half)
    tan_h = s / c
    # cos(lam/2) cosh(a)^2 / (sqrt3 sin(lam) - sinh(2a)), scaled by exp(-2a)
    k = c * (1.0 + e) ** 2 / (2.0 * (2.0 * SQRT3 * e * math.sin(lam) - 1.0 + e * e))
    amp_cc = -2.0 * SQRT3 * math.cos(lam) * tan_h - 2.0 * (math.cos(lam) - 2.0) * t
    amp_ss = (-3.0 * tan_h + s * s * tan_h - 1.5 * math.sin(lam)
              + 2.0 * SQRT3 * math.cos(lam) * t)
    return k * amp_cc, k * amp_ss


def _trial_odd_amplitudes(lam):
    """Amplitudes of sin(lam x/2) ch(x) and cos(lam x/2) sh(x) for psi_m^s."""
    a = 0.5 * SQRT3 * lam
    e = math.exp(-2.0 * a)
    t = (1.0 - e) / (1.0 + e)
    c, s = math.cos(0.5 * lam), math.sin(0.5 * lam)
    return -2.0 * c ** 3, -2.0 * s ** 3 / t


def _test_even_amplitudes(mu):
    """Amplitudes of sin(mu x/2) sh(x) and cos(mu x/2) ch(x) for phi_m^c."""
    a = 0.5 * SQRT3 * mu
    e = math.exp(-2.0 * a)
    t = (1.0 - e) / (1.0 + e)
    c, s = math.cos(0.5 * mu), math.sin(0.5 * mu)
    ratio = (1.0 + e) ** 2 / (2.0 * (2.0 * e * math.cos(mu) - 1.0 - e * e))
    amp_ss = 2.0 * math.sin(mu) * (c * t - SQRT3 * s) * ratio
    amp_cc = 2.0 * c * (SQRT3 * c * s * t + s * s) / (s * s + c * c * t * t)
    return amp_ss, amp_cc


def _test_odd_amplitudes(mu):
    """Amplitudes of sin(mu x/2) ch(x) and cos(mu x/2) sh(x) for phi_m^s."""
    a = 0.5 * SQRT3 * mu
    e = math.exp(-2.0 * a)
    t = (1.0 - e) / (1.0 + e)
    c, s = math.cos(0.5 * mu), math.sin(0.5 * mu)
    ratio = (1.0 + e) ** 2 / (2.0 * (2.0 * e * math.cos(mu) + 1.0 + e * e))
    amp_sc = 2.0 * math.cos(mu) * (c - SQRT3 * s * t) * ratio
    amp_cs = -math.cos(mu) * (s * t + SQRT3 * c) / (s * s * t * t + c * c)
    return amp_sc, amp_cs


@dataclass(frozen=True)
class BasisFunction:
    kind: Kind
    parity: Literal["even", "odd"]
    index: int
    eigenvalue: Eigenvalue
    amps: np.ndarray = field(init=False, repr=False, compare=False)
    rates: np.ndarray = field(init=False, repr=False, compare=False)
    shifts: np.ndarray = field(init=False, repr=False, compare=False)
    poly: Polynomial | None = field(init=False, repr=False, compare=False)

    def __post_init__(self):
        if self.kind not in ("trial", "test"):
            raise DomainError(f"unknown kind {self.kind!r}")
        if self.parity not in ("even", "odd"):
            raise DomainError(f"unknown parity {self.parity!r}")
        if self.index < 0 or (self.parity == "odd" and self.index < 1):
            raise DomainError(f"invalid index {self.index} for parity {self.parity}")
        if self.eigenvalue.parity != self.parity or self.eigenvalue.index != self.index:
            raise DomainError("eigenvalue does not match (parity, index)")
        terms, poly = self._build_terms()
        amps = np.array([t[0] for t in terms], dtype=complex)
        rates = np.array([t[1] for t in terms], dtype=complex)
        shifts = np.array([t[2] for t in terms], dtype=float)
        for arr in (amps, rates, shifts):
            arr.setflags(write=False)
        object.__setattr__(self, "amps", amps)
        object.__setattr__(self, "rates", rates)
        object.__setattr__(self, "shifts", shifts)
        object.__setattr__(self, "poly", poly)

    @property
    def lam(self) -> float:
        return self.eigenvalue.value

    def _build_terms(self):
        if self.index == 0:
            if self.kind == "trial":
                return [], Polynomial([1.0, 0.0, -2.0, 0.0, 1.0])
            return [], Polynomial([1.0])
        lam = self.lam
        half = 0.5 * lam
        hyp = ScaledHyperbolic(0.5 * SQRT3 * lam)
        terms = []

        def add(coef, trig, alpha, hname):
            # trig(alpha x) = Re(u exp(i alpha x)), u = 1 for cos and -i for sin
            u = 1.0 if trig == "cos" else -1j
            if hname is None:
                terms.append((coef * u, 1j * alpha, 0.0))
                return
            for w, rate, shift in hyp.exp_terms(hname):
                terms.append((coef * u * w, rate + 1j * alpha, shift))

        if self.parity == "even":
            add(1.0, "cos", lam, None)
            if self.kind == "trial":
                amp_cc, amp_ss = _trial_even_amplitudes(lam)
            else:
                amp_ss, amp_cc = _test_even_amplitudes(lam)
            add(amp_cc, "cos", half, "cosh")
            add(amp_ss, "sin", half, "sinh")
        else:
            add(1.0, "sin", lam, None)
            if self.kind == "trial":
                amp_sc, amp_cs = _trial_odd_amplitudes(lam)
            else:
                amp_sc, amp_cs = _test_odd_amplitudes(lam)
            add(amp_sc, "sin", half, "cosh")
            add(amp_cs, "cos", half, "sinh")
        return terms, None

    def _derivative(self, x, order):
        out = np.zeros(np.shape(x))
        if self.poly is not None:
            out = out + self.poly.deriv(order)(x) if order else out + self.poly(x)
        if len(self.amps):
            xs = np.asarray(x, dtype=float)[..., None]
            z = self.rates
            val = self.amps * z ** order * np.exp(z * xs - self.shifts)
            out = out + val.real.sum(axis=-1)
        return out

    def __call__(self, x):
        return eval_basis(self, x)

    def derivative(self, x, order):
        return eval_derivative(self, x, order)


def eval_basis(b: BasisFunction, x):
    """Value of the eigenfunction at ``x`` (scalar or array)."""
    x = _check_x(x)
    out = b._derivative(x, 0)
    return float(out) if out.ndim == 0 else out


def eval_derivative(b: BasisFunction, x, order: int):
    """Exact derivative of order 1..6 at ``x``."""
    if not isinstance(order, (int, np.integer)) or not 1 <= order <= 6:
        raise DomainError(f"derivative order must be an integer in 1..6, got {order!r}")
    x = _check_x(x)
    out = b._derivative(x, int(order))
    return float(out) if out.ndim == 0 else out


def ode_residual(b: BasisFunction, x):
    """``b''''''(x) + lam**6 b(x)``; vanishes up to rounding for every member."""
    return eval_derivative(b, x, 6) + b.lam ** 6 * eval_basis(b, x)


def sup_norm(b: BasisFunction, order: int = 0, samples: int = 4001) -> float:
    """Max of |b^(order)| on a uniform grid (endpoints included)."""
    x = np.linspace(-1.0, 1.0, samples)
    vals = eval_basis(b, x) if order == 0 else eval_derivative(b, x, order)
    return float(np.max(np.abs(vals)))


class BasisSet:
    """All trial and test functions up to index ``M``, built eagerly.

    Construction is the only mutation; afterwards the set is read-only.
    """

    def __init__(self, table: EigenvalueTable):
        self.table = table
        self.M = table.max_index
        self._funcs = {}
        for kind in ("trial", "test"):
            for m in range(self.M + 1):
                self._funcs[(kind, "even", m)] = BasisFunction(kind, "even", m, table.even[m])
            for m in range(1, self.M + 1):
                self._funcs[(kind, "odd", m)] = BasisFunction(kind, "odd", m, table.odd[m - 1])

    def get(self, kind: Kind, parity: str, m: int) -> BasisFunction:
        try:
            return self._funcs[(kind, parity, m)]
        except KeyError:
            raise DomainError(f"no {kind} {parity} basis function with index {m} (M={self.M})") from None

    def trial(self, parity, m):
        return self.get("trial", parity, m)

    def test(self, parity, m):
        return self.get("test", parity, m)

    def indices(self, parity):
        return range(0, self.M + 1) if parity == "even" else range(1, self.M + 1)

    def matrix(self, kind: Kind, parity: str, x, order: int = 0, indices=None) -> np.ndarray:
        """Rows are basis functions, columns are sample points."""
        idx = self.indices(parity) if indices is None else indices
        x = _check_x(x)
        rows = [self.get(kind, parity, m)._derivative(x, order) for m in idx]
        return np.array(rows)

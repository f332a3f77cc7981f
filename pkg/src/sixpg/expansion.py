"""Spectral analysis/synthesis in the biorthogonal basis and closed-form coefficient families.

Generic expansion goes through quadrature. Three families have closed forms:
odd powers of x (``chi``), ``cos(k pi x)`` (``cs``) and the second-derivative
coupling ``beta_nm = <psi_n'', phi_m>``. Each closed form has a quadrature
counterpart so the two can be compared.
"""
from __future__ import annotations

import logging
import math
from dataclasses import dataclass
from typing import Callable, Literal

import numpy as np

from .basis import eval_basis, _check_x
from .biorth import SQRT3, QuadratureRule, default_rule, inner_product
from .discretization import Discretization, get_discretization
from .eigenvalues import even_eigenvalue, odd_eigenvalue
from .errors import DomainError

log = logging.getLogger(__name__)

Restriction = Literal["none", "even-only", "odd-only"]
PARITY_RTOL = 1e-13


@dataclass(frozen=True)
class SpectralCoefficients:
    """Coefficients of ``u = u0c psi_0 + sum uc[n] psi_n^c + us[n] psi_n^s``.

    ``uc`` and ``us`` have length ``M+1``; ``uc[0]`` is the zero-mode
    coefficient and ``us[0]`` is always 0.
    """

    uc: np.ndarray
    us: np.ndarray
    parity_restriction: Restriction = "none"

    def __post_init__(self):
        uc = np.array(self.uc, dtype=float)
        us = np.array(self.us, dtype=float)
        if uc.shape != us.shape or uc.ndim != 1:
            raise ValueError("uc and us must be 1-D arrays of equal length M+1")
        us[0] = 0.0
        if self.parity_restriction == "even-only" and np.any(us != 0):
            raise ValueError("even-only coefficients must have us == 0")
        if self.parity_restriction == "odd-only" and np.any(uc != 0):
            raise ValueError("odd-only coefficients must have uc == 0")
        uc.setflags(write=False)
        us.setflags(write=False)
        object.__setattr__(self, "uc", uc)
        object.__setattr__(self, "us", us)

    @property
    def M(self) -> int:
        return len(self.uc) - 1

    @property
    def u0c(self) -> float:
        return float(self.uc[0])

    @classmethod
    def zeros(cls, M, parity_restriction: Restriction = "none"):
        return cls(np.zeros(M + 1), np.zeros(M + 1), parity_restriction)

    def block(self, parity):
        return self.uc if parity == "even" else self.us


def expand(f: Callable, M: int, disc: Discretization | None = None) -> SpectralCoefficients:
    """Project ``f`` onto the test functions and divide by the constants."""
    disc = disc or get_discretization(M)
    if disc.M < M:
        raise DomainError(f"discretization has M={disc.M} < {M}")
    nodes = disc.rule.nodes
    from .biorth import _sample
    vals = _sample(f, nodes)
    pc, ps = disc.project(vals)
    k = disc.constants
    uc = pc[:M + 1] / k.c[:M + 1]
    us = np.zeros(M + 1)
    us[1:] = ps[1:M + 1] / k.s[1:M + 1]
    scale = max(float(np.max(np.abs(vals))), 1e-300)
    thresh = PARITY_RTOL * scale
    restriction = "none"
    if np.all(np.abs(us) < thresh):
        restriction, us = "even-only", np.zeros(M + 1)
    elif np.all(np.abs(uc) < thresh):
        restriction, uc = "odd-only", np.zeros(M + 1)
    return SpectralCoefficients(uc, us, restriction)


def synthesize(coeffs: SpectralCoefficients, x, disc: Discretization | None = None, order: int = 0):
    """Evaluate the truncated series (or its derivative of ``order``) at ``x``."""
    disc = disc or get_discretization(coeffs.M)
    x = _check_x(x)
    scalar = x.ndim == 0
    xs = np.atleast_1d(x)
    M = coeffs.M
    out = np.zeros(xs.shape)
    if np.any(coeffs.uc):
        out += coeffs.uc @ disc.basis.matrix("trial", "even", xs, order, indices=range(M + 1))
    if np.any(coeffs.us[1:]):
        out += coeffs.us[1:] @ disc.basis.matrix("trial", "odd", xs, order, indices=range(1, M + 1))
    return float(out[0]) if scalar else out


# --- odd powers of x ------------------------------------------------------

def chi_closed_form(p: int, lam):
    lam = np.asarray(lam, dtype=float)
    E = np.exp(-SQRT3 * lam)
    cl = np.cos(lam)
    # sinh(sqrt3 lam) / (cos lam + cosh(sqrt3 lam))
    r = (1.0 - E * E) / (2.0 * E * cl + 1.0 + E * E)
    if p == 1:
        return 2 * SQRT3 * cl * r / lam ** 2 - 6 * cl / lam
    if p == 3:
        return 6 * SQRT3 * cl * r / lam ** 2 - 6 * cl / lam
    if p == 5:
        return 10 * SQRT3 * (lam ** 4 - 24) * cl * r / lam ** 6 - 6 * cl / lam
    if p == 7:
        return 2 * cl / lam ** 8 * (7 * SQRT3 * (lam ** 6 - 360 * lam ** 2 - 720) * r
                                    - 3 * lam * (lam ** 6 - 5040))
    raise DomainError(f"chi coefficients exist for p in {{1, 3, 5, 7}}, got {p!r}")


def chi_coefficient(p: int, m: int) -> float:
    """``<x**p, phi_m^s>`` for ``p`` in {1, 3, 5, 7}."""
    if p not in (1, 3, 5, 7):
        raise DomainError(f"chi coefficients exist for p in {{1, 3, 5, 7}}, got {p!r}")
    if m < 1:
        raise DomainError(f"chi index must be >= 1, got {m}")
    return float(chi_closed_form(p, m * math.pi))


def chi_quadrature(p: int, m: int, rule: QuadratureRule | None = None) -> float:
    from .basis import BasisFunction
    phi = BasisFunction("test", "odd", m, odd_eigenvalue(m))
    rule = rule or default_rule(phi.lam)
    return inner_product(lambda x: x ** p, phi, rule)


# --- cosines --------------------------------------------------------------

def cosine_closed_form(k: int, lam):
    lam = np.asarray(lam, dtype=float)
    return 6.0 * (-1) ** k * lam ** 5 * np.sin(lam) / (lam ** 6 - math.pi ** 6 * k ** 6)


def cosine_coefficient(k: int, m: int, lam: float | None = None) -> float:
    """``<cos(k pi x), phi_m^c>``; zero for ``m = 0``."""
    if k == 0:
        raise DomainError("k = 0 (a constant) is handled by the zero mode")
    if m < 0:
        raise DomainError(f"index must be >= 0, got {m}")
    if m == 0:
        return 0.0
    lam = even_eigenvalue(m).value if lam is None else lam
    return float(cosine_closed_form(k, lam))


def cosine_quadrature(k: int, m: int, rule: QuadratureRule | None = None) -> float:
    from .basis import BasisFunction
    phi = BasisFunction("test", "even", m, even_eigenvalue(m))
    rule = rule or default_rule(max(phi.lam, abs(k) * math.pi))
    return inner_product(lambda x: np.cos(k * math.pi * x), phi, rule)


# --- second-derivative coupling -------------------------------------------

def _sc(lam):
    E = np.exp(-SQRT3 * lam)
    # exp(-sqrt3 lam) * cosh(sqrt3 lam), exp(-sqrt3 lam) * sinh(sqrt3 lam)
    return E, (1.0 + E * E) / 2.0, (1.0 - E * E) / 2.0


def beta_even_offdiag(l, u):
    """``beta_nm^c`` for ``lambda_n = l != mu_m = u`` (both at even eigenvalues)."""
    l = np.asarray(l, dtype=float)
    u = np.asarray(u, dtype=float)
    El, chl, shl = _sc(l)
    Eu, chu, shu = _sc(u)
    su, cu = np.sin(u), np.cos(u)
    sl, cl = np.sin(l), np.cos(l)
    x1 = SQRT3 * np.cos(2 * u) * Eu + 3 * su * shu - SQRT3 * cu * chu
    x2 = np.cos(2 * u) * Eu + SQRT3 * su * shu - cu * chu
    y = SQRT3 * np.sin(2 * l) * El - 3 * cl * shl + SQRT3 * sl * chl
    du = cu * Eu - chu
    dl = SQRT3 * sl * El - shl
    num = (2 * l * u ** 4 * (np.cos(2 * l) * El * x1 + 3 * sl * shl * x2 - cl * chl * x1)
           + 6 * u ** 5 * su * du * y)
    return l ** 2 * num / (du * (l ** 6 - u ** 6) * dl)


def beta_even_diag(l):
    l = np.asarray(l, dtype=float)
    E, ch, sh = _sc(l)
    E2 = E * E
    ch2, sh2 = (1.0 + E2 * E2) / 2.0, (1.0 - E2 * E2) / 2.0
    s1, c1 = np.sin(l), np.cos(l)
    s2, c2 = np.sin(2 * l), np.cos(2 * l)
    s3, c3 = np.sin(3 * l), np.cos(3 * l)
    br = (SQRT3 * (7 * np.cos(4 * l) - 31 * c2) * E2
          + SQRT3 * E * ch * (31 * c1 + c3)
          - SQRT3 * ch2 * (1 + 7 * c2)
          - 3 * E * sh * (s3 - 31 * s1)
          - 21 * s2 * sh2
          + 6 * l * (SQRT3 * s2 * E2 + SQRT3 * E * ch * (s1 - s3) - sh2 - (c3 - 3 * c1) * E * sh))
    return l * br / (12 * (c1 * E - ch) * (SQRT3 * s1 * E - sh))


def beta_odd_offdiag(l, u):
    """``beta_nm^s`` for ``lambda_n = l != mu_m = u`` (odd eigenvalues)."""
    l = np.asarray(l, dtype=float)
    u = np.asarray(u, dtype=float)
    El, chl, shl = _sc(l)
    Eu, chu, shu = _sc(u)
    su, cu = np.sin(u), np.cos(u)
    sl, cl = np.sin(l), np.cos(l)
    al = cl * El - chl
    zu = SQRT3 * np.sin(2 * u) * Eu - 3 * cu * shu + SQRT3 * su * chu
    bu = cu * Eu - chu
    wu = np.sin(2 * u) * Eu + SQRT3 * cu * shu + su * chu
    du = cu * Eu + chu
    vl = SQRT3 * (np.cos(2 * l) + 3) * El - 6 * sl * shl - 4 * SQRT3 * cl * chl
    t = (2 * l ** 5 * sl * al * zu
         + 2 * SQRT3 * u ** 2 * l ** 3 * su * sl * bu * al
         + 12 * u ** 4 * l * cl * shl * wu
         + 3 * u ** 5 * cu * du * vl)
    return l ** 2 * t / ((1.0 - El * El) * du * (l ** 6 - u ** 6))


def beta_odd_diag(l):
    l = np.asarray(l, dtype=float)
    E, ch, sh = _sc(l)
    E2 = E * E
    ch2, sh2 = (1.0 + E2 * E2) / 2.0, (1.0 - E2 * E2) / 2.0
    s1, c1 = np.sin(l), np.cos(l)
    s3, c3 = np.sin(3 * l), np.cos(3 * l)
    br = (6 * (s1 + s3) * E * sh
          - 42 * np.sin(2 * l) * sh2
          + SQRT3 * (8 * np.cos(2 * l) + 13 * np.cos(4 * l) + 3) * E2
          + 22 * SQRT3 * (c1 - c3) * E * ch
          + 24 * l * sh * (E * (9 * c1 + c3) + 2 * ch)
          - 8 * SQRT3 * (2 * np.cos(2 * l) + 1) * ch2)
    return -4.0 * l * br / ((1.0 - E2) * 96.0 * (c1 * E + ch))


@dataclass(frozen=True)
class CouplingMatrix:
    """``entries[n-1, m-1] = beta_nm = <psi_n'', phi_m>`` for ``n, m = 1..M``.

    For the even family ``zero_row[m-1] = <psi_0'', phi_m^c>``; the column for
    the constant test function is identically zero and is not stored.
    """

    parity: str
    entries: np.ndarray
    method: str
    zero_row: np.ndarray | None = None

    @property
    def M(self) -> int:
        return self.entries.shape[0]


def beta_closed_form_matrix(parity: str, lam_row, lam_col) -> np.ndarray:
    """Closed-form beta for all pairs; the diagonal branch is used exactly where indices coincide."""
    l = np.asarray(lam_row, dtype=float)[:, None]
    u = np.asarray(lam_col, dtype=float)[None, :]
    n = min(l.shape[0], u.shape[1])
    off_fn, diag_fn = ((beta_even_offdiag, beta_even_diag) if parity == "even"
                       else (beta_odd_offdiag, beta_odd_diag))
    with np.errstate(divide="ignore", invalid="ignore"):
        out = off_fn(l, u)
    idx = np.arange(n)
    out[idx, idx] = diag_fn(np.asarray(lam_row, dtype=float)[:n])
    return out


def _zero_row(disc: Discretization, M: int) -> np.ndarray:
    x, w = disc.rule.nodes, disc.rule.weights
    return disc.test_even[1:M + 1] @ (w * (12.0 * x * x - 4.0))


def beta_quadrature_matrix(parity: str, M: int, disc: Discretization) -> np.ndarray:
    x, w = disc.rule.nodes, disc.rule.weights
    idx = range(1, M + 1)
    d2 = disc.basis.matrix("trial", parity, x, order=2, indices=idx)
    test = (disc.test_even if parity == "even" else disc.test_odd)[1:M + 1]
    return (d2 * w) @ test.T


def beta_matrix(parity: str, M: int, method: str = "closed-form",
                disc: Discretization | None = None) -> CouplingMatrix:
    if parity not in ("even", "odd"):
        raise DomainError(f"unknown parity {parity!r}")
    if M < 1:
        raise DomainError("M must be >= 1")
    disc = disc or get_discretization(M)
    if method == "closed-form":
        lam = disc.lam(parity)[1:M + 1]
        entries = beta_closed_form_matrix(parity, lam, lam)
    elif method == "quadrature":
        entries = beta_quadrature_matrix(parity, M, disc)
    else:
        raise DomainError(f"unknown method {method!r}")
    if not np.all(np.isfinite(entries)):
        raise FloatingPointError("non-finite coupling coefficient")
    entries.setflags(write=False)
    zero_row = _zero_row(disc, M) if parity == "even" else None
    return CouplingMatrix(parity, entries, method, zero_row)


# --- consistency between closed forms and quadrature ----------------------

@dataclass(frozen=True)
class Discrepancy:
    family: str
    indices: tuple
    closed_form: float
    quadrature: float

    @property
    def rel(self):
        return abs(self.closed_form - self.quadrature) / max(abs(self.quadrature), 1e-300)


def closed_form_report(max_index: int = 30, rtol: float = 1e-8, disc: Discretization | None = None,
                       cos_k=(1, 2, 3)):
    """Compare every closed-form family with quadrature on indices ``<= max_index``.

    Returns ``(worst, discrepancies)`` where ``worst`` maps family name to the
    largest relative difference seen. For beta the difference is measured
    against the largest entry of the row, since individual entries can be
    tiny compared with their neighbours.
    """
    from .biorth import c_closed_form, s_closed_form
    disc = disc or get_discretization(max_index)
    M = max_index
    k = disc.rule.weights
    x = disc.rule.nodes
    worst = {}
    bad = []

    def record(family, idx, cf, q, scale=None):
        scale = abs(q) if scale is None else scale
        r = abs(cf - q) / max(scale, 1e-300)
        worst[family] = max(worst.get(family, 0.0), r)
        if r > rtol:
            d = Discrepancy(family, idx, float(cf), float(q))
            bad.append(d)
            log.warning("closed form %s%s = %r vs quadrature %r", family, idx, cf, q)

    ms = range(1, M + 1)
    psi_c = disc.basis.matrix("trial", "even", x, indices=ms)
    psi_s = disc.basis.matrix("trial", "odd", x, indices=ms)
    qc = np.einsum("ij,ij->i", psi_c * k, disc.test_even[1:M + 1])
    qs = np.einsum("ij,ij->i", psi_s * k, disc.test_odd[1:M + 1])
    lc, ls = disc.lam("even")[1:M + 1], disc.lam("odd")[1:M + 1]
    for m, cf, q in zip(ms, c_closed_form(lc), qc):
        record("c", (m,), cf, q)
    for m, cf, q in zip(ms, s_closed_form(ls), qs):
        record("s", (m,), cf, q)
    for p in (1, 3, 5, 7):
        q = disc.test_odd[1:M + 1] @ (k * x ** p)
        for m, cf, qq in zip(ms, chi_closed_form(p, ls), q):
            record(f"chi{p}", (m,), cf, qq)
    for kk in cos_k:
        q = disc.test_even[1:M + 1] @ (k * np.cos(kk * math.pi * x))
        for m, cf, qq in zip(ms, cosine_closed_form(kk, lc), q):
            record(f"cs{kk}", (m,), cf, qq)
    for parity in ("even", "odd"):
        cf = beta_matrix(parity, M, "closed-form", disc).entries
        q = beta_matrix(parity, M, "quadrature", disc).entries
        for n in range(M):
            scale = np.max(np.abs(q[n]))
            for m in range(M):
                record(f"beta_{parity}", (n + 1, m + 1), cf[n, m], q[n, m], scale)
    return worst, bad


def beta_matrix_checked(parity: str, M: int, disc: Discretization | None = None,
                        max_index: int = 30, rtol: float = 1e-8) -> CouplingMatrix:
    """Closed-form beta with the leading block replaced by quadrature wherever they disagree."""
    disc = disc or get_discretization(M)
    cf = beta_matrix(parity, M, "closed-form", disc)
    k = min(M, max_index)
    q = beta_quadrature_matrix(parity, k, disc)
    scale = np.max(np.abs(q), axis=1, keepdims=True)
    mismatch = np.abs(cf.entries[:k, :k] - q) > rtol * scale
    if not mismatch.any():
        return cf
    entries = cf.entries.copy()
    for n, m in zip(*np.nonzero(mismatch)):
        log.warning("beta_%s[%d,%d]: closed form %r replaced by quadrature %r",
                    parity, n + 1, m + 1, cf.entries[n, m], q[n, m])
    entries[:k, :k][mismatch] = q[mismatch]
    entries.setflags(write=False)
    return CouplingMatrix(parity, entries, "closed-form+quadrature", cf.zero_row)


# --- decay fits -------------------------------------------------------------

@dataclass(frozen=True)
class DecayFit:
    amplitude: float
    exponent: float
    used: int
    excluded_zeros: int

    def __iter__(self):
        yield self.amplitude
        yield self.exponent


def fit_decay_exponent(values, m_min: int = 20, indices=None, m_max: int | None = None) -> DecayFit:
    """Least-squares fit of ``log|v| = log A + p log m`` over ``m_min < m (<= m_max)``.

    ``values[i]`` belongs to ``m = indices[i]`` (default ``i + 1``). Exact
    zeros are dropped and counted; negative values are an error.
    """
    v = np.asarray(values, dtype=float)
    m = np.arange(1, len(v) + 1) if indices is None else np.asarray(indices, dtype=float)
    sel = m > m_min
    if m_max is not None:
        sel &= m <= m_max
    v, m = v[sel], m[sel]
    if np.any(v < 0) or not np.all(np.isfinite(v)):
        raise DomainError("decay fit needs non-negative finite values (pass magnitudes)")
    zeros = int(np.count_nonzero(v == 0))
    if zeros:
        log.info("decay fit: excluding %d exact zeros", zeros)
    keep = v > 0
    v, m = v[keep], m[keep]
    if len(v) < 10:
        raise DomainError(f"decay fit needs at least 10 positive entries beyond m_min, got {len(v)}")
    slope, intercept = np.polyfit(np.log(m), np.log(v), 1)
    return DecayFit(float(np.exp(intercept)), float(slope), len(v), zeros)


def synthesize_function(coeffs: SpectralCoefficients, disc: Discretization | None = None):
    """Vectorised callable ``x -> synthesize(coeffs, x)``."""
    return lambda x: synthesize(coeffs, x, disc)


__all__ = [
    "SpectralCoefficients", "CouplingMatrix", "DecayFit", "Discrepancy",
    "expand", "synthesize", "chi_coefficient", "chi_quadrature", "cosine_coefficient",
    "cosine_quadrature", "beta_matrix", "beta_matrix_checked", "closed_form_report",
    "fit_decay_exponent", "eval_basis",
]

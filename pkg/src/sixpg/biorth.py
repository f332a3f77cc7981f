"""Composite Gauss-Legendre inner products and biorthogonality constants."""
from __future__ import annotations

import logging
import math
import warnings
from dataclasses import dataclass, field
from typing import Callable, Literal

import numpy as np

from .basis import BasisFunction, BasisSet
from .eigenvalues import SQRT3, EigenvalueTable, build_table, even_eigenvalue, odd_eigenvalue
from .errors import ClosedFormMismatch, DomainError, EvaluationError, InconsistencyError

log = logging.getLogger(__name__)

C0 = 16.0 / 15.0
NODES_PER_PANEL = 16
MIN_PANELS = 8
# closed forms are cross-checked against quadrature up to this index
VERIFY_MAX_INDEX = 30
VERIFY_RTOL = 1e-9
UNIT_FROM_INDEX = 7

Method = Literal["closed-form", "quadrature"]


@dataclass(frozen=True)
class QuadratureRule:
    panels: int
    nodes_per_panel: int = NODES_PER_PANEL
    nodes: np.ndarray = field(init=False, repr=False, compare=False)
    weights: np.ndarray = field(init=False, repr=False, compare=False)

    def __post_init__(self):
        if self.panels < 1 or self.nodes_per_panel < 1:
            raise DomainError("panels and nodes_per_panel must be positive")
        ref_x, ref_w = np.polynomial.legendre.leggauss(self.nodes_per_panel)
        edges = np.linspace(-1.0, 1.0, self.panels + 1)
        half = 0.5 * np.diff(edges)
        mid = 0.5 * (edges[1:] + edges[:-1])
        nodes = (mid[:, None] + half[:, None] * ref_x[None, :]).ravel()
        weights = (half[:, None] * ref_w[None, :]).ravel()
        nodes.setflags(write=False)
        weights.setflags(write=False)
        object.__setattr__(self, "nodes", nodes)
        object.__setattr__(self, "weights", weights)

    def refined(self, factor: int = 2) -> "QuadratureRule":
        return QuadratureRule(self.panels * factor, self.nodes_per_panel)

    def integrate(self, values) -> float:
        return float(np.dot(self.weights, values))


def panels_for(lam_max: float) -> int:
    return max(MIN_PANELS, math.ceil(2.0 * lam_max / math.pi))


def default_rule(lam_max: float) -> QuadratureRule:
    """Enough panels for ~16 nodes per wavelength of the fastest eigenfunction."""
    return QuadratureRule(panels_for(lam_max))


def rule_for_table(table: EigenvalueTable) -> QuadratureRule:
    M = table.max_index
    return default_rule(max(table.even_values[M], table.odd_values[M]))


def _sample(f, nodes):
    vals = np.asarray(f(nodes), dtype=float)
    if vals.shape == ():
        vals = np.full(nodes.shape, float(vals))
    bad = ~np.isfinite(vals)
    if bad.any():
        i = int(np.argmax(bad))
        raise EvaluationError(f"non-finite sample {vals[i]!r} at node x={nodes[i]!r}", node=float(nodes[i]))
    return vals


def inner_product(f: Callable, g: Callable, rule: QuadratureRule) -> float:
    """L2 inner product on [-1, 1]; ``f`` and ``g`` must accept arrays."""
    return rule.integrate(_sample(f, rule.nodes) * _sample(g, rule.nodes))


# --- closed forms ---------------------------------------------------------

def _scaled_hyp(lam):
    """exp(-sqrt3 lam) and the hyperbolics of sqrt3 lam / 2 sqrt3 lam scaled by it."""
    E = np.exp(-SQRT3 * lam)
    E2 = E * E
    return E, (1.0 + E2) / 2.0, (1.0 - E2) / 2.0, (1.0 + E2 * E2) / 2.0, (1.0 - E2 * E2) / 2.0


def c_closed_form(lam):
    """Even biorthogonality constant <psi_m^c, phi_m^c> evaluated at eigenvalue ``lam``."""
    lam = np.asarray(lam, dtype=float)
    E, ch1, sh1, ch2, sh2 = _scaled_hyp(lam)
    sl, cl = np.sin(lam), np.cos(lam)
    t = (1.0 - E) / (1.0 + E)  # tanh(sqrt3 lam / 2)
    h = np.sin(lam / 2) ** 2 + np.cos(lam / 2) ** 2 * t * t
    br = (
        4 * SQRT3 * cl * cl * ch2
        - 2 * SQRT3 * E * ch1 * (-18 * lam * sl + 7 * cl + np.cos(3 * lam))
        - 2 * SQRT3 * E * E * (9 * lam * np.sin(2 * lam) - 7 * np.cos(2 * lam) + np.cos(4 * lam))
        + 6 * E * sh1 * (7 * sl - np.sin(3 * lam) + 2 * lam * np.cos(3 * lam))
        - 6 * (lam + np.sin(2 * lam)) * sh2
    )
    return 8.0 * br / (24.0 * lam * h * (1.0 + E) ** 2 * (2 * SQRT3 * E * sl - 1.0 + E * E))


def s_closed_form(lam):
    """Odd biorthogonality constant <psi_m^s, phi_m^s> evaluated at eigenvalue ``lam``."""
    lam = np.asarray(lam, dtype=float)
    E, ch1, sh1, ch2, sh2 = _scaled_hyp(lam)
    sl, cl = np.sin(lam), np.cos(lam)
    s2 = np.sin(2 * lam)
    br = (
        -2 * SQRT3 * np.cos(2 * lam) * ch1 * ch1
        + SQRT3 * s2 * E * ch1 * (2 * sl - 3 * lam * cl)
        + SQRT3 * (E * E * (3 * lam * s2 + np.cos(4 * lam)) + ch2)
        + 6 * lam * cl ** 3 * E * sh1
        - 3 * lam * sh2
    )
    return -8.0 * br / ((1.0 - E * E) * 12.0 * lam * (2 * E * cl + 1.0 + E * E))


def _pair(parity, m):
    if parity == "even":
        ev = even_eigenvalue(m)
    elif parity == "odd":
        ev = odd_eigenvalue(m)
    else:
        raise DomainError(f"unknown parity {parity!r}")
    return BasisFunction("trial", parity, m, ev), BasisFunction("test", parity, m, ev)


def _rel_diff(a, b):
    return abs(a - b) / max(abs(a), abs(b), 1e-300)


def biorth_constant(parity: str, m: int, method: Method = "closed-form", *,
                    rule: QuadratureRule | None = None, fast_path: bool = True,
                    verify: bool = True, strict: bool = False) -> float:
    """``c_m`` (even) or ``s_m`` (odd), ``m >= 1``.

    With ``fast_path`` the value is exactly 1 for ``m >= 7``. The closed-form
    path is cross-checked against quadrature for ``m <= 30`` when ``verify`` is
    set; on disagreement a :class:`ClosedFormMismatch` warning is issued (or
    :class:`InconsistencyError` raised if ``strict``) and the quadrature value
    is returned.
    """
    if parity not in ("even", "odd"):
        raise DomainError(f"unknown parity {parity!r}")
    if m < 1:
        raise DomainError(f"biorthogonality constant index must be >= 1, got {m} (c0 is {C0})")
    if method not in ("closed-form", "quadrature"):
        raise DomainError(f"unknown method {method!r}")
    if fast_path and m >= UNIT_FROM_INDEX:
        return 1.0
    psi, phi = _pair(parity, m)
    if rule is None:
        rule = default_rule(psi.lam)
    if method == "quadrature":
        return inner_product(psi, phi, rule)
    value = float(c_closed_form(psi.lam) if parity == "even" else s_closed_form(psi.lam))
    if verify and m <= VERIFY_MAX_INDEX:
        quad = inner_product(psi, phi, rule)
        if _rel_diff(value, quad) > VERIFY_RTOL:
            msg = (f"closed-form {'c' if parity == 'even' else 's'}_{m} = {value!r} "
                   f"disagrees with quadrature {quad!r}")
            if strict:
                raise InconsistencyError(msg)
            warnings.warn(msg, ClosedFormMismatch, stacklevel=2)
            log.warning(msg)
            return quad
    return value


@dataclass(frozen=True)
class BiorthConstants:
    """``c[0] = c0``, ``c[m] = c_m`` and ``s[m] = s_m`` for ``m = 1..M`` (``s[0]`` is NaN)."""

    c: np.ndarray
    s: np.ndarray
    method: Method

    @property
    def c0(self) -> float:
        return float(self.c[0])

    @property
    def M(self) -> int:
        return len(self.c) - 1

    def get(self, parity, m):
        return float(self.c[m] if parity == "even" else self.s[m])

    def array(self, parity):
        return self.c if parity == "even" else self.s


def compute_constants(table: EigenvalueTable, method: Method = "closed-form", *,
                      basis: BasisSet | None = None, rule: QuadratureRule | None = None,
                      fast_path: bool = True) -> BiorthConstants:
    M = table.max_index
    c = np.empty(M + 1)
    s = np.full(M + 1, np.nan)
    c[0] = C0
    ms = np.arange(1, M + 1)
    if method == "closed-form":
        c[1:] = c_closed_form(table.even_values[1:])
        s[1:] = s_closed_form(table.odd_values[1:])
    elif method == "quadrature":
        basis = basis or BasisSet(table)
        rule = rule or rule_for_table(table)
        for parity, arr in (("even", c), ("odd", s)):
            psi = basis.matrix("trial", parity, rule.nodes, indices=ms)
            phi = basis.matrix("test", parity, rule.nodes, indices=ms)
            arr[1:] = np.einsum("ij,ij->i", psi * rule.weights, phi)
    else:
        raise DomainError(f"unknown method {method!r}")
    if fast_path:
        c[UNIT_FROM_INDEX:] = 1.0
        s[UNIT_FROM_INDEX:] = 1.0
    if np.any(c == 0) or np.any(s[1:] == 0):
        raise InconsistencyError("a biorthogonality constant vanished")
    c.setflags(write=False)
    s.setflags(write=False)
    return BiorthConstants(c, s, method)


# --- Gram matrix and adjointness ------------------------------------------

def gram_matrix(basis: BasisSet, parity: str, rule: QuadratureRule) -> np.ndarray:
    """``G[l, m] = <psi_l, phi_m>`` over the parity's index range (even includes 0)."""
    psi = basis.matrix("trial", parity, rule.nodes)
    phi = basis.matrix("test", parity, rule.nodes)
    return (psi * rule.weights) @ phi.T


def normalized_offdiag(G: np.ndarray) -> np.ndarray:
    d = np.sqrt(np.abs(np.diag(G)))
    N = np.abs(G) / np.outer(d, d)
    np.fill_diagonal(N, 0.0)
    return N


def gram_offdiag_max(M: int, rule: QuadratureRule | None = None, basis: BasisSet | None = None) -> float:
    """Largest normalized ``|<psi_l, phi_m>|``, ``l != m``, over both parities."""
    if M < 2:
        raise DomainError("gram_offdiag_max needs M >= 2")
    basis = basis or BasisSet(build_table(M))
    rule = rule or rule_for_table(basis.table)
    return max(float(normalized_offdiag(gram_matrix(basis, p, rule)).max()) for p in ("even", "odd"))


def cross_parity_spot_checks(basis: BasisSet, rule: QuadratureRule, count: int = 3, seed: int = 0) -> float:
    """Max |<psi_l^c, phi_m^s>| and |<psi_l^s, phi_m^c>| over a few random pairs."""
    rng = np.random.default_rng(seed)
    worst = 0.0
    for _ in range(count):
        l, m = rng.integers(1, basis.M + 1, size=2)
        worst = max(worst,
                    abs(inner_product(basis.trial("even", int(l)), basis.test("odd", int(m)), rule)),
                    abs(inner_product(basis.trial("odd", int(l)), basis.test("even", int(m)), rule)))
    return worst


def adjointness_residual(l: int, m: int, parities=("even", "even"), *, basis: BasisSet | None = None,
                         rule: QuadratureRule | None = None, relative: bool = False) -> float:
    """``|<L psi_l, phi_m> - <psi_l, M phi_m>|`` with ``L = M = -d^6/dx^6``.

    With ``relative`` the difference is divided by the larger of the two
    integrals of the absolute integrands, which stays meaningful when both
    inner products vanish (``l != m``).
    """
    if basis is None:
        basis = BasisSet(build_table(max(l, m, 1)))
    psi = basis.trial(parities[0], l)
    phi = basis.test(parities[1], m)
    rule = rule or default_rule(max(psi.lam, phi.lam))
    x, w = rule.nodes, rule.weights
    a = -psi._derivative(x, 6) * phi._derivative(x, 0)
    b = psi._derivative(x, 0) * -phi._derivative(x, 6)
    diff = abs(np.dot(w, a) - np.dot(w, b))
    if relative:
        diff /= max(np.dot(w, np.abs(a)), np.dot(w, np.abs(b)))
    return float(diff)


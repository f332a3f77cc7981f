"""Everything that depends only on the truncation M, built once and shared."""
from __future__ import annotations

from functools import lru_cache

import numpy as np

from .basis import BasisSet
from .biorth import BiorthConstants, QuadratureRule, compute_constants, rule_for_table
from .eigenvalues import DEFAULT_TOL, EigenvalueTable, build_table


class Discretization:
    """Eigenvalues, basis, quadrature rule and constants for truncation ``M``.

    Test-function samples on the quadrature nodes are tabulated eagerly so that
    projections are a single matrix-vector product. Treat instances as
    read-only.
    """

    def __init__(self, M: int, tol: float = DEFAULT_TOL, rule: QuadratureRule | None = None,
                 constants_method: str = "closed-form"):
        self.M = M
        self.table: EigenvalueTable = build_table(M, tol)
        self.basis = BasisSet(self.table)
        self.rule = rule or rule_for_table(self.table)
        self.constants: BiorthConstants = compute_constants(
            self.table, constants_method, basis=self.basis, rule=self.rule)
        x = self.rule.nodes
        self.test_even = self.basis.matrix("test", "even", x)            # rows 0..M
        self.test_odd = np.vstack([np.zeros_like(x),
                                   self.basis.matrix("test", "odd", x)])  # row 0 unused
        for arr in (self.test_even, self.test_odd):
            arr.setflags(write=False)

    def lam(self, parity):
        return self.table.values(parity)

    def project(self, values) -> tuple[np.ndarray, np.ndarray]:
        """Inner products of node samples with every test function.

        Returns ``(pc, ps)``, each of length ``M+1``: ``pc[m] = <f, phi_m^c>``
        (``pc[0] = <f, 1>``) and ``ps[m] = <f, phi_m^s>`` (``ps[0] = 0``).
        """
        wv = self.rule.weights * values
        return self.test_even @ wv, self.test_odd @ wv


@lru_cache(maxsize=8)
def get_discretization(M: int) -> Discretization:
    return Discretization(M)

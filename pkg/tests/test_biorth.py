import warnings

import numpy as np
import pytest
from hypothesis import given, settings, strategies as st

import oracles
from sixpg import biorth
from sixpg.biorth import (
    C0, QuadratureRule, adjointness_residual, biorth_constant, c_closed_form, compute_constants,
    cross_parity_spot_checks, default_rule, gram_matrix, inner_product, normalized_offdiag,
    s_closed_form,
)
from sixpg.eigenvalues import build_table, even_eigenvalue
from sixpg.errors import ClosedFormMismatch, DomainError, EvaluationError, InconsistencyError


def test_rule_integrates_polynomials_exactly():
    r = QuadratureRule(4)
    assert r.nodes.size == 64
    assert abs(r.integrate(r.nodes ** 30) - 2 / 31) < 1e-15
    assert abs(r.weights.sum() - 2.0) < 1e-14


def test_rule_scales_with_eigenvalue():
    assert default_rule(1.0).panels == 8
    assert default_rule(315.0).panels == 201


@pytest.mark.parametrize("parity,m", [("even", 1), ("even", 4), ("odd", 1), ("odd", 3)])
def test_constants_match_mpmath(parity, m):
    lam = oracles.even_root(m) if parity == "even" else m * oracles.mp.pi
    ref = float(oracles.constant(parity, lam))
    cf = float(c_closed_form(float(lam)) if parity == "even" else s_closed_form(float(lam)))
    assert abs(cf - ref) < 1e-13


def test_zero_mode_constant_by_quadrature(disc30):
    q = inner_product(disc30.basis.trial("even", 0), disc30.basis.test("even", 0), disc30.rule)
    assert abs(q - C0) < 1e-14


def test_closed_form_against_quadrature_up_to_100(disc100):
    k = compute_constants(disc100.table, "closed-form", fast_path=False)
    q = compute_constants(disc100.table, "quadrature", basis=disc100.basis, rule=disc100.rule, fast_path=False)
    assert np.max(np.abs(k.c - q.c) / np.abs(q.c)) < 1e-12
    assert np.nanmax(np.abs(k.s - q.s) / np.abs(q.s)) < 1e-12


@settings(max_examples=30, deadline=None)
@given(st.integers(min_value=7, max_value=400))
def test_fast_path_is_consistent(m):
    for f, lam in ((c_closed_form, even_eigenvalue(m).value), (s_closed_form, m * np.pi)):
        assert abs(float(f(lam)) - 1.0) < 1e-12


def test_mismatch_warns_and_prefers_quadrature(monkeypatch):
    monkeypatch.setattr(biorth, "c_closed_form", lambda lam: 2.0)
    with pytest.warns(ClosedFormMismatch):
        v = biorth_constant("even", 2)
    assert abs(v - 1.0) < 1e-3
    with pytest.raises(InconsistencyError):
        biorth_constant("even", 2, strict=True)


def test_biorth_constant_errors():
    with pytest.raises(DomainError):
        biorth_constant("even", 0)
    with pytest.raises(DomainError):
        biorth_constant("sideways", 1)
    assert biorth_constant("odd", 50) == 1.0
    with warnings.catch_warnings():
        warnings.simplefilter("error")
        assert abs(biorth_constant("odd", 2, "quadrature") - float(s_closed_form(2 * np.pi))) < 1e-13


def test_gram_is_diagonal(disc30):
    for parity in ("even", "odd"):
        G = gram_matrix(disc30.basis, parity, disc30.rule)
        assert np.max(normalized_offdiag(G)) < 1e-12
    assert cross_parity_spot_checks(disc30.basis, disc30.rule, count=5) < 1e-12


def test_evaluation_error_reports_node():
    r = QuadratureRule(2)
    bad = lambda x: np.where(x > 0.5, np.nan, x)
    with pytest.raises(EvaluationError) as exc:
        inner_product(bad, lambda x: x, r)
    assert exc.value.node > 0.5


@settings(max_examples=20, deadline=None)
@given(st.integers(1, 40), st.integers(1, 40), st.sampled_from(["even", "odd"]), st.sampled_from(["even", "odd"]))
def test_adjointness(l, m, p1, p2):
    assert adjointness_residual(l, m, (p1, p2), relative=True) < 1e-10

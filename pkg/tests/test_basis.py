import numpy as np
import pytest
from hypothesis import given, settings, strategies as st

import oracles
from sixpg.basis import BasisSet, eval_basis, eval_derivative, ode_residual, sup_norm
from sixpg.eigenvalues import build_table
from sixpg.errors import DomainError

TABLE = build_table(200)
BASIS = BasisSet(TABLE)
ENDS = np.array([-1.0, 1.0])


@pytest.mark.parametrize("kind", ["trial", "test"])
@pytest.mark.parametrize("parity", ["even", "odd"])
@pytest.mark.parametrize("m", [1, 2, 5, 12])
def test_values_match_mpmath(kind, parity, m):
    b = BASIS.get(kind, parity, m)
    xs = np.linspace(-1, 1, 9)
    ref = np.array([float(oracles.value(kind, parity, b.lam, x)) for x in xs])
    assert np.max(np.abs(eval_basis(b, xs) - ref)) < 1e-13


def test_zero_mode_polynomials():
    x = np.linspace(-1, 1, 11)
    assert np.allclose(eval_basis(BASIS.trial("even", 0), x), (x ** 2 - 1) ** 2, atol=1e-15)
    assert np.all(eval_basis(BASIS.test("even", 0), x) == 1.0)
    assert np.allclose(eval_derivative(BASIS.trial("even", 0), x, 2), 12 * x ** 2 - 4)


@pytest.mark.parametrize("m", [1, 3, 30, 200])
def test_boundary_conditions(m):
    for parity in ("even", "odd"):
        psi = BASIS.trial(parity, m)
        phi = BASIS.test(parity, m)
        for b, orders in ((psi, (0, 1, 5)), (phi, (1, 2, 3))):
            for k in orders:
                end = eval_basis(b, ENDS) if k == 0 else eval_derivative(b, ENDS, k)
                assert np.max(np.abs(end)) <= 1e-10 * sup_norm(b, k)


@settings(max_examples=40, deadline=None)
@given(st.sampled_from(["trial", "test"]), st.sampled_from(["even", "odd"]),
       st.integers(min_value=1, max_value=200), st.floats(min_value=-1, max_value=1))
def test_ode_and_parity(kind, parity, m, x):
    b = BASIS.get(kind, parity, m)
    assert abs(ode_residual(b, x)) <= 1e-11 * b.lam ** 6
    sign = 1 if parity == "even" else -1
    assert abs(eval_basis(b, -x) - sign * eval_basis(b, x)) < 1e-12


@settings(max_examples=25, deadline=None)
@given(st.integers(min_value=1, max_value=200), st.integers(min_value=1, max_value=5))
def test_derivatives_consistent_with_finite_differences(m, k):
    b = BASIS.trial("even", m)
    x, h = 0.3, 1e-5
    lo = eval_basis(b, x - h) if k == 1 else eval_derivative(b, x - h, k - 1)
    hi = eval_basis(b, x + h) if k == 1 else eval_derivative(b, x + h, k - 1)
    assert abs((hi - lo) / (2 * h) - eval_derivative(b, x, k)) < 1e-5 * b.lam ** (k + 2)


def test_finite_at_large_index():
    b = BASIS.trial("odd", 200)
    assert np.all(np.isfinite(eval_basis(b, np.linspace(-1, 1, 101))))


def test_errors():
    b = BASIS.trial("even", 1)
    with pytest.raises(DomainError):
        eval_basis(b, 1.5)
    with pytest.raises(DomainError):
        eval_derivative(b, 0.0, 7)
    with pytest.raises(DomainError):
        BASIS.get("trial", "odd", 0)
    with pytest.raises(DomainError):
        BASIS.get("trial", "even", 201)


def test_matrix_rows_are_functions():
    x = np.linspace(-1, 1, 5)
    A = BASIS.matrix("test", "odd", x, indices=[1, 2])
    assert A.shape == (2, 5)
    assert np.allclose(A[1], eval_basis(BASIS.test("odd", 2), x))

import math

import numpy as np
import pytest
from hypothesis import given, settings, strategies as st

from sixpg.errors import CompatibilityError, DomainError, SolverError
from sixpg.expansion import SpectralCoefficients, beta_matrix, expand
from sixpg import solver
from sixpg.solver import (
    MODEL2_BOND, SteadyProblem, assemble_semidiscrete, evolve, model1_exact, model1_rhs,
    model2_exact, model2_rhs, solve_model_problem_1, solve_model_problem_2, solve_steady,
    steady_state, step_ibvp, strong_residual,
)

GRID = np.linspace(-1, 1, 2001)


def test_model1_profile_and_parity(disc100):
    sol = solve_model_problem_1(100, disc100)
    assert sol.coefficients.parity_restriction == "odd-only"
    assert abs(sol(0.0)) < 1e-12
    assert sol(0.5) > 0   # x (x^2-1)^6 is positive on (0, 1)
    assert np.max(np.abs(sol(GRID) - model1_exact(GRID))) < 1e-9


def test_model2_boundary_value(disc100):
    sol = solve_model_problem_2(100, disc100)
    assert abs(sol(1.0)) < 1e-9 and sol.coefficients.u0c == 0.0
    assert sol.diagnostics["even_condition"] < 1e12


def test_general_solver_reproduces_model_problems(disc100):
    a = solve_steady(SteadyProblem(0.0, model1_rhs, 100), disc100)
    b = solve_model_problem_1(100, disc100)
    assert np.max(np.abs(a.coefficients.us - b.coefficients.us)) < 1e-10
    assert np.max(np.abs(a.coefficients.uc)) < 1e-14
    a = solve_steady(SteadyProblem(MODEL2_BOND, model2_rhs, 100), disc100)
    b = solve_model_problem_2(100, disc100)
    assert np.max(np.abs(a.coefficients.uc - b.coefficients.uc)) < 1e-12


def test_zero_forcing_gives_zero(disc30):
    sol = solve_steady(SteadyProblem(0.0, lambda x: 0 * x, 30), disc30)
    assert not np.any(sol.coefficients.uc) and not np.any(sol.coefficients.us)


def test_compatibility_violation(disc30):
    with pytest.raises(CompatibilityError):
        solve_steady(SteadyProblem(3.0, lambda x: 1 + x, 30), disc30)
    # odd-only problems never touch the zero mode
    solve_steady(SteadyProblem(3.0, lambda x: x, 30, "odd-only"), disc30)


def test_spectral_rhs_equals_function_rhs(disc30):
    f = lambda x: np.cos(3 * np.pi * x) + x ** 3
    c = expand(f, 30, disc30)
    a = solve_steady(SteadyProblem(7.0, f, 30), disc30)
    b = solve_steady(SteadyProblem(7.0, c, 30), disc30)
    assert np.max(np.abs(a.coefficients.us - b.coefficients.us)) < 1e-15
    assert np.max(np.abs(a.coefficients.uc - b.coefficients.uc)) < 1e-15


def test_residual_decreases_with_M():
    xi = np.linspace(-0.8, 0.8, 801)
    for f, bond, solve in ((model1_rhs, 0.0, solve_model_problem_1), (model2_rhs, MODEL2_BOND, solve_model_problem_2)):
        r = [np.max(np.abs(strong_residual(solve(M), f, bond, xi))) for M in (25, 50, 100)]
        assert r[0] > r[1] > r[2]


def test_ill_conditioned_is_reported(monkeypatch, disc30):
    monkeypatch.setattr(solver, "COND_LIMIT", 1.0)
    with pytest.raises(SolverError) as exc:
        solve_model_problem_2(30, disc30)
    assert exc.value.condition > 1.0


@settings(max_examples=15, deadline=None)
@given(st.floats(min_value=-200, max_value=200), st.integers(min_value=1, max_value=3))
def test_bcs_hold_for_any_solution(bond, k):
    sol = solve_steady(SteadyProblem(bond, lambda x: np.sin(k * np.pi * x) + np.cos(k * np.pi * x), 20))
    ends = np.array([-1.0, 1.0])
    for order in (0, 1, 5):
        scale = max(1.0, np.max(np.abs(sol(GRID, order))))
        assert np.max(np.abs(sol(ends, order))) < 1e-9 * scale


# --- semi-discrete system -----------------------------------------------------

def test_bond_zero_matrices_are_diagonal(disc30):
    s = assemble_semidiscrete(30, 0.0, disc=disc30)
    for A, k in ((s.even_matrix, disc30.constants.c), (s.odd_matrix, disc30.constants.s)):
        assert np.count_nonzero(A - np.diag(np.diag(A))) == 0
        lam = disc30.lam("even" if A is s.even_matrix else "odd")[1:]
        assert np.array_equal(np.diag(A), -k[1:] * lam ** 6)


def test_matrix_entries_against_quadrature_beta():
    s = assemble_semidiscrete(5, 1.0)
    q = beta_matrix("even", 5, "quadrature", s.disc).entries
    lam = s.disc.lam("even")[1:6]
    expected = q - np.diag(s.disc.constants.c[1:6] * lam ** 6)
    assert np.max(np.abs(s.even_matrix - expected)) < 1e-9 * np.max(np.abs(expected))


def test_zero_mode_is_independent(disc30):
    s = assemble_semidiscrete(30, 5.0, lambda x: 0 * x + 2.0, time_dependent=False, disc=disc30)
    du0, _, _ = s.rhs(SpectralCoefficients(np.ones(31), np.ones(31)), 0.0)
    assert abs(du0 - 2.0 * 2.0 / s.zero_mode_constant) < 1e-13
    nxt = step_ibvp(s, SpectralCoefficients.zeros(30), 0.0, 0.1)
    assert abs(nxt.u0c - 0.4 / s.zero_mode_constant) < 1e-13


def test_single_mode_decay(disc30):
    s = assemble_semidiscrete(30, 0.0, disc=disc30)
    us = np.zeros(31)
    us[3] = 1.0
    lam6 = (3 * math.pi) ** 6
    T = 2.0 / lam6
    tr = evolve(s, SpectralCoefficients(np.zeros(31), us), T, T / 1000)
    assert abs(tr.final.us[3] - math.exp(-lam6 * T)) < 1e-6
    assert np.count_nonzero(tr.final.us) == 1


@settings(max_examples=10, deadline=None)
@given(st.floats(min_value=0, max_value=1e4))
def test_zero_stays_zero(bond):
    s = assemble_semidiscrete(10, bond)
    st_ = SpectralCoefficients.zeros(10)
    for _ in range(3):
        st_ = step_ibvp(s, st_, 0.0, 1e-3)
    assert not np.any(st_.uc) and not np.any(st_.us)


def test_long_time_limit_matches_steady(disc100):
    f = lambda x: 960 * math.pi ** 6 * np.cos(2 * math.pi * x)
    s = assemble_semidiscrete(100, MODEL2_BOND, f, time_dependent=False, disc=disc100)
    ref = solve_steady(SteadyProblem(-MODEL2_BOND, lambda x: -f(x), 100), disc100)
    tr = evolve(s, SpectralCoefficients.zeros(100), 0.01, 1e-5, record_every=1000)
    assert np.max(np.abs(tr.final.uc - ref.coefficients.uc)) < 1e-6
    assert np.max(np.abs(steady_state(s).uc - ref.coefficients.uc)) < 1e-12


def test_model2_is_a_fixed_point_of_the_anti_diffusive_system(disc100):
    f = lambda x: 960 * math.pi ** 6 * np.cos(2 * math.pi * x)
    s = assemble_semidiscrete(100, -MODEL2_BOND, f, time_dependent=False, disc=disc100)
    m2 = solve_model_problem_2(100, disc100).coefficients
    nxt = step_ibvp(s, m2, 0.0, 1e-6)
    assert np.max(np.abs(nxt.uc - m2.uc)) < 1e-6
    assert np.max(np.abs(steady_state(s).uc - m2.uc)) < 1e-10


def test_anti_diffusive_system_is_unstable(disc30):
    s = assemble_semidiscrete(30, -MODEL2_BOND, disc=disc30)
    ev = np.linalg.eigvals(s.even_matrix.T / s.c[:, None])
    assert np.max(ev.real) > 0


def test_step_errors(disc30):
    s = assemble_semidiscrete(30, 0.0, disc=disc30)
    with pytest.raises(DomainError):
        step_ibvp(s, SpectralCoefficients.zeros(30), 0.0, -1.0)
    with pytest.raises(DomainError):
        step_ibvp(s, SpectralCoefficients.zeros(29), 0.0, 1.0)
    with pytest.raises(DomainError):
        evolve(s, SpectralCoefficients.zeros(30), 1.0, 0.3)

"""Biorthogonal Petrov-Galerkin spectral method for a clamped sixth-order operator."""

__version__ = "0.1.0"

from .eigenvalues import Eigenvalue, EigenvalueTable, build_table, even_eigenvalue, odd_eigenvalue
from .basis import BasisFunction, BasisSet, eval_basis, eval_derivative
from .biorth import QuadratureRule, BiorthConstants, compute_constants, inner_product, biorth_constant
from .discretization import Discretization, get_discretization
from .expansion import SpectralCoefficients, CouplingMatrix, expand, synthesize, beta_matrix, fit_decay_exponent
from .solver import (SteadyProblem, SpectralSolution, SemiDiscreteSystem, solve_steady,
                     solve_model_problem_1, solve_model_problem_2, assemble_semidiscrete,
                     step_ibvp, evolve)

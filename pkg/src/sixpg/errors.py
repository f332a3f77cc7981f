"""Exception and warning types shared across the package."""


class DomainError(ValueError):
    """An argument lies outside the domain of the operation."""


class RootBracketingError(RuntimeError):
    """The search interval for an eigenvalue contains no sign change."""


class EvaluationError(FloatingPointError):
    """A sampled function returned a non-finite value at a quadrature node."""

    def __init__(self, message, node=None):
        super().__init__(message)
        self.node = node


class InconsistencyError(RuntimeError):
    """A closed-form coefficient disagrees with its quadrature oracle."""


class ClosedFormMismatch(UserWarning):
    """Closed-form and quadrature values disagree; the quadrature value is used."""


class SolverError(RuntimeError):
    """A linear solve failed or the matrix is too ill-conditioned to trust."""

    def __init__(self, message, condition=None):
        super().__init__(message)
        self.condition = condition


class CompatibilityError(SolverError):
    """The forcing has a nonzero projection on the constant test function."""

"""Exception hierarchy shared across the package."""


class RiskDistError(Exception):
    """Base class for all package errors."""


class DomainError(RiskDistError, ValueError):
    """An argument lies outside the domain of the operation."""


class BracketError(RiskDistError, ValueError):
    """A root-finding bracket does not straddle a sign change."""


class NonConvergenceError(RiskDistError, RuntimeError):
    """An iterative routine exhausted its budget before meeting tolerance."""

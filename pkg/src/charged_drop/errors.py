"""Exception types shared across the solver modules."""


class ChargedDropError(ValueError):
    """Base class for all domain errors raised by this package."""


class DomainError(ChargedDropError):
    """Argument outside the mathematical domain of an operation."""


class DegenerateGeometryError(ChargedDropError):
    """Contact/tangency relations have no valid solution for these inputs."""


class NoRootError(ChargedDropError):
    """A bracketed root solve found no sign change; reported, never clamped."""


class BadBracketError(ChargedDropError):
    """Bisection endpoints do not straddle the sought transition."""


class InfeasibleError(ChargedDropError):
    """Requested configuration cannot be packed into the host ball."""

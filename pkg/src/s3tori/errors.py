"""Exception hierarchy shared by every module."""


class TorusError(Exception):
    """Base class for all errors raised by s3tori."""


class DomainError(TorusError, ValueError):
    """An argument lies outside the domain where a formula is defined."""


class SingularityError(TorusError, ZeroDivisionError):
    """Evaluation at a point where the equation of motion is singular."""


class DegenerateError(TorusError):
    """A geometric object collapses (vanishing normal, coincident turning points)."""


class ToleranceError(TorusError):
    """A numerical routine could not meet the requested tolerance."""


class NoRealRootError(TorusError, ArithmeticError):
    """A quadratic that should have real roots has a negative discriminant."""


class NoSolutionError(TorusError):
    """A root search target lies outside the attainable range."""


class PoleProximityError(TorusError, ValueError):
    """A vertex sits too close to the stereographic projection pole."""

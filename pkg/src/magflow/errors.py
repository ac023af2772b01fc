"""Exception hierarchy shared by every magflow module."""

from __future__ import annotations


class MagflowError(Exception):
    """Base class for all errors raised by magflow."""


class DimensionMismatch(MagflowError, ValueError):
    pass


class JacobiViolation(MagflowError):
    """The structure constants fail the Jacobi identity.

    ``a, b, c`` is the offending triple and ``e`` the output component at
    which the Jacobiator is nonzero; ``residual`` is the exact value.
    """

    def __init__(self, a, b, c, e, residual, name=""):
        self.a, self.b, self.c, self.e = a, b, c, e
        self.residual = residual
        label = f" in {name!r}" if name else ""
        super().__init__(
            f"Jacobi identity fails{label} at (a,b,c)=({a},{b},{c}), "
            f"component e{e}: residual {residual}"
        )


class NotACocycle(MagflowError):
    """A 2-cochain fails the closure condition at triple ``(a, b, c)``."""

    def __init__(self, a, b, c, residual):
        self.a, self.b, self.c = a, b, c
        self.residual = residual
        super().__init__(
            f"cochain is not a cocycle: cyclic sum at (a,b,c)=({a},{b},{c}) "
            f"equals {residual}"
        )


class DomainViolation(MagflowError, ValueError):
    pass


class OutOfChart(MagflowError):
    pass


class MissingChartData(MagflowError):
    pass


class StepRejection(MagflowError):
    pass


class EntryNotFound(MagflowError, KeyError):
    def __str__(self):
        return f"no catalog entry {self.args[0]!r}"

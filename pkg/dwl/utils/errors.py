"""
Exceptions raised by the library and mapped to exit codes by the orchestrator.
"""


class DwlError(Exception):
    """
    Base class for every error raised on purpose by this project.
    """


class ArgumentError(DwlError, ValueError):
    """
    A precondition on an argument does not hold (index out of range, eB <= 0, ...).
    """


class PreconditionError(ArgumentError):
    """
    The input is well formed but not of the kind the operation requires,
    e.g. a mixed state passed to a pure-state formula.
    """


class NumericalAccuracyError(DwlError, ArithmeticError):
    """
    A quadrature could not be trusted: NaN/Inf in the integrand or a
    resolution self-check above tolerance.
    """
    def __init__(self, message, location=None, residual=None):
        super().__init__(message)
        self.location = location
        self.residual = residual


class UsageError(DwlError):
    """
    Invalid command line or configuration file.
    """


class OutputError(DwlError, OSError):
    """
    Results could not be written.
    """

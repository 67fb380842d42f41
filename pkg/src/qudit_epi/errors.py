"""Exception hierarchy shared by every module."""


class QuditEPIError(Exception):
    """Base class for all errors raised by this package."""


class ValidationError(QuditEPIError, ValueError):
    """A matrix failed one of the density-matrix invariants.

    ``deviation`` carries the measured violation (asymmetry norm, most
    negative eigenvalue or trace offset, depending on the subclass).
    """

    def __init__(self, message, deviation):
        super().__init__(message)
        self.deviation = deviation


class NotHermitian(ValidationError):
    pass


class NotPSD(ValidationError):
    pass


class TraceNotOne(ValidationError):
    pass


class DimensionMismatch(QuditEPIError, ValueError):
    pass


class LengthMismatch(QuditEPIError, ValueError):
    pass


class DomainError(QuditEPIError, ValueError):
    pass


class InfeasibleEntropy(DomainError):
    pass


class OutOfCertifiedRange(QuditEPIError, ValueError):
    pass


class NumericalFailure(QuditEPIError, ArithmeticError):
    """An eigensolver or root finder did not converge."""


class EigenFailure(NumericalFailure):
    pass


class ParseError(QuditEPIError, ValueError):
    pass


class BadSigmaSpec(ParseError):
    pass


class UnknownFigure(QuditEPIError, ValueError):
    pass

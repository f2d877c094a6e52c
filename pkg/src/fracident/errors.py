"""Exception hierarchy."""


class FracIdentError(Exception):
    """Base class for all package errors."""


class ConfigurationError(FracIdentError, ValueError):
    pass


class DomainError(FracIdentError, ValueError):
    pass


class ParameterError(DomainError):
    """A model parameter violates its invariant."""


class DegenerateStructureError(FracIdentError, ArithmeticError):
    """The coefficient equations collapse (zero denominator or zero polynomial)."""


class RootFindingError(FracIdentError, ArithmeticError):
    def __init__(self, message, residuals=()):
        super().__init__(message)
        self.residuals = list(residuals)


class InputFormatError(FracIdentError, ValueError):
    """Malformed input document; the message names the offending field."""

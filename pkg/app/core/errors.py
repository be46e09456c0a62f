"""Exception hierarchy shared by the algebra, tools and surfaces."""


class ToolkitError(Exception):
    """Base class for every error raised by the toolkit."""


class FieldRangeError(ToolkitError, ValueError):
    pass


class FieldConstructionError(ToolkitError, ValueError):
    """Raised when a modulus is not irreducible over GF(2)."""

    def __init__(self, message: str, factor_degree: int):
        super().__init__(message)
        self.factor_degree = factor_degree


class FieldDivisionByZero(ToolkitError, ZeroDivisionError):
    pass


class PreconditionError(ToolkitError, ValueError):
    pass


class SeparabilityError(PreconditionError):
    pass


class UnsupportedConfigurationError(ToolkitError, ValueError):
    pass


class NotSquarefreeError(ToolkitError, ValueError):
    """Raised with the gcd that exposes a repeated factor."""

    def __init__(self, message: str, repeated_factor):
        super().__init__(message)
        self.repeated_factor = repeated_factor


class InternalConsistencyError(ToolkitError, RuntimeError):
    """Two independent computations of the same quantity disagreed."""


class ResourceGuardError(ToolkitError, RuntimeError):
    def __init__(self, message: str, flag: str):
        super().__init__(message)
        self.flag = flag


class MonodromyViolationError(ToolkitError, RuntimeError):
    def __init__(self, message: str, pattern: tuple):
        super().__init__(message)
        self.pattern = pattern


class ParseError(ToolkitError, ValueError):
    pass

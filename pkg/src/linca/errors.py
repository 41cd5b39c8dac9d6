"""Exception hierarchy shared by every module."""


class LincaError(ValueError):
    """Base class for all library errors."""


class InvalidModulusError(LincaError):
    pass


class NotAUnitError(LincaError):
    pass


class ModulusMismatchError(LincaError):
    pass


class EmptySeriesError(LincaError):
    """Raised when an operation needs a nonzero series."""


class PositionError(LincaError):
    pass


class NotInvertibleError(LincaError):
    """The rule fails the unique-unit condition for at least one prime.

    ``profile`` holds the per-prime witnesses (an ``InvertibilityProfile``).
    """

    def __init__(self, message, profile=None):
        super().__init__(message)
        self.profile = profile


class ProfileError(LincaError):
    pass


class BudgetExceededError(LincaError):
    def __init__(self, message, required):
        super().__init__(message)
        self.required = required

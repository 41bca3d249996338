"""Exception types shared across the package."""


class DomainError(ValueError):
    """An argument lies outside the region where a formula is defined."""


class QuantizationError(RuntimeError):
    """The quantization root finder could not bracket or converge on a level."""

    def __init__(self, message, level=None):
        super().__init__(message)
        self.level = level

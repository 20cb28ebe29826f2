"""Exception types shared across the package."""


class DimensionError(ValueError):
    """Operands have incompatible shapes, genera or ambient ranks."""


class InvalidInputError(ValueError):
    """An argument is outside the domain of the operation."""


class NoDistinguishingIndexError(InvalidInputError):
    """Two splittings coincide, so no summand of one is missing from the other."""


class ExhaustionError(RuntimeError):
    """A search ran out of candidates before reaching the requested count."""

    def __init__(self, message, found):
        super().__init__(message)
        self.found = found

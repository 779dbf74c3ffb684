"""Exceptions raised by the sorting engine."""


class SortEngineError(Exception):
    """Base class for every engine error."""


class PermutationError(SortEngineError, ValueError):
    """Malformed permutation text or values."""


class PatternSetError(SortEngineError, ValueError):
    """A pattern set that cannot drive the machine."""


class DomainError(SortEngineError, ValueError):
    """An argument outside the domain of an operation."""


class CeilingExceeded(SortEngineError):
    """Full symmetric-group work requested above the configured ceiling."""

    def __init__(self, n: int, ceiling: int):
        self.n = n
        self.ceiling = ceiling
        super().__init__(
            f'n={n} exceeds the enumeration ceiling of {ceiling}; '
            'raise it with --ceiling to proceed')

"""Exception types shared across the package."""


class ConfigError(ValueError):
    """Invalid or inconsistent configuration (CLI exit code 2)."""


class WorkspaceError(ValueError):
    """Requested end-effector path leaves the reachable workspace."""

    def __init__(self, message, first_bad_index=None):
        super().__init__(message)
        self.first_bad_index = first_bad_index


class ConditioningError(ArithmeticError):
    """A factorization failed; carries the smallest pivot seen (CLI exit code 3)."""

    def __init__(self, message, smallest_pivot=None):
        super().__init__(message)
        self.smallest_pivot = smallest_pivot

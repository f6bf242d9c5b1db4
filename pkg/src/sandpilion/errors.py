"""Exception types shared across the package."""


class InvalidParameters(ValueError):
    """Raised when family parameters or arguments are out of range."""


class DisconnectedGraphError(ValueError):
    """Raised when an operation needs a connected graph."""


class BudgetExceeded(RuntimeError):
    """Raised when a brute-force oracle would exceed its enumeration budget."""

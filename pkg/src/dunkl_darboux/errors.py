"""Exception types shared across the package."""


class DunklDarbouxError(Exception):
    """Base class for all package errors."""


class DomainError(DunklDarbouxError):
    """Input outside the mathematical domain of an operation."""


class ContractError(DunklDarbouxError):
    """Structural precondition violated (e.g. parity mismatch)."""


class EvaluationError(DunklDarbouxError):
    """A sampled function returned a non-finite value."""

    def __init__(self, message, node=None):
        super().__init__(message)
        self.node = node


class AccuracyError(DunklDarbouxError):
    """Requested tolerance could not be reached; best estimate attached."""

    def __init__(self, message, best_estimate=None):
        super().__init__(message)
        self.best_estimate = best_estimate


class SingularityError(DunklDarbouxError):
    """Evaluation at or too close to a pole (e.g. a Wronskian zero)."""


class CapabilityError(DunklDarbouxError):
    """Requested operation exceeds a supported limit."""


class ConstructionError(DunklDarbouxError):
    """A derived object failed its own validation checks."""

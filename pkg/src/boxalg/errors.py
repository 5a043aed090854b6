"""Exception hierarchy shared by all boxalg modules."""


class BoxAlgError(Exception):
    """Base class for all boxalg errors."""


class DomainError(BoxAlgError, ValueError):
    """Input violates a documented precondition (shape, sign, range)."""


class CapacityError(BoxAlgError):
    """Requested enumeration exceeds the configured cap.

    Factorial-size enumerations are refused outright rather than attempted;
    the cap can be raised explicitly by the caller (or via BOXALG_CAP in the
    CLI) when the blowup is intentional.
    """


class DegenerateConfigurationError(DomainError):
    """A geometric construction received a configuration with determinant 0."""


class ConvergenceError(BoxAlgError):
    """An iterative computation failed to converge within its budget."""

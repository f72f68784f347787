"""Exception types shared across the package."""


class IsoKitError(Exception):
    """Base class for all isokit errors."""


class NonAdmissibleError(IsoKitError):
    """Tangent line or tangent plane is isotropic (|x'| or X12 below threshold)."""


class InvalidIntervalError(IsoKitError):
    """Integration interval with lower bound >= upper bound."""


class DomainError(IsoKitError):
    """Evaluation outside the domain of a profile, weight, or family."""


class SingularDenominatorError(IsoKitError):
    """Distance weight or characterization denominator vanishes (or half-space violated)."""


class InvalidRadiusError(IsoKitError):
    """Boundary circle with non-positive radius."""


class NoConvergenceError(IsoKitError):
    """Iterative solver failed to reach its tolerance within the iteration budget."""


class SingularityError(IsoKitError):
    """ODE right-hand side denominator fell below threshold along the trajectory."""


class StepFailureError(IsoKitError):
    """Non-finite state encountered during time stepping."""


class NonContractionError(IsoKitError):
    """Fixed-point iteration observed a ratio >= 1 between successive corrections."""


class MaxIterExceededError(NoConvergenceError):
    """Fixed-point iteration hit its iteration cap before reaching tolerance."""

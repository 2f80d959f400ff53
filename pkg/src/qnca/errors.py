"""Exception taxonomy shared across the package."""


class QncaError(Exception):
    """Base class for all mathematical and structural failures."""


class PresentationError(QncaError):
    """The presentation violates a structural requirement (bad shapes,
    unsupported delta support, non-terminating rewriting, ...)."""


class ValidationFailure(QncaError):
    """A validation check failed; carries a human-readable witness."""


class DegreeCapExceeded(QncaError):
    """No correction term was found within the degree cap.  Retryable with
    a larger cap; inconclusive rather than a disproof."""


class UniquenessViolation(QncaError):
    """More than one candidate predecessor (or correction term) admits a
    solution, contradicting the uniqueness the construction relies on."""


class InfeasibleSystem(QncaError):
    """An exact linear system has no solution of the required kind."""


class NonLaurentSolution(QncaError):
    """A linear solve produced coefficients outside Q[v, v^-1]."""


class NotExactlyDivisible(QncaError):
    """Quantum-torus division did not terminate with a zero remainder."""


class MembershipError(QncaError):
    """Internal invariant breach inside the membership oracle."""

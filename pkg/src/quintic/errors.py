"""Exception hierarchy shared by all quintic modules."""


class QuinticError(Exception):
    """Base class for all library errors."""


# --- polynomial algebra ---

class ZeroPolynomial(QuinticError):
    """An operation received the zero polynomial where a nonzero one is required."""


class EndpointRoot(QuinticError):
    """A root-counting interval endpoint is itself a root; nudge it first."""


class DegreeZero(QuinticError):
    """Discriminant of a constant polynomial is undefined."""


class InexactDivision(QuinticError):
    """Exact polynomial division left a nonzero remainder."""


class SignAmbiguous(QuinticError):
    """A monomial's sign on the requested orthant is undetermined."""


class SizeCapExceeded(QuinticError):
    """Exact computation aborted: coefficient sizes exceeded the opt-in cap."""


class HypothesisFailed(QuinticError):
    """A family root-count hypothesis failed.

    Attributes: which ('i'|'ii'|'iii'), witness (diagnostic object).
    """

    def __init__(self, which, witness=None):
        self.which = which
        self.witness = witness
        super().__init__(f"hypothesis ({which}) failed: {witness!r}")


# --- generalized trigonometric functions ---

class OutOfScope(QuinticError):
    """Closed-form moment requested outside the p = 1 scope."""


class ToleranceNotMet(QuinticError):
    """Numerical evaluation could not reach the requested tolerance."""


# --- Lyapunov machinery ---

class OrderTooSmall(QuinticError):
    """Requested expansion order is below the first nonzero term."""


class PrecisionLoss(QuinticError):
    """A symbolic zero could not be certified structurally."""


# --- Dulac certification ---

class PieceFailed(QuinticError):
    """A boundary-piece certification failed.

    Attributes: piece (name), witness.
    """

    def __init__(self, piece, witness=None):
        self.piece = piece
        self.witness = witness
        super().__init__(f"boundary piece {piece} failed: {witness!r}")


class ContactPossible(QuinticError):
    """The zero set of M could not be certified without contact."""


class SingularConditionSystem(QuinticError):
    """The linear system fixing the Dulac coefficients is degenerate."""


class NoOval(QuinticError):
    """No real oval of {V = 0} was found around the origin."""


# --- numerical dynamics ---

class NoReturn(QuinticError):
    """The orbit failed to return to the section within the budget."""


class NoCrossing(QuinticError):
    """A separatrix did not reach the section within the time budget."""


class NoSignChange(QuinticError):
    """No sign change of the shooting gap on the given bracket."""


class Blowup(QuinticError):
    """The orbit left the escape radius."""


class StepUnderflow(QuinticError):
    """The adaptive integrator's step size underflowed."""


class NonPositiveParameter(QuinticError):
    """An operation requiring m > 0 received m <= 0."""

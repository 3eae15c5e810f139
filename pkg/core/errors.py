"""
ClusterDilog — Error Hierarchy

Every failure raised by the engine derives from ClusterDilogError. Failures
that mean "an identity did not check out" derive from VerificationError so the
command line can tell them apart from bad input.
"""


class ClusterDilogError(Exception):
    """Base class for all engine errors."""


class VerificationError(ClusterDilogError):
    """A mathematical identity or invariant failed to verify."""


# algebra

class NonDivisible(ClusterDilogError, ArithmeticError):
    """Exact polynomial division left a nonzero remainder."""


class Overflow(ClusterDilogError, ArithmeticError):
    """Floating evaluation left the double range."""


class NonFactorizable(ClusterDilogError, ArithmeticError):
    """A value could not be written in the requested factored form."""


# seed

class BadDirection(ClusterDilogError, ValueError):
    """Mutation direction outside 1..n."""


class NotSkewSymmetrizable(ClusterDilogError, ValueError):
    """No positive diagonal D makes DB skew-symmetric."""


class Decomposable(ClusterDilogError, ValueError):
    """The exchange matrix splits into independent blocks."""


class NotSimplyLaced(ClusterDilogError, ValueError):
    """A Y-system or Coxeter operation received a non-ADE type."""


# ysystem / dilog numerics

class NoConvergence(ClusterDilogError, ArithmeticError):
    """Fixed-point iteration did not reach the residual target."""


class SymbolicBudgetExceeded(ClusterDilogError, ArithmeticError):
    """F-polynomials grew past the configured term budget."""


class Domain(ClusterDilogError, ValueError):
    """Argument outside the real domain of a dilogarithm function."""


class ToleranceExceeded(VerificationError):
    """A numeric identity residual exceeded the tolerance."""


class NonZeroWedge(VerificationError):
    """The wedge sum of a period did not cancel."""


class StepMismatch(VerificationError):
    """The V-element difference at one mutation step is wrong."""


class DualityViolation(VerificationError):
    """A C/G duality failed at some step."""


class SignIncoherent(VerificationError):
    """A c-vector had entries of both signs or vanished."""


class PeriodMismatch(VerificationError):
    """C-matrix periodicity was not matched by the G-matrices or F-polynomials."""


# scatter

class SingularOmega(ClusterDilogError, ValueError):
    """The skew form is singular where a faithful action is required."""


class MixedContext(ClusterDilogError, ValueError):
    """Group elements from different forms or truncations were combined."""


class RelationFails(VerificationError):
    """A product of dilogarithm elements is not the identity."""


class NonZeroResidual(VerificationError):
    """A formal loop identity left surviving terms."""


# quantum

class NonPositiveArgument(ClusterDilogError, ValueError):
    """A q-series was evaluated on an element without positive degree."""


class NonUnit(ClusterDilogError, ValueError):
    """Inversion of an element without invertible leading term."""


class TruncationLoss(ClusterDilogError, ValueError):
    """A quantum computation needs exponents beyond the truncation window."""


class IdentityFails(VerificationError):
    """A quantum identity failed at some coefficient."""


class LimitMismatch(VerificationError):
    """The q -> 1 limit disagrees with the classical computation."""

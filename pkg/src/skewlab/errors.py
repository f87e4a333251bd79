"""Exception hierarchy.

Every failure mode raised by the library is a subclass of SkewLabError so
callers can catch the whole family with one clause.  Numerical failures
(NonConvergence, NonFinite) carry enough context to locate the offending
evaluation; validation failures state which contract was violated.
"""

from __future__ import annotations


class SkewLabError(Exception):
    """Base class for all library errors."""


class BadParam(SkewLabError):
    """A parameter is outside its admissible range."""


class DomainError(SkewLabError):
    """An argument lies outside a function's domain."""


class NonConvergence(SkewLabError):
    """An iterative routine exhausted its subdivision or iteration budget."""


class NonFinite(SkewLabError):
    """An integrand or derivative returned NaN/inf off a declared singularity."""


class OddnessViolation(SkewLabError):
    """A claimed odd function failed w(-x) = -w(x) on the validation grid."""


class NotAPerturbation(SkewLabError):
    """A raw G failed the complement identity G(x) + G(-x) = 1 or nonnegativity."""


class NotADensity(SkewLabError):
    """A claimed density failed normalization or nonnegativity."""


class DegenerateBase(SkewLabError):
    """A symmetric base density vanished where a ratio against it is needed."""


class MomentUndefined(SkewLabError):
    """The requested moment does not exist for the given tails."""


class DimensionMismatch(SkewLabError):
    """Operands have incompatible (or unsupported) dimensions."""


class PremiseNotMet(SkewLabError):
    """A theorem's hypothesis does not hold, so its conclusion is not asserted."""


class NonDifferentiable(SkewLabError):
    """A derivative was requested at a point where none exists (unflagged)."""


class RuleNotCovered(SkewLabError):
    """No composition rule applies to the given shape combination."""


class HypothesisViolated(SkewLabError):
    """Inputs violate the standing hypotheses of a structural result."""


class EmptyLevelSet(SkewLabError):
    """A super-level set contains no grid points at the requested level."""


class UnknownSuite(SkewLabError):
    """The named verification suite does not exist."""


class ParseError(SkewLabError):
    """A textual argument (odd-function or distribution grammar) failed to parse."""

    def __init__(self, message: str, text: str = "", position: int | None = None):
        self.message = message
        if position is not None:
            message = f"{message} (at position {position} in {text!r})"
        super().__init__(message)
        self.text = text
        self.position = position

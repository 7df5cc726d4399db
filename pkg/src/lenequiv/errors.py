"""Exception hierarchy for the lenequiv package."""


class LenEquivError(Exception):
    """Base class for all package-specific errors."""


class AlphabetError(LenEquivError):
    """A letter index lies outside the generating set of the surface group."""


class DegenerateInputError(LenEquivError):
    """Input is outside the meaningful domain (identity word, g = h, beta ~ alpha^-1, ...)."""


class NonHyperbolicError(LenEquivError):
    """A matrix was elliptic or parabolic where a hyperbolic one is required."""


class DegeneracyError(LenEquivError):
    """Boundary endpoints too close to decide a crossing or a sign reliably."""


class UnsupportedRankError(LenEquivError):
    """Operation only implemented for two-generator words."""


class CertificationError(LenEquivError):
    """Ping-pong certification failed (or was required and absent)."""


class PerturbationError(LenEquivError):
    """Could not re-certify after perturbation, even with shrunken magnitude."""


class InconclusiveEnumerationError(LenEquivError):
    """Counts did not stabilize before the hard word-length cap."""

    def __init__(self, message, cap=None, counts=None):
        super().__init__(message)
        self.cap = cap
        self.counts = counts


class HypothesisViolationError(LenEquivError):
    """Constructor inputs do not satisfy the documented hypothesis."""


class ConfigError(LenEquivError):
    """Run configuration failed validation."""


class VerificationError(LenEquivError):
    """A verification task completed with a failed verdict."""

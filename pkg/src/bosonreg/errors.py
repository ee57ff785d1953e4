"""Exception types shared across the package."""


class BosonRegError(Exception):
    """Base class for all domain errors raised by this package."""


class RankMismatchError(BosonRegError):
    """Two objects with different register ranks were combined."""


class ZeroVectorError(BosonRegError):
    """An operation that needs a nonzero state received the zero vector."""


class RankTooLargeError(BosonRegError):
    """A dense 2^R representation was requested above the supported rank."""


class NotBosonicError(BosonRegError):
    """A bosonic-only operation received a state outside the bosonic subspace."""


class NotFiniteCountableError(BosonRegError):
    """A recurring bit sequence was passed where a terminating one is required."""


class TruncationRiskError(BosonRegError):
    """A coherent amplitude is too large for the configured rank to resolve."""

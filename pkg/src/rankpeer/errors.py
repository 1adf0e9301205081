"""Exception hierarchy shared across the package."""


class RankPeerError(Exception):
    """Base class for all package-specific errors."""


class InvalidSizeError(RankPeerError, ValueError):
    """A dimension argument (node count, degree cap, ...) is out of range."""


class DegreeOverflowError(RankPeerError, ValueError):
    """A node has more peers than the coefficient array supports."""


class ContractionPreconditionError(RankPeerError, ValueError):
    """Peer coefficients violate the bounded-total-effect condition, so the
    uniqueness guarantee is void and the solver refuses to run."""


class NonConvergenceError(RankPeerError, RuntimeError):
    """Fixed-point iteration hit the iteration cap before reaching tolerance."""

    def __init__(self, message: str, residual: float, iterations: int):
        super().__init__(message)
        self.residual = residual
        self.iterations = iterations


class MultiplicityError(RankPeerError, RuntimeError):
    """Ordering enumeration found zero or several self-consistent orderings."""

    def __init__(self, message: str, consistent_orderings: list):
        super().__init__(message)
        self.consistent_orderings = consistent_orderings


class RestrictionRankError(RankPeerError, ValueError):
    """A coefficient restriction matrix is rank deficient."""


class SingularDesignError(RankPeerError, ValueError):
    """Regressor matrix is rank deficient in the named stratum."""


class RelevanceError(RankPeerError, ValueError):
    """Instrument cross-moment block fails the rank (relevance) condition."""

    def __init__(self, message: str, min_singular: float = float("nan")):
        super().__init__(message)
        self.min_singular = min_singular


class ValidationError(RankPeerError, ValueError):
    """Config file or input dataset failed schema validation."""

"""Exception types shared across the library."""


class DependentPairError(ValueError):
    """The two forms span less than a two-dimensional pencil."""


class ZeroElementError(ValueError):
    """A pencil combination vanished where a nonzero element was required."""


class DegeneratePairingError(ValueError):
    """A skew pairing matrix required to be non-degenerate is singular."""


class InfeasiblePairError(RuntimeError):
    """No trace certificate exists: the pair contains a semidefinite element."""


class NumericalInconclusiveError(RuntimeError):
    """An iterative search hit its budget without settling the question."""


class MuSearchError(NumericalInconclusiveError):
    """No direction with a non-degenerate combined commutator matrix was found."""


class ConsistencyError(RuntimeError):
    """An internal pullback or projector identity failed its residual check."""


class GradingError(ValueError):
    """Structure constants are incompatible with the declared layer grading."""

"""Exception types shared across the toolkit."""


class DelayKitError(Exception):
    """Base class for all toolkit errors."""


class ValidationError(DelayKitError, ValueError):
    """A parameter or specification violates its invariants."""


class DivergenceError(DelayKitError):
    """Numerical integration or iteration blew up.

    Carries the step index at which the state first became non-finite
    or exceeded the divergence threshold.
    """

    def __init__(self, step: int, message: str | None = None):
        self.step = step
        super().__init__(message or f"state diverged at step {step}")


class CapacityError(DelayKitError, ValueError):
    """A series is too short for a requested operation."""

    def __init__(self, needed: int, got: int, message: str | None = None):
        self.needed = needed
        self.got = got
        super().__init__(
            message
            or f"series too short: need at least {needed} samples, got {got}"
        )


class SeriesFormatError(DelayKitError, ValueError):
    """A series file failed to parse; carries the offending line number."""

    def __init__(self, line: int, message: str):
        self.line = line
        super().__init__(f"line {line}: {message}")


class DegenerateSeriesError(DelayKitError, ValueError):
    """A computation is undefined on this input (e.g. zero variance)."""


class NoMinimumError(DelayKitError):
    """No interior minimum of the lagged mutual-information curve was found."""


class NoZeroCrossingError(DelayKitError):
    """The autocorrelation function never reached zero within the scanned lags."""


class NoEmbeddingFoundError(DelayKitError):
    """No dimension satisfied the false-neighbor threshold.

    The per-dimension false-neighbor fractions scanned so far are attached
    so callers can inspect how close the search came.
    """

    def __init__(self, fractions: dict[int, float], threshold: float):
        self.fractions = fractions
        self.threshold = threshold
        dims = ", ".join(f"m={m}: {f:.3f}" for m, f in sorted(fractions.items()))
        super().__init__(
            f"false-neighbor fraction never dropped to {threshold} ({dims})"
        )


class NoNeighborError(DelayKitError):
    """A nearest-neighbor forecast had no admissible neighbor to copy."""

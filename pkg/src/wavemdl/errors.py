"""Exception types shared across the package."""


class WavemdlError(Exception):
    """Base class for all wavemdl errors."""


class InvalidLength(WavemdlError):
    """Signal or coefficient length is not an admissible dyadic size."""


class InvalidData(WavemdlError):
    """Input data violates a basic contract (NaN/inf, non-monotone timestamps, ...)."""


class InvalidK(WavemdlError):
    """Sparsity level outside its admissible range."""


class InvalidArgument(WavemdlError):
    """Scalar or configuration argument outside its domain."""


class DegenerateSignal(WavemdlError):
    """Every candidate residual sits at the numerical floor, so no sparsity
    level is informative.  ``k_floor`` is the smallest level whose residual
    already reached the floor."""

    def __init__(self, message: str, k_floor: int | None = None):
        super().__init__(message)
        self.k_floor = k_floor


class EmptySeries(WavemdlError):
    """A time series became (or was) empty."""


class InsufficientData(WavemdlError):
    """Series too short for the requested windowing."""


class DegenerateBaseline(WavemdlError):
    """Baseline statistics are all zero; a before/after ratio is undefined."""


class EmptyDictionary(WavemdlError):
    """No usable entries could be harvested from the training data."""

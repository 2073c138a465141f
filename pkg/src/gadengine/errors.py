"""Exception types shared by all gadengine modules."""


class GadEngineError(Exception):
    """Base class for every error raised by this package."""


class OutOfRangeError(GadEngineError, ValueError):
    """A scalar parameter lies outside its admissible interval."""


class NonNormalizedError(GadEngineError, ValueError):
    """Populations do not sum to one within tolerance."""


class BadDimensionError(GadEngineError, ValueError):
    """Object has an unsupported dimension (only 2 and 3 are handled)."""


class DimensionMismatchError(GadEngineError, ValueError):
    """Two objects that must share a dimension do not."""


class InfeasibleDampingError(GadEngineError, ValueError):
    """Damping probabilities violate lambda1 + lambda2 <= 1."""


class NoUniqueFixedPointError(GadEngineError, ValueError):
    """The channel has no unique stationary state (no strict contraction)."""


class NoHeatAbsorbedError(GadEngineError, ArithmeticError):
    """q_hot <= 0, so efficiency W / q_hot is undefined."""


class UnknownPresetError(GadEngineError, KeyError):
    """Requested sweep preset name does not exist."""


class AxisMismatchError(GadEngineError, ValueError):
    """Two grids that must share axes do not."""

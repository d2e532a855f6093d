"""Exception types shared across the library."""


class F4SolvError(Exception):
    """Base class for all library errors."""


class FrameError(F4SolvError):
    """Two objects living in different variable frames were combined."""


class MapError(F4SolvError):
    """A variable substitution is malformed or fails its inverse check."""


class SingularMapError(MapError):
    """A substitution that does not exist for the given parameters."""


class PoleError(F4SolvError):
    """Evaluation requested on a singular hyperplane.

    ``factor`` names the vanishing ground-state factor.
    """

    def __init__(self, factor: str, point=None):
        self.factor = factor
        self.point = point
        msg = f"singular point: factor {factor} vanishes"
        if point is not None:
            msg += f" at {point}"
        super().__init__(msg)


class CalibrationError(F4SolvError):
    """No admissible scale/offset reconciles the operator with its oracle."""


class ReductionError(F4SolvError):
    """An invariant could not be expressed in the invariant variables."""


class DerivationError(F4SolvError):
    """Two independent derivation routes disagree."""


class ClosureError(F4SolvError):
    """A computation assumed an invariant subspace that is not preserved."""

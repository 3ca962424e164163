"""Exception types raised across the package."""


class JetFrameError(Exception):
    """Base class for every error raised by jetframe."""


class ConfigError(JetFrameError, ValueError):
    """A JetConfig (or a field request) violates its invariants."""


class UnassignedVariable(JetFrameError, KeyError):
    """Evaluation hit a variable that the point does not assign."""

    def __init__(self, var):
        super().__init__(var)
        self.var = var

    def __str__(self):
        return f"variable {self.var!r} has no value at this point"


class UnsupportedVariable(JetFrameError, ValueError):
    """Pole orders are only defined on standard jet coordinates."""


class NonInvertibleCurve(JetFrameError, ValueError):
    """Geometric jets were requested for a curve with f1'(0) = 0."""


class RangeError(JetFrameError, ValueError):
    """U_q^beta was requested outside |beta| + q <= d."""


class NoValidLambda(JetFrameError, ValueError):
    """No multi-index lambda <= beta with |lambda| = k+1 exists."""


class InvalidDirection(JetFrameError, ValueError):
    """T_{1,q} only exists for q = 0."""


class ReservedIndex(JetFrameError, ValueError):
    """beta is one of the slots 0, 1_1, ..., k 1_1 used by the corrections."""


class WrongCase(JetFrameError, ValueError):
    """A logarithmic construction was requested on a compact config."""


class SamplingExhausted(JetFrameError, RuntimeError):
    """No vertical point could be sampled within the retry budget."""


class ConstructionFailed(JetFrameError, RuntimeError):
    """A construction-time self check failed for every admissible variant."""

"""Exception hierarchy shared across the package."""


class DynPressureError(Exception):
    """Base class for all package errors."""


class ParameterError(DynPressureError, ValueError):
    """Rejected wave parameters."""

    code = "InvalidParameter"

    def __init__(self, message, field=None):
        super().__init__(message)
        self.field = field


class NonPositive(ParameterError):
    code = "NonPositive"


class NegativeHeight(ParameterError):
    code = "NegativeHeight"


class DeepWithCurrent(ParameterError):
    code = "DeepWithCurrent"


class HeightExceedsDepth(ParameterError):
    code = "HeightExceedsDepth"


class InvalidOption(ParameterError):
    code = "InvalidOption"


class NoConvergence(DynPressureError):
    """Newton iteration failed to reach the residual tolerance."""

    def __init__(self, message, residual=float("nan"), step=None):
        super().__init__(message)
        self.residual = residual
        self.step = step


class SteepnessLimit(NoConvergence):
    """Amplitude continuation stalled before reaching the target height."""

    def __init__(self, message, residual=float("nan"), step=None, reached_height=0.0):
        super().__init__(message, residual, step)
        self.reached_height = reached_height


class OutOfDomain(DynPressureError, ValueError):
    """Evaluation point lies outside the fluid."""


class DeepWaterUnsupported(DynPressureError, ValueError):
    pass


class AboveTrough(DynPressureError, ValueError):
    pass


class DegenerateField(DynPressureError):
    """Dynamic pressure is constant to within tolerance over the sample."""


class VanishingGradient(DynPressureError):
    pass


class NotDegenerate(DynPressureError):
    pass


class PathOutOfDomain(DynPressureError, ValueError):
    pass


class ConfigError(DynPressureError, ValueError):
    code = "ConfigError"


class UnknownKey(ConfigError):
    code = "UnknownKey"


class TypeMismatch(ConfigError):
    code = "TypeMismatch"


class MissingRequired(ConfigError):
    code = "MissingRequired"

class SimchaosError(Exception):
    """Base class for every error raised by the simchaos packages."""


class DigitRangeError(SimchaosError, ValueError):
    pass


class HorizonExceededError(SimchaosError):
    """A generator tail was read past the horizon it promised."""


class UnsupportedDistanceError(SimchaosError):
    pass


class UnsupportedBaseError(SimchaosError):
    pass


class UnsupportedTailError(SimchaosError):
    pass


class OutsideRegionError(SimchaosError, ValueError):
    pass


class NotInSetError(SimchaosError, ValueError):
    """The point lies in a removed hole of the fractal."""


class ResourceCapError(SimchaosError):
    pass


class MissingWitnessTableError(SimchaosError):
    pass


class LabelingError(SimchaosError):
    def __init__(self, message, diagnostic=None):
        super().__init__(message)
        self.diagnostic = diagnostic or {}


class PluginResolutionError(SimchaosError, KeyError):
    pass


class TreeFormatError(SimchaosError, ValueError):
    pass


class ConfigError(SimchaosError, ValueError):
    pass

# errors.py

class VirasoroError(ValueError):
    """Base class for every error raised by the core package."""


class InvalidParameterError(VirasoroError):
    pass


class LevelError(VirasoroError):
    pass


class VacuumIndexError(VirasoroError):
    pass


class ZeroElementError(VirasoroError):
    pass


class NotHomogeneousError(VirasoroError):
    pass


class RequiresSimpleError(VirasoroError):
    pass


class ProfileBoundsError(VirasoroError):
    pass


class NotInImageError(VirasoroError):
    pass


class GammaZeroError(VirasoroError):
    pass


class ExtractionError(VirasoroError):
    pass


class ConsistencyError(VirasoroError):
    """Two independent computations of the same quantity disagree."""


class UnknownCheckError(VirasoroError):
    pass


class GrammarError(VirasoroError):
    """Syntax error in an element, spec, descriptor or profile literal."""

    def __init__(self, message: str, position: int | None = None):
        super().__init__(message)
        self.position = position

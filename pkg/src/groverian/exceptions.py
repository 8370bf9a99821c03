"""Exception hierarchy shared by every module of the package."""


class GroverianError(ValueError):
    """Base class for all domain errors raised by this package."""


class DimensionMismatch(GroverianError):
    pass


class ZeroVector(GroverianError):
    pass


class TooLarge(GroverianError):
    pass


class InvalidKind(GroverianError):
    pass


class IndexOutOfRange(GroverianError):
    pass


class NonUnitary(GroverianError):
    pass


class InvalidN(GroverianError):
    pass


class OutOfRange(GroverianError):
    pass


class ComplexInput(GroverianError):
    """Raised when a closed-form expression is fed a state with complex amplitudes."""


class Unsupported(GroverianError):
    pass


class StateSpecError(GroverianError):
    """A state spec string or state file could not be resolved."""


class IoFailure(GroverianError):
    pass

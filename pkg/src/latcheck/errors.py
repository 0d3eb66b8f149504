"""Exception types shared across the package."""


class LatcheckError(Exception):
    """Base class for all errors raised by this package."""


class InvalidParameterError(LatcheckError):
    """An argument is malformed or refers to a foreign frame/carrier."""


class ResourceLimitError(LatcheckError):
    """An enumeration would exceed the configured caps.

    `stage` names the blow-up point so callers can report it.
    """

    def __init__(self, message, stage=None):
        super().__init__(message)
        self.stage = stage


class NotALatticeError(InvalidParameterError):
    """A cover relation has a pair without a meet or join."""

    def __init__(self, message, witness=None):
        super().__init__(message)
        self.witness = witness


class NotDistributiveError(InvalidParameterError):
    """A lattice fails binary distributivity; carries a witness triple."""

    def __init__(self, message, witness=None):
        super().__init__(message)
        self.witness = witness


class PreconditionError(LatcheckError):
    """A documented precondition of an operation does not hold."""

    def __init__(self, message, witness=None):
        super().__init__(message)
        self.witness = witness

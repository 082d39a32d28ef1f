"""Exception hierarchy shared by the library and the CLI."""


class DSeqError(Exception):
    """Base class for all library errors."""


class ParameterError(DSeqError, ValueError):
    """An argument violates a documented precondition."""


class NotApplicableError(DSeqError):
    """The requested check does not apply to the given input (e.g. odd period)."""


class DimensionError(ParameterError):
    """Image, mark or plan geometry is inconsistent."""


class DegenerateSequenceError(ParameterError):
    """The spreading sequence is too short to be useful."""


class PlanFormatError(DSeqError):
    """A ``.wmplan`` sidecar is missing fields or malformed."""


class NetpbmError(DSeqError, ValueError):
    """Base class for PGM/PBM parse failures."""


class HeaderError(NetpbmError):
    pass


class TruncatedError(NetpbmError):
    pass


class UnsupportedMaxvalError(NetpbmError):
    pass

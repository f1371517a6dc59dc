"""Exception hierarchy shared by all lflab modules."""


class LFError(Exception):
    """Base class for every error raised by lflab."""


class FormatError(LFError, ValueError):
    """A file or stream does not follow its declared format."""


class LoadError(LFError):
    """A light field could not be assembled from its manifest."""


class MissingFileError(LoadError, FileNotFoundError):
    pass


class ParameterError(LFError, ValueError):
    pass


class ShapeError(LFError, ValueError):
    pass


class NumericError(LFError, ValueError):
    pass


class BitstreamError(LFError, ValueError):
    """Corrupt LFJ1 container or entropy-coded payload.

    ``bit_offset`` is the position (counted from the start of the payload)
    where decoding stopped, when known.
    """

    def __init__(self, message, bit_offset=None):
        if bit_offset is not None:
            message = f"{message} (bit offset {bit_offset})"
        super().__init__(message)
        self.bit_offset = bit_offset

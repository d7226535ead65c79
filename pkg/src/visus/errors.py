"""Exception hierarchy shared by every visus module."""


class VisusError(Exception):
    """Base class for all visus errors."""


class UnsupportedFormat(VisusError):
    pass


class DecodeError(VisusError):
    pass


class AlphaPresent(VisusError):
    pass


class ImageIOError(VisusError, OSError):
    pass


class PayloadTooLong(VisusError, ValueError):
    pass


class MessageTooLarge(VisusError, ValueError):
    """The cover has too few carrier pixels for the framed message."""

    def __init__(self, needed_bytes, capacity_bytes):
        self.needed_bytes = needed_bytes
        self.capacity_bytes = capacity_bytes
        super().__init__(
            f"message needs {needed_bytes} bytes but cover capacity is {capacity_bytes} bytes"
        )


class MalformedHeader(VisusError):
    pass


class TruncatedStream(VisusError):
    pass


class DimensionMismatch(VisusError, ValueError):
    pass


class DuplicateShareIndex(VisusError, ValueError):
    pass


class IncompleteShares(VisusError):
    pass

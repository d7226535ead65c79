"""Hide a message in carrier pixels, split the result into seven bit-plane
shares, and put it back together with a bitwise OR."""
from ._backend import name as backend
from .errors import (
    AlphaPresent,
    DecodeError,
    DimensionMismatch,
    DuplicateShareIndex,
    ImageIOError,
    IncompleteShares,
    MalformedHeader,
    MessageTooLarge,
    PayloadTooLong,
    TruncatedStream,
    UnsupportedFormat,
    VisusError,
)
from .image import PixelCoord, RasterImage, load_image, save_image
from .metrics import ChannelMetrics, Histogram, MetricsReport, compute_histogram, compute_metrics
from .shares import (
    SHARE_MASKS,
    Share,
    SubsetReport,
    make_shares,
    min_guaranteed_size,
    reconstruct,
    verify_threshold,
)
from .stego import capacity_bytes, embed, extract, find_carriers, frame_payload, sanitize

__version__ = "0.1.0"

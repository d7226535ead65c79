"""Carrier-pixel offset steganography.

Carriers are pixels whose three channels are all below 40. The message is
framed as a 16-bit big-endian byte count followed by the payload bytes, and
every byte is cut MSB-first into four 2-bit symbols. Symbol ``s`` turns a
carrier into ``(40 + s, 40, 40)``. Extraction scans for pixels with two
channels at 40 and the third in 40..43 and reads ``R + G + B - 120``.
"""
from __future__ import annotations

import numpy as np

from ._backend import kernels
from .errors import MalformedHeader, MessageTooLarge, PayloadTooLong, TruncatedStream
from .image import PixelCoord, RasterImage

CARRIER_LIMIT = 40
HEADER_SYMBOLS = 8
SYMBOLS_PER_BYTE = 4
MAX_PAYLOAD = 0xFFFF


def carrier_indices(image: RasterImage) -> np.ndarray:
    """Flat raster indices of every carrier pixel."""
    return kernels.carrier_indices(image.array)


def find_carriers(image: RasterImage) -> list[PixelCoord]:
    w = image.width
    return [PixelCoord(int(i) % w, int(i) // w) for i in carrier_indices(image)]


def capacity_bytes(image: RasterImage) -> int:
    n = len(carrier_indices(image))
    return min(MAX_PAYLOAD, max(0, (n - HEADER_SYMBOLS) // SYMBOLS_PER_BYTE))


def frame_payload(payload: bytes) -> np.ndarray:
    """Return the symbol stream (values 0..3) for ``payload`` including its header."""
    payload = bytes(payload)
    if len(payload) > MAX_PAYLOAD:
        raise PayloadTooLong(f"payload is {len(payload)} bytes; the header allows at most {MAX_PAYLOAD}")
    framed = np.frombuffer(len(payload).to_bytes(2, "big") + payload, dtype=np.uint8)
    shifts = np.array([6, 4, 2, 0], dtype=np.uint8)
    return ((framed[:, None] >> shifts) & 3).reshape(-1).astype(np.uint8)


def unframe_symbols(symbols) -> bytes:
    """Inverse of frame_payload: read the header and reassemble the payload."""
    symbols = np.asarray(symbols, dtype=np.uint8)
    if symbols.size < HEADER_SYMBOLS:
        raise MalformedHeader(f"found {symbols.size} pattern pixels; the length header needs {HEADER_SYMBOLS}")
    length = int(_pack(symbols[:HEADER_SYMBOLS]).view(">u2")[0])
    needed = HEADER_SYMBOLS + SYMBOLS_PER_BYTE * length
    if symbols.size < needed:
        raise TruncatedStream(
            f"header announces {length} bytes ({needed} symbols) but only {symbols.size} pattern pixels exist"
        )
    return _pack(symbols[HEADER_SYMBOLS:needed]).tobytes()


def _pack(symbols: np.ndarray) -> np.ndarray:
    quads = symbols.reshape(-1, SYMBOLS_PER_BYTE).astype(np.uint8)
    return ((quads[:, 0] << 6) | (quads[:, 1] << 4) | (quads[:, 2] << 2) | quads[:, 3]).astype(np.uint8)


def sanitize(cover: RasterImage) -> RasterImage:
    """Break every natural pixel that would read as a message symbol.

    The channel not equal to 40 is moved to 44; a pixel that is 40 on every
    channel has its blue dropped to 39. Carriers never match the pattern, so
    they are left alone.
    """
    return RasterImage(kernels.sanitize(cover.array))


def embed(cover: RasterImage, payload: bytes) -> RasterImage:
    symbols = frame_payload(payload)
    carriers = carrier_indices(cover)
    if symbols.size > carriers.size:
        raise MessageTooLarge(len(payload), capacity_bytes(cover))
    clean = kernels.sanitize(cover.array)
    return RasterImage(kernels.write_symbols(clean, carriers[: symbols.size], symbols))


def extract(stego: RasterImage) -> bytes:
    return unframe_symbols(kernels.pattern_symbols(stego.array))

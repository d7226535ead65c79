"""Raster image type and bit-exact lossless file I/O.

Pixels are held as a read-only ``uint8`` array of shape ``(height, width, 3)``.
Flat pixel indices used throughout the package follow row-major order with a
top-left origin, so index ``i`` is the coordinate ``(i % width, i // width)``.
"""
from __future__ import annotations

import os
from dataclasses import dataclass
from typing import Iterable, Iterator, NamedTuple

import numpy as np
from PIL import Image, UnidentifiedImageError

from .errors import AlphaPresent, DecodeError, ImageIOError, UnsupportedFormat

#: file extension -> Pillow format name
FORMATS = {
    ".png": "PNG",
    ".bmp": "BMP",
    ".ppm": "PPM",
}

_ALPHA_MODES = {"RGBA", "LA", "PA"}
# Modes that convert to RGB without changing any sample value.
_EXACT_MODES = {"RGB", "L", "P", "1"}


class PixelCoord(NamedTuple):
    x: int
    y: int


@dataclass(frozen=True, eq=False)
class RasterImage:
    """An 8-bit RGB image. Immutable once constructed."""

    array: np.ndarray

    def __post_init__(self):
        arr = np.asarray(self.array)
        if arr.ndim != 3 or arr.shape[2] != 3:
            raise ValueError(f"expected an (H, W, 3) array, got shape {arr.shape}")
        if arr.shape[0] == 0 or arr.shape[1] == 0:
            raise ValueError("image dimensions must be positive")
        if arr.dtype != np.uint8:
            if not np.issubdtype(arr.dtype, np.integer):
                raise ValueError(f"expected integer samples, got {arr.dtype}")
            if arr.min() < 0 or arr.max() > 255:
                raise ValueError("channel values must lie in [0, 255]")
        arr = np.array(arr, dtype=np.uint8, order="C", copy=True)
        arr.setflags(write=False)
        object.__setattr__(self, "array", arr)

    @classmethod
    def from_pixels(cls, width: int, height: int, pixels: Iterable[tuple[int, int, int]]) -> RasterImage:
        data = np.array(list(pixels), dtype=np.int64)
        if data.shape != (width * height, 3):
            raise ValueError(
                f"expected {width * height} RGB triples for a {width}x{height} image, got shape {data.shape}"
            )
        return cls(data.reshape(height, width, 3))

    @classmethod
    def blank(cls, width: int, height: int, color=(0, 0, 0)) -> RasterImage:
        arr = np.empty((height, width, 3), dtype=np.uint8)
        arr[...] = color
        return cls(arr)

    @property
    def width(self) -> int:
        return self.array.shape[1]

    @property
    def height(self) -> int:
        return self.array.shape[0]

    @property
    def shape(self) -> tuple[int, int]:
        return self.width, self.height

    def __len__(self):
        return self.width * self.height

    def pixels(self) -> Iterator[tuple[int, int, int]]:
        """Yield (R, G, B) triples in raster order."""
        for r, g, b in self.array.reshape(-1, 3).tolist():
            yield r, g, b

    def pixel(self, x: int, y: int) -> tuple[int, int, int]:
        r, g, b = self.array[y, x].tolist()
        return r, g, b

    def coord(self, index: int) -> PixelCoord:
        return PixelCoord(index % self.width, index // self.width)

    def __eq__(self, other):
        if not isinstance(other, RasterImage):
            return NotImplemented
        return self.array.shape == other.array.shape and np.array_equal(self.array, other.array)

    __hash__ = None

    def __repr__(self):
        return f"RasterImage(width={self.width}, height={self.height})"


def _format_for(path) -> str:
    ext = os.path.splitext(os.fspath(path))[1].lower()
    try:
        return FORMATS[ext]
    except KeyError:
        raise UnsupportedFormat(
            f"{path}: unsupported extension {ext!r}; use one of {', '.join(sorted(FORMATS))}"
        ) from None


def load_image(path, strip_alpha: bool = False) -> RasterImage:
    """Decode a PNG, BMP or binary PPM file into a RasterImage.

    Lossy formats are refused outright. Images carrying an alpha channel raise
    AlphaPresent unless ``strip_alpha`` is set, in which case alpha is dropped
    and the colour samples are kept untouched.
    """
    path = os.fspath(path)
    try:
        im = Image.open(path)
    except FileNotFoundError:
        raise ImageIOError(f"{path}: no such file") from None
    except UnidentifiedImageError as exc:
        raise UnsupportedFormat(f"{path}: not a recognised image file") from exc
    except OSError as exc:
        raise ImageIOError(f"{path}: {exc}") from exc

    with im:
        if im.format not in FORMATS.values():
            raise UnsupportedFormat(f"{path}: {im.format} is not a supported lossless format")
        if im.format == "PPM" and im.get_format_mimetype() != "image/x-portable-pixmap":
            # PGM/PBM decode through the same plugin; only P6 colour is accepted.
            raise UnsupportedFormat(f"{path}: only binary P6 pixmaps are supported")
        try:
            im.load()
        except (OSError, ValueError, SyntaxError) as exc:
            raise DecodeError(f"{path}: {exc}") from exc

        mode = im.mode
        has_alpha = mode in _ALPHA_MODES or (mode == "P" and "transparency" in im.info)
        if has_alpha:
            if not strip_alpha:
                raise AlphaPresent(f"{path}: image has an alpha channel (pass strip_alpha to drop it)")
            # Pillow drops alpha without compositing, so colour samples survive as-is.
            im = im.convert("RGBA").convert("RGB")
        elif mode in _EXACT_MODES:
            im = im.convert("RGB") if mode != "RGB" else im
        else:
            raise UnsupportedFormat(f"{path}: pixel mode {mode} is not 8-bit RGB")

        arr = np.asarray(im, dtype=np.uint8)
    return RasterImage(arr)


def save_image(image: RasterImage, path) -> None:
    """Write ``image`` losslessly; the format follows the file extension."""
    path = os.fspath(path)
    fmt = _format_for(path)
    im = Image.fromarray(np.ascontiguousarray(image.array))
    try:
        im.save(path, format=fmt)
    except OSError as exc:
        raise ImageIOError(f"{path}: {exc}") from exc

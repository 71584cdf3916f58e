"""Grayscale image loading and gray-level quantization.

Images are plain 2-D uint8 numpy arrays (row-major, intensities 0..255).
Matrix-based texture descriptors work on a reduced gray-level alphabet,
produced by :func:`quantize`.
"""

from __future__ import annotations

from dataclasses import dataclass
from pathlib import Path

import numpy as np
from PIL import Image, UnidentifiedImageError


class ImageFormatError(ValueError):
    """Raised for decodable files whose pixel format is unsupported."""


# Rec.601 luma weights; applied to RGB(A) input with half-up rounding.
_LUMA = (0.299, 0.587, 0.114)


@dataclass(frozen=True)
class QuantizedImage:
    """Gray-level-reduced image: ``values`` hold integers in [0, levels)."""

    values: np.ndarray
    levels: int

    def __post_init__(self):
        v = self.values
        if v.ndim != 2:
            raise ValueError("quantized image must be 2-D")
        if self.levels < 2:
            raise ValueError("levels must be >= 2")
        if v.size and int(v.max()) >= self.levels:
            raise ValueError("quantized value exceeds level count")

    @property
    def height(self) -> int:
        return self.values.shape[0]

    @property
    def width(self) -> int:
        return self.values.shape[1]


def validate_gray_image(img: np.ndarray) -> np.ndarray:
    """Check the 2-D uint8 contract shared by every extractor."""
    img = np.asarray(img)
    if img.ndim != 2:
        raise ValueError(f"expected a 2-D grayscale array, got shape {img.shape}")
    if img.shape[0] < 2 or img.shape[1] < 2:
        raise ValueError("image must be at least 2x2")
    if img.dtype != np.uint8:
        if not np.issubdtype(img.dtype, np.integer):
            raise ValueError("image must hold integer intensities")
        if img.size and (img.min() < 0 or img.max() > 255):
            raise ValueError("intensities must lie in [0, 255]")
        img = img.astype(np.uint8)
    return img


def load_image(path) -> np.ndarray:
    """Load a PNG as a 2-D uint8 grayscale array.

    RGB(A) input is converted with Rec.601 luma (0.299 R + 0.587 G +
    0.114 B), rounded half-up; alpha is ignored. Only 8-bit channels are
    accepted.
    """
    path = Path(path)
    try:
        with Image.open(path) as im:
            im.load()
            mode = im.mode
            if mode in ("L", "LA"):
                arr = np.asarray(im if mode == "L" else im.getchannel("L"))
                return arr.astype(np.uint8)
            if mode in ("RGB", "RGBA"):
                rgb = np.asarray(im)[:, :, :3].astype(np.float64)
                lum = _LUMA[0] * rgb[:, :, 0] + _LUMA[1] * rgb[:, :, 1] + _LUMA[2] * rgb[:, :, 2]
                return np.floor(lum + 0.5).astype(np.uint8)
            raise ImageFormatError(f"unsupported pixel format {mode!r} in {path}")
    except UnidentifiedImageError as exc:
        raise ImageFormatError(f"not a decodable image: {path}") from exc
    except OSError as exc:
        raise OSError(f"cannot read image {path}: {exc}") from exc


def quantize(img: np.ndarray, levels: int) -> QuantizedImage:
    """Uniform-width bucket quantization: value = floor(intensity * levels / 256).

    Order-preserving in intensity; ``levels`` must lie in [2, 256].
    """
    if not 2 <= levels <= 256:
        raise ValueError(f"levels must be in [2, 256], got {levels}")
    img = validate_gray_image(img)
    values = (img.astype(np.int64) * levels) // 256
    return QuantizedImage(values=values.astype(np.int32), levels=levels)

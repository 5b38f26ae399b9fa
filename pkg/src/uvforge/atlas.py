"""RGBA texture atlases: the raster form of a garment's UV map.

Atlases are immutable values around a (height, width, 4) uint8 array.
Only PNG input is accepted; grayscale/palette/RGB files are expanded to
RGBA with alpha 255, 16-bit files are rejected so goldens stay bit-exact.
"""

from __future__ import annotations

import hashlib
import io
from dataclasses import dataclass
from pathlib import Path

import numpy as np
from PIL import Image, UnidentifiedImageError

from .errors import DecodeError, DimensionBound

MAX_DIM = 16384

# 8-bit-per-channel PIL modes we expand to RGBA; anything else is rejected.
_ACCEPTED_MODES = {"1", "L", "LA", "P", "PA", "RGB", "RGBA"}


@dataclass(frozen=True)
class TextureAtlas:
    """An sRGB-encoded RGBA pixel grid with straight (non-premultiplied) alpha."""

    width: int
    height: int
    pixels: np.ndarray  # (height, width, 4) uint8, read-only

    def __post_init__(self):
        if not (1 <= self.width <= MAX_DIM and 1 <= self.height <= MAX_DIM):
            raise DimensionBound(
                f"atlas dimensions {self.width}x{self.height} outside 1..{MAX_DIM}"
            )
        px = self.pixels
        if px.dtype != np.uint8 or px.shape != (self.height, self.width, 4):
            raise ValueError(
                f"pixel buffer shape {px.shape} dtype {px.dtype} does not match "
                f"{self.height}x{self.width} RGBA"
            )
        px.flags.writeable = False

    @classmethod
    def from_array(cls, pixels: np.ndarray) -> "TextureAtlas":
        """Wrap an (h, w, 4) uint8 array; the array is copied and frozen."""
        arr = np.ascontiguousarray(pixels, dtype=np.uint8)
        if arr.ndim != 3 or arr.shape[2] != 4:
            raise ValueError(f"expected (h, w, 4) RGBA array, got shape {arr.shape}")
        arr = arr.copy()
        return cls(width=arr.shape[1], height=arr.shape[0], pixels=arr)

    def to_image(self) -> Image.Image:
        return Image.fromarray(np.asarray(self.pixels), mode="RGBA")


def new_atlas(width: int, height: int, rgba=(0, 0, 0, 255)) -> TextureAtlas:
    """Create a solid-color atlas."""
    px = np.empty((height, width, 4), dtype=np.uint8)
    px[:, :] = rgba
    return TextureAtlas(width=width, height=height, pixels=px)


def decode_png(data: bytes) -> TextureAtlas:
    """Decode PNG bytes into an RGBA atlas.

    Raises DecodeError for non-PNG or corrupt payloads and for bit depths
    above 8; DimensionBound past the 16384 sanity limit.
    """
    try:
        img = Image.open(io.BytesIO(data))
    except (UnidentifiedImageError, OSError, ValueError) as exc:
        raise DecodeError(f"cannot decode image: {exc}") from exc
    if img.format != "PNG":
        raise DecodeError(f"expected PNG, got {img.format or 'unknown format'}")
    if img.mode not in _ACCEPTED_MODES:
        raise DecodeError(f"unsupported PNG mode {img.mode!r} (8-bit only)")
    if img.width > MAX_DIM or img.height > MAX_DIM:
        raise DimensionBound(
            f"image {img.width}x{img.height} exceeds the {MAX_DIM} bound"
        )
    try:
        rgba = img.convert("RGBA")
        arr = np.asarray(rgba, dtype=np.uint8)
    except (OSError, SyntaxError, ValueError) as exc:  # truncated file etc.
        raise DecodeError(f"corrupt PNG: {exc}") from exc
    return TextureAtlas(width=img.width, height=img.height, pixels=arr.copy())


def load_atlas(path) -> TextureAtlas:
    """Load a PNG file from disk as an RGBA atlas."""
    data = Path(path).read_bytes()
    return decode_png(data)


def encode_png(atlas: TextureAtlas) -> bytes:
    """Encode an atlas as PNG with pinned settings (no ancillary chunks).

    Output is deterministic for a given Pillow/zlib, which is what recipe
    replay and the wardrobe digests rely on.
    """
    buf = io.BytesIO()
    atlas.to_image().save(buf, format="PNG", optimize=False, compress_level=6)
    return buf.getvalue()


def sha256_hex(data: bytes) -> str:
    """The pinned content digest: lowercase sha256 hex (64 chars)."""
    return hashlib.sha256(data).hexdigest()


def pixel_digest(atlas: TextureAtlas) -> str:
    """Digest of the raw RGBA buffer (row-major, 4 bytes per pixel).

    Used for golden comparisons because it is independent of PNG encoder
    settings; file-level digests use sha256_hex on the encoded bytes.
    """
    return sha256_hex(np.ascontiguousarray(atlas.pixels).tobytes())

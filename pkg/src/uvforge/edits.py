"""The three texture edit modes, confined to a part region, plus recipe replay.

Every op is a pure function: it returns a new atlas and leaves all pixels
outside the target region byte-identical to the input. Blending happens on
sRGB bytes with the pinned rule mix(a, b, t) = floor(a + (b - a) * t + 0.5)
(t in [0, 1]); the full arithmetic contract lives in docs/determinism.md
and tests/reference.py re-implements it naively as the test oracle.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from pathlib import Path

import numpy as np

from .atlas import TextureAtlas, decode_png, load_atlas
from .color import rgb_to_hsl
from .errors import (
    DimensionMismatch,
    EmptyFillImage,
    EmptyLogo,
    EmptyRegion,
    GarmentMismatch,
    NonPositiveScale,
    RecipeOpError,
    ResolveError,
    UvforgeError,
)
from .genprovider import cached_resolve
from .mask import PartMaskIndex, Region, extract_region
from .recipe import (
    AssetRef,
    GeneratedRef,
    ImageRef,
    InlineRef,
    LogoStamp,
    Recipe,
    Recolor,
    TextureFill,
)


@dataclass(frozen=True)
class GarmentAssets:
    """What an edit needs to know about a garment: its id and part index."""

    garment_id: str
    index: PartMaskIndex


def _check_geometry(atlas: TextureAtlas, region: Region, index: PartMaskIndex):
    if (index.width, index.height) != (atlas.width, atlas.height):
        raise DimensionMismatch(
            f"part index {index.width}x{index.height} vs atlas "
            f"{atlas.width}x{atlas.height}"
        )
    if region.bits.shape != (atlas.height, atlas.width):
        raise DimensionMismatch("region grid does not match the atlas")
    if region.empty:
        raise EmptyRegion(f"part {region.part_name!r} has no pixels")


def _mix_rgb(src: np.ndarray, repl: np.ndarray, t: np.ndarray) -> np.ndarray:
    # pinned blend on float64; inputs are non-negative so floor(x + 0.5)
    # is round-half-away-from-zero
    return np.floor(src + (repl - src) * t + 0.5)


def _bilinear_clamp(img: np.ndarray, sx: np.ndarray, sy: np.ndarray) -> np.ndarray:
    """Sample img (H, W, C) float64 at continuous coords, clamping at edges.

    Fractions are taken before clamping, so coordinates up to half a texel
    past the border reproduce the edge texel.
    """
    h, w = img.shape[:2]
    i0f = np.floor(sx)
    j0f = np.floor(sy)
    fu = (sx - i0f)[..., None]
    fv = (sy - j0f)[..., None]
    i0 = np.clip(i0f.astype(np.int64), 0, w - 1)
    i1 = np.clip(i0f.astype(np.int64) + 1, 0, w - 1)
    j0 = np.clip(j0f.astype(np.int64), 0, h - 1)
    j1 = np.clip(j0f.astype(np.int64) + 1, 0, h - 1)
    a00 = img[j0, i0]
    a10 = img[j0, i1]
    a01 = img[j1, i0]
    a11 = img[j1, i1]
    nx0 = a00 + (a10 - a00) * fu
    nx1 = a01 + (a11 - a01) * fu
    return nx0 + (nx1 - nx0) * fv


def _bilinear_wrap(img: np.ndarray, u: np.ndarray, v: np.ndarray) -> np.ndarray:
    """Sample img (H, W, C) float64 with modulo wrapping (tile mode)."""
    h, w = img.shape[:2]
    i0f = np.floor(u)
    j0f = np.floor(v)
    fu = (u - i0f)[..., None]
    fv = (v - j0f)[..., None]
    i0 = i0f.astype(np.int64) % w
    i1 = (i0f.astype(np.int64) + 1) % w
    j0 = j0f.astype(np.int64) % h
    j1 = (j0f.astype(np.int64) + 1) % h
    a00 = img[j0, i0]
    a10 = img[j0, i1]
    a01 = img[j1, i0]
    a11 = img[j1, i1]
    nx0 = a00 + (a10 - a00) * fu
    nx1 = a01 + (a11 - a01) * fu
    return nx0 + (nx1 - nx0) * fv


# --------------------------------------------------------------------------
# Recolor.


def _shaded_replacement(src_rgb: np.ndarray, target) -> np.ndarray:
    """Per-pixel replacement keeping source HSL lightness, target hue/sat.

    src_rgb is (n, 3) float64 byte values; returns (n, 3) float64 bytes.
    Mirrors color.hsl_to_rgb exactly, vectorized over the lightness.
    """
    h_t, s_t, _ = rgb_to_hsl(target)
    r = src_rgb[:, 0] / 255.0
    g = src_rgb[:, 1] / 255.0
    b = src_rgb[:, 2] / 255.0
    mx = np.maximum(np.maximum(r, g), b)
    mn = np.minimum(np.minimum(r, g), b)
    l = (mx + mn) / 2.0

    c = (1.0 - np.abs(2.0 * l - 1.0)) * s_t
    hp = h_t / 60.0
    x = c * (1.0 - abs(hp % 2.0 - 1.0))
    k = int(math.floor(hp)) % 6
    zero = np.zeros_like(c)
    channels = {
        0: (c, x, zero),
        1: (x, c, zero),
        2: (zero, c, x),
        3: (zero, x, c),
        4: (x, zero, c),
        5: (c, zero, x),
    }[k]
    m = l - c / 2.0
    out = np.stack(
        [np.floor((ch + m) * 255.0 + 0.5) for ch in channels], axis=1
    )
    return np.clip(out, 0.0, 255.0)


def recolor(
    atlas: TextureAtlas,
    region: Region,
    index: PartMaskIndex,
    target,
    preserve_shading: bool,
) -> TextureAtlas:
    """Change the color of one part; alpha and out-of-region pixels untouched.

    preserve_shading keeps each pixel's HSL lightness and adopts the
    target's hue and saturation; otherwise the target color is used flat.
    The replacement is blended in by the pixel's coverage.
    """
    _check_geometry(atlas, region, index)
    out = atlas.pixels.copy()
    bits = region.bits
    src = out[bits][:, :3].astype(np.float64)
    cov = index.coverage[bits]

    if preserve_shading:
        repl = _shaded_replacement(src, target)
    else:
        repl = np.empty_like(src)
        repl[:] = np.array(target, dtype=np.float64)

    mixed = _mix_rgb(src, repl, cov[:, None]).astype(np.uint8)
    rgb = out[:, :, :3]
    rgb[bits] = mixed
    return TextureAtlas(width=atlas.width, height=atlas.height, pixels=out)


# --------------------------------------------------------------------------
# Texture fill.


def texture_fill(
    atlas: TextureAtlas,
    region: Region,
    index: PartMaskIndex,
    fill: TextureAtlas,
    fit: str = "tile",
    tile_scale: float = 1.0,
    blend_opacity: float = 1.0,
) -> TextureAtlas:
    """Fill a part with an image, tiled or stretched over the region bbox.

    Tiling is anchored at the bbox top-left so the pattern stays aligned to
    its part; tile_scale zooms the pattern (nearest-neighbor at exactly 1,
    bilinear with wraparound otherwise). Stretch maps the bbox corners onto
    the fill corners with clamped bilinear sampling. The fill's own alpha is
    ignored; the atlas alpha channel is preserved.
    """
    if fill is None or fill.width < 1 or fill.height < 1:
        raise EmptyFillImage("fill image has no pixels")
    if fit not in ("tile", "stretch"):
        raise ValueError(f"fit must be 'tile' or 'stretch', got {fit!r}")
    if tile_scale <= 0:
        raise NonPositiveScale(f"tile_scale {tile_scale} must be > 0")
    _check_geometry(atlas, region, index)

    x0, y0, x1, y1 = region.bbox
    fw, fh = fill.width, fill.height
    window = np.s_[y0:y1 + 1, x0:x1 + 1]
    bits_w = region.bits[window]
    cov_w = np.where(bits_w, index.coverage[window], 0.0)

    xs = np.arange(x0, x1 + 1, dtype=np.int64)
    ys = np.arange(y0, y1 + 1, dtype=np.int64)
    fill_f = fill.pixels[:, :, :3].astype(np.float64)

    if fit == "tile":
        if tile_scale == 1.0:
            ix = (xs - x0) % fw
            iy = (ys - y0) % fh
            sample = fill_f[iy[:, None], ix[None, :]]
        else:
            u = ((xs - x0).astype(np.float64) / tile_scale) % fw
            v = ((ys - y0).astype(np.float64) / tile_scale) % fh
            uu = np.broadcast_to(u[None, :], bits_w.shape)
            vv = np.broadcast_to(v[:, None], bits_w.shape)
            sample = _bilinear_wrap(fill_f, uu, vv)
    else:
        bw = x1 - x0 + 1
        bh = y1 - y0 + 1
        sx = (fw - 1) / (bw - 1) if bw > 1 else 0.0
        sy = (fh - 1) / (bh - 1) if bh > 1 else 0.0
        u = (xs - x0).astype(np.float64) * sx
        v = (ys - y0).astype(np.float64) * sy
        uu = np.broadcast_to(u[None, :], bits_w.shape)
        vv = np.broadcast_to(v[:, None], bits_w.shape)
        sample = _bilinear_clamp(fill_f, uu, vv)

    out = atlas.pixels.copy()
    out_w = out[window]
    src = out_w[:, :, :3].astype(np.float64)
    t = cov_w * blend_opacity
    mixed = _mix_rgb(src, sample, t[:, :, None]).astype(np.uint8)
    rgb_w = out_w[:, :, :3]
    rgb_w[bits_w] = mixed[bits_w]
    return TextureAtlas(width=atlas.width, height=atlas.height, pixels=out)


# --------------------------------------------------------------------------
# Logo stamp.


def logo_stamp(
    atlas: TextureAtlas,
    region: Region,
    index: PartMaskIndex,
    logo: TextureAtlas,
    anchor_uv,
    scale: float,
    rotation_deg: float,
    opacity: float,
) -> TextureAtlas:
    """Composite a logo at a part-relative anchor with scale and rotation.

    The logo center lands at bbox_min + uv * bbox_size; each destination
    pixel center is inverse-mapped into logo space and sampled bilinearly
    (clamped), with points outside the logo rectangle contributing alpha 0.
    Positive rotation turns the logo clockwise on screen (y grows downward).
    Blending is confined to the part region (clip-to-part is always on) and
    weighted by coverage * opacity * logo alpha.
    """
    if logo is None or logo.width < 1 or logo.height < 1:
        raise EmptyLogo("logo image has no pixels")
    if scale <= 0:
        raise NonPositiveScale(f"scale {scale} must be > 0")
    _check_geometry(atlas, region, index)

    x0, y0, x1, y1 = region.bbox
    bw = x1 - x0 + 1
    bh = y1 - y0 + 1
    u, v = anchor_uv
    cx = x0 + u * bw
    cy = y0 + v * bh

    lw, lh = logo.width, logo.height
    rad = rotation_deg * (math.pi / 180.0)
    ct = math.cos(rad)
    st = math.sin(rad)

    # conservative footprint box, intersected with the region bbox
    half = scale * math.hypot(lw, lh) / 2.0 + 1.0
    wx0 = max(x0, int(math.floor(cx - half)))
    wx1 = min(x1, int(math.ceil(cx + half)))
    wy0 = max(y0, int(math.floor(cy - half)))
    wy1 = min(y1, int(math.ceil(cy + half)))
    out = atlas.pixels.copy()
    if wx0 > wx1 or wy0 > wy1:
        return TextureAtlas(width=atlas.width, height=atlas.height, pixels=out)

    xs = np.arange(wx0, wx1 + 1, dtype=np.float64)
    ys = np.arange(wy0, wy1 + 1, dtype=np.float64)
    dx = (xs + 0.5) - cx
    dy = (ys + 0.5) - cy
    qx = ((dx * ct)[None, :] + (dy * st)[:, None]) / scale
    qy = ((dy * ct)[:, None] - (dx * st)[None, :]) / scale

    inside = (np.abs(qx) <= lw / 2.0) & (np.abs(qy) <= lh / 2.0)
    window = np.s_[wy0:wy1 + 1, wx0:wx1 + 1]
    bits_w = region.bits[window]
    write = inside & bits_w
    if not write.any():
        return TextureAtlas(width=atlas.width, height=atlas.height, pixels=out)

    sx = qx + (lw / 2.0 - 0.5)
    sy = qy + (lh / 2.0 - 0.5)
    logo_f = logo.pixels.astype(np.float64)
    sample = _bilinear_clamp(logo_f, sx, sy)
    logo_rgb = sample[:, :, :3]
    logo_alpha = sample[:, :, 3] / 255.0

    cov_w = np.where(bits_w, index.coverage[window], 0.0)
    t = (cov_w * opacity) * logo_alpha

    out_w = out[window]
    src = out_w[:, :, :3].astype(np.float64)
    mixed = _mix_rgb(src, logo_rgb, t[:, :, None]).astype(np.uint8)
    rgb_w = out_w[:, :, :3]
    rgb_w[write] = mixed[write]
    return TextureAtlas(width=atlas.width, height=atlas.height, pixels=out)


# --------------------------------------------------------------------------
# Image resolution and recipe replay.


class ImageResolver:
    """Turns ImageRefs into atlases: provider + cache for generated refs,
    a rooted directory for asset refs, digest-checked bytes for inline."""

    def __init__(self, provider=None, cache_dir=None, asset_root=None):
        self.provider = provider
        self.cache_dir = cache_dir
        self.asset_root = Path(asset_root) if asset_root is not None else None

    def resolve(self, ref: ImageRef) -> TextureAtlas:
        if isinstance(ref, GeneratedRef):
            if self.provider is None:
                raise ResolveError("no generation provider configured")
            try:
                if self.cache_dir is not None:
                    return cached_resolve(self.cache_dir, self.provider, ref.request).image
                return self.provider.generate(ref.request).image
            except UvforgeError as exc:
                raise ResolveError(f"generation failed: {exc}") from exc
        if isinstance(ref, InlineRef):
            try:
                return decode_png(ref.png)
            except UvforgeError as exc:
                raise ResolveError(f"inline image invalid: {exc}") from exc
        if isinstance(ref, AssetRef):
            if self.asset_root is None:
                raise ResolveError("no asset root configured")
            target = (self.asset_root / ref.path).resolve()
            root = self.asset_root.resolve()
            if root != target and root not in target.parents:
                raise ResolveError(f"asset path {ref.path!r} escapes the asset root")
            try:
                return load_atlas(target)
            except FileNotFoundError:
                raise ResolveError(f"asset {ref.path!r} not found") from None
            except UvforgeError as exc:
                raise ResolveError(f"asset {ref.path!r} invalid: {exc}") from exc
        raise ResolveError(f"unsupported image ref {ref!r}")


def apply_op(
    assets: GarmentAssets,
    atlas: TextureAtlas,
    op,
    resolver: ImageResolver,
) -> TextureAtlas:
    """Dispatch one edit op against a garment's part index."""
    region = extract_region(assets.index, op.part)
    if isinstance(op, Recolor):
        return recolor(atlas, region, assets.index, op.target, op.preserve_shading)
    if isinstance(op, TextureFill):
        fill = resolver.resolve(op.image)
        return texture_fill(
            atlas, region, assets.index, fill,
            fit=op.fit, tile_scale=op.tile_scale, blend_opacity=op.blend_opacity,
        )
    if isinstance(op, LogoStamp):
        logo = resolver.resolve(op.image)
        return logo_stamp(
            atlas, region, assets.index, logo,
            anchor_uv=op.anchor_uv, scale=op.scale,
            rotation_deg=op.rotation_deg, opacity=op.opacity,
        )
    raise TypeError(f"unknown op {op!r}")


def apply_recipe(
    assets: GarmentAssets,
    base_atlas: TextureAtlas,
    recipe: Recipe,
    resolver: ImageResolver,
) -> TextureAtlas:
    """Left-fold the recipe's ops over the base atlas.

    Pure given resolved images; an op failure aborts with the op index
    attached. An empty op list returns the base atlas unchanged.
    """
    if recipe.garment_id != assets.garment_id:
        raise GarmentMismatch(
            f"recipe targets {recipe.garment_id!r}, garment is {assets.garment_id!r}"
        )
    atlas = base_atlas
    for i, op in enumerate(recipe.ops):
        try:
            atlas = apply_op(assets, atlas, op, resolver)
        except UvforgeError as exc:
            raise RecipeOpError(i, exc) from exc
    return atlas

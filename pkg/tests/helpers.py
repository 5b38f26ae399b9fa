"""Shared builders for tests: fixture paths, random garments, counting provider."""

from __future__ import annotations

from pathlib import Path

import numpy as np

from uvforge import (
    GarmentAssets,
    GenRequest,
    MockProvider,
    TextureAtlas,
    classify_mask,
    load_atlas,
    load_label_registry,
)
from uvforge.labels import LabelRegistry, PartLabel

FIXTURES = Path(__file__).parent / "fixtures"
GARMENT_DIR = FIXTURES / "garment"

# digest of the raw RGBA output of golden_recipe.json on the fixture garment,
# produced once by the naive reference implementation and pinned
GOLDEN_PIXEL_DIGEST = "813fd34e2f54c97d000ab63808f55b5bcdf0db3d8c2e07ba1bcf5ac5a2db80e1"

# 6x6x6 color grid: Chebyshev spacing 51 > 2 * default tolerance, so any
# subset forms a valid registry
_GRID = (0, 51, 102, 153, 204, 255)


def load_fixture_garment():
    atlas = load_atlas(GARMENT_DIR / "atlas.png")
    mask = load_atlas(GARMENT_DIR / "mask.png")
    registry = load_label_registry(GARMENT_DIR / "registry.json")
    index = classify_mask(mask, registry)
    assets = GarmentAssets(garment_id=registry.garment_id, index=index)
    return assets, atlas, registry


def random_registry(rng: np.random.Generator, n_parts: int,
                    tolerance: int = 8) -> LabelRegistry:
    picks = set()
    while len(picks) < n_parts:
        picks.add(tuple(int(_GRID[i]) for i in rng.integers(0, 6, size=3)))
    entries = tuple(
        PartLabel(name=f"part{i}", color=c, tolerance=tolerance)
        for i, c in enumerate(sorted(picks))
    )
    return LabelRegistry(garment_id="rand", entries=entries)


def random_mask(rng: np.random.Generator, width: int, height: int,
                registry: LabelRegistry, soft: bool = True) -> TextureAtlas:
    """Paint 1-2 random rects per part, later parts over earlier ones."""
    px = np.zeros((height, width, 4), dtype=np.uint8)
    for entry in registry.entries:
        for _ in range(int(rng.integers(1, 3))):
            x0 = int(rng.integers(0, width))
            y0 = int(rng.integers(0, height))
            x1 = int(rng.integers(x0, width))
            y1 = int(rng.integers(y0, height))
            alpha = 255
            if soft and rng.random() < 0.4:
                alpha = int(rng.integers(1, 256))
            px[y0:y1 + 1, x0:x1 + 1, :3] = entry.color
            px[y0:y1 + 1, x0:x1 + 1, 3] = alpha
    return TextureAtlas.from_array(px)


def random_atlas(rng: np.random.Generator, width: int, height: int) -> TextureAtlas:
    px = rng.integers(0, 256, size=(height, width, 4), dtype=np.uint8)
    return TextureAtlas.from_array(px)


def random_garment(rng: np.random.Generator, width: int, height: int,
                   n_parts: int = 3):
    """A random atlas + mask + index; retries until every part is non-empty."""
    registry = random_registry(rng, n_parts)
    while True:
        mask = random_mask(rng, width, height, registry)
        index = classify_mask(mask, registry)
        counts = [int((index.labels == lid).sum()) for lid in range(n_parts)]
        if all(c > 0 for c in counts):
            break
    atlas = random_atlas(rng, width, height)
    assets = GarmentAssets(garment_id=registry.garment_id, index=index)
    return assets, atlas, registry, mask


def small_logo(rng: np.random.Generator, w: int = 5, h: int = 4) -> TextureAtlas:
    px = rng.integers(0, 256, size=(h, w, 4), dtype=np.uint8)
    return TextureAtlas.from_array(px)


class CountingProvider:
    """Wraps another provider and counts generate() calls."""

    def __init__(self, inner=None):
        self.inner = inner or MockProvider()
        self.provider_id = self.inner.provider_id
        self.calls = 0

    def generate(self, request: GenRequest):
        self.calls += 1
        return self.inner.generate(request)

"""Shared bits for the demo scripts: fixture paths and garment loading."""

from pathlib import Path

from uvforge import GarmentAssets, classify_mask, load_atlas, load_label_registry

FIXTURES = Path(__file__).parent.parent / "tests" / "fixtures"
GARMENT_DIR = FIXTURES / "garment"


def load_fixture_garment():
    atlas = load_atlas(GARMENT_DIR / "atlas.png")
    mask = load_atlas(GARMENT_DIR / "mask.png")
    registry = load_label_registry(GARMENT_DIR / "registry.json")
    index = classify_mask(mask, registry)
    return GarmentAssets(garment_id=registry.garment_id, index=index), atlas, registry

"""Mask classification: from an artist-painted color mask to part regions.

A mask pixel belongs to a part when its RGB lies within the label's
per-channel tolerance and its alpha is nonzero; alpha scales into a soft
coverage weight (alpha / 255) so anti-aliased borders blend smoothly.
Everything else is BACKGROUND with coverage 0 -- there is no reserved
background color, so black stays usable as a label.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .atlas import TextureAtlas
from .errors import UnknownPart
from .labels import LabelRegistry

BACKGROUND = -1

DEFAULT_UNKNOWN_THRESHOLD = 0.01


@dataclass(frozen=True)
class PartMaskIndex:
    """Per-pixel part assignment for one garment.

    labels holds the index into part_names (BACKGROUND = -1); coverage is
    the fractional membership in [0, 1], exactly alpha/255 for labeled
    pixels and 0 elsewhere.
    """

    width: int
    height: int
    part_names: tuple[str, ...]
    labels: np.ndarray    # (h, w) int16
    coverage: np.ndarray  # (h, w) float64

    def __post_init__(self):
        self.labels.flags.writeable = False
        self.coverage.flags.writeable = False

    def label_id(self, part_name: str) -> int:
        try:
            return self.part_names.index(part_name)
        except ValueError:
            raise UnknownPart(f"no part named {part_name!r}") from None


@dataclass(frozen=True)
class Region:
    """The pixel set of one part: a boolean grid plus count and tight bbox.

    bbox is (x_min, y_min, x_max, y_max), inclusive; None when the region
    is empty.
    """

    part_name: str
    label: int
    bits: np.ndarray  # (h, w) bool
    pixel_count: int
    bbox: tuple[int, int, int, int] | None

    def __post_init__(self):
        self.bits.flags.writeable = False

    @property
    def empty(self) -> bool:
        return self.pixel_count == 0


def classify_mask(mask: TextureAtlas, registry: LabelRegistry) -> PartMaskIndex:
    """Assign each mask pixel to the unique matching label, or BACKGROUND.

    Pure function; the registry's color-separation invariant guarantees at
    most one label can match any pixel.
    """
    px = mask.pixels
    rgb = px[:, :, :3].astype(np.int16)
    alpha = px[:, :, 3]
    visible = alpha > 0

    labels = np.full((mask.height, mask.width), BACKGROUND, dtype=np.int16)
    coverage = np.zeros((mask.height, mask.width), dtype=np.float64)

    for lid, entry in enumerate(registry.entries):
        color = np.array(entry.color, dtype=np.int16)
        match = np.abs(rgb - color).max(axis=2) <= entry.tolerance
        match &= visible
        labels[match] = lid
        coverage[match] = alpha[match].astype(np.float64) / 255.0

    return PartMaskIndex(
        width=mask.width,
        height=mask.height,
        part_names=registry.part_names,
        labels=labels,
        coverage=coverage,
    )


def extract_region(index: PartMaskIndex, part_name: str) -> Region:
    """Collect the pixels labeled with part_name; empty regions are legal."""
    lid = index.label_id(part_name)
    bits = index.labels == lid
    count = int(bits.sum())
    if count == 0:
        return Region(part_name=part_name, label=lid, bits=bits, pixel_count=0, bbox=None)
    ys, xs = np.nonzero(bits)
    bbox = (int(xs.min()), int(ys.min()), int(xs.max()), int(ys.max()))
    return Region(part_name=part_name, label=lid, bits=bits, pixel_count=count, bbox=bbox)


@dataclass(frozen=True)
class ValidationReport:
    """Result of checking a garment's atlas + mask + registry trio."""

    garment_id: str
    dimensions_match: bool
    atlas_size: tuple[int, int]
    mask_size: tuple[int, int]
    label_pixel_counts: dict[str, int]
    unknown_fraction: float
    unknown_threshold: float
    empty_labels: tuple[str, ...]
    passed: bool

    def summary(self) -> str:
        if self.passed:
            return "ok"
        reasons = []
        if not self.dimensions_match:
            reasons.append(
                f"mask {self.mask_size[0]}x{self.mask_size[1]} vs atlas "
                f"{self.atlas_size[0]}x{self.atlas_size[1]}"
            )
        if self.unknown_fraction > self.unknown_threshold:
            reasons.append(
                f"unknown pixel fraction {self.unknown_fraction:.4f} > "
                f"{self.unknown_threshold:.4f}"
            )
        if self.empty_labels:
            reasons.append(f"empty labels: {', '.join(self.empty_labels)}")
        return "; ".join(reasons)

    def to_dict(self) -> dict:
        return {
            "garment_id": self.garment_id,
            "passed": self.passed,
            "dimensions_match": self.dimensions_match,
            "atlas_size": list(self.atlas_size),
            "mask_size": list(self.mask_size),
            "label_pixel_counts": dict(self.label_pixel_counts),
            "unknown_fraction": self.unknown_fraction,
            "unknown_threshold": self.unknown_threshold,
            "empty_labels": list(self.empty_labels),
        }


def validate_garment(
    atlas: TextureAtlas,
    mask: TextureAtlas,
    registry: LabelRegistry,
    unknown_threshold: float = DEFAULT_UNKNOWN_THRESHOLD,
) -> ValidationReport:
    """Check an artist export before accepting it into a store.

    Fails on dimension mismatch, on more than unknown_threshold of pixels
    carrying a visible color that matches no label, or on any registry
    label with zero mask pixels. Never raises; problems land in the report.
    """
    index = classify_mask(mask, registry)
    counts = {
        name: int((index.labels == lid).sum())
        for lid, name in enumerate(registry.part_names)
    }
    visible = mask.pixels[:, :, 3] > 0
    unknown = int((visible & (index.labels == BACKGROUND)).sum())
    unknown_fraction = unknown / (mask.width * mask.height)

    dims_ok = (atlas.width, atlas.height) == (mask.width, mask.height)
    empty = tuple(name for name, n in counts.items() if n == 0)
    passed = dims_ok and unknown_fraction <= unknown_threshold and not empty

    return ValidationReport(
        garment_id=registry.garment_id,
        dimensions_match=dims_ok,
        atlas_size=(atlas.width, atlas.height),
        mask_size=(mask.width, mask.height),
        label_pixel_counts=counts,
        unknown_fraction=unknown_fraction,
        unknown_threshold=unknown_threshold,
        empty_labels=empty,
        passed=passed,
    )

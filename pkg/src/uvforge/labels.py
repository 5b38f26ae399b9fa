"""Part label registry: the machine-readable form of the artists' color code.

Artists paint each garment part with a flat label color in the mask image;
the registry maps part names to those colors. Pixel matching is per-channel
(Chebyshev) with an integer tolerance, so the registry enforces that any
two label colors are farther apart than the sum of their tolerances --
otherwise a mask pixel could satisfy two labels at once.
"""

from __future__ import annotations

import json
from dataclasses import dataclass, field
from pathlib import Path

from .color import Rgb, check_rgb, format_hex_color, parse_hex_color
from .errors import ColorsTooClose, DuplicateColor, DuplicateName, ParseError

DEFAULT_TOLERANCE = 8
MAX_TOLERANCE = 32


@dataclass(frozen=True)
class PartLabel:
    name: str
    color: Rgb
    tolerance: int = DEFAULT_TOLERANCE

    def __post_init__(self):
        if not isinstance(self.name, str) or not self.name:
            raise ParseError(f"part name must be a non-empty string, got {self.name!r}")
        check_rgb(self.color)
        if not isinstance(self.tolerance, int) or not 0 <= self.tolerance <= MAX_TOLERANCE:
            raise ParseError(
                f"tolerance must be an integer in 0..{MAX_TOLERANCE}, got {self.tolerance!r}"
            )


def chebyshev(a: Rgb, b: Rgb) -> int:
    """Max per-channel absolute difference between two colors."""
    return max(abs(a[0] - b[0]), abs(a[1] - b[1]), abs(a[2] - b[2]))


@dataclass(frozen=True)
class LabelRegistry:
    garment_id: str
    entries: tuple[PartLabel, ...] = field(default_factory=tuple)

    def __post_init__(self):
        if not isinstance(self.garment_id, str) or not self.garment_id:
            raise ParseError("garment_id must be a non-empty string")
        object.__setattr__(self, "entries", tuple(self.entries))
        seen_names = set()
        for e in self.entries:
            if e.name in seen_names:
                raise DuplicateName(f"part name {e.name!r} appears twice")
            seen_names.add(e.name)
        for i, a in enumerate(self.entries):
            for b in self.entries[i + 1:]:
                d = chebyshev(a.color, b.color)
                if d == 0:
                    raise DuplicateColor(
                        f"parts {a.name!r} and {b.name!r} share color "
                        f"{format_hex_color(a.color)}"
                    )
                if d <= a.tolerance + b.tolerance:
                    raise ColorsTooClose(
                        f"colors of {a.name!r} and {b.name!r} are Chebyshev distance "
                        f"{d} apart, need > {a.tolerance + b.tolerance} for "
                        f"unambiguous matching"
                    )

    @property
    def part_names(self) -> tuple[str, ...]:
        return tuple(e.name for e in self.entries)

    def find(self, name: str) -> PartLabel | None:
        for e in self.entries:
            if e.name == name:
                return e
        return None


def parse_registry(doc) -> LabelRegistry:
    """Build a registry from a parsed JSON document; strict about fields."""
    if not isinstance(doc, dict):
        raise ParseError("registry document must be a JSON object")
    fields = dict(doc)
    garment_id = fields.pop("garment_id", None)
    tolerance = fields.pop("tolerance", DEFAULT_TOLERANCE)
    parts = fields.pop("parts", None)
    if fields:
        raise ParseError(f"unknown registry fields: {sorted(fields)}")
    if not isinstance(tolerance, int) or isinstance(tolerance, bool):
        raise ParseError(f"tolerance must be an integer, got {tolerance!r}")
    if not isinstance(parts, list) or not parts:
        raise ParseError("registry needs a non-empty 'parts' array")
    entries = []
    for item in parts:
        if not isinstance(item, dict):
            raise ParseError(f"part entry must be an object, got {item!r}")
        part_fields = dict(item)
        name = part_fields.pop("name", None)
        color = part_fields.pop("color", None)
        if part_fields:
            raise ParseError(f"unknown part fields: {sorted(part_fields)}")
        if not isinstance(name, str):
            raise ParseError(f"part name must be a string, got {name!r}")
        entries.append(PartLabel(name=name, color=parse_hex_color(color), tolerance=tolerance))
    return LabelRegistry(garment_id=garment_id, entries=tuple(entries))


def load_label_registry(path) -> LabelRegistry:
    """Load and validate a registry JSON file."""
    text = Path(path).read_text(encoding="utf-8")
    try:
        doc = json.loads(text)
    except json.JSONDecodeError as exc:
        raise ParseError(f"registry is not valid JSON: {exc}") from exc
    return parse_registry(doc)


def registry_to_dict(reg: LabelRegistry) -> dict:
    """Serialize back to the on-disk JSON shape (colors uppercase)."""
    tol = reg.entries[0].tolerance if reg.entries else DEFAULT_TOLERANCE
    return {
        "garment_id": reg.garment_id,
        "tolerance": tol,
        "parts": [
            {"name": e.name, "color": format_hex_color(e.color)} for e in reg.entries
        ],
    }

"""Edit recipes: the declarative, replayable description of a customization.

A recipe is an ordered list of ops (recolor / texture_fill / logo_stamp)
plus the garment it targets. The JSON schema (version 1) is strict:
unknown fields and out-of-range values are rejected at parse time rather
than clamped, so malformed client payloads fail loudly.
"""

from __future__ import annotations

import base64
import json
import math
from dataclasses import dataclass
from datetime import datetime, timezone

from .atlas import sha256_hex
from .color import Rgb, format_hex_color, parse_hex_color
from .errors import InvalidRequest, ParseError
from .genprovider import GenRequest, gen_request_to_dict, parse_gen_request

SCHEMA_VERSION = 1

FIT_MODES = ("tile", "stretch")


# --------------------------------------------------------------------------
# Image references.


@dataclass(frozen=True)
class GeneratedRef:
    """Image produced by the text-to-image provider."""
    request: GenRequest


@dataclass(frozen=True)
class InlineRef:
    """PNG payload embedded in the recipe, content-addressed by digest."""
    digest: str
    png: bytes

    def __post_init__(self):
        if sha256_hex(self.png) != self.digest:
            raise ParseError("inline image digest does not match payload")


@dataclass(frozen=True)
class AssetRef:
    """PNG looked up under the resolver's asset root."""
    path: str

    def __post_init__(self):
        if not isinstance(self.path, str) or not self.path:
            raise ParseError("asset path must be a non-empty string")


ImageRef = GeneratedRef | InlineRef | AssetRef


# --------------------------------------------------------------------------
# Ops.


@dataclass(frozen=True)
class Recolor:
    part: str
    target: Rgb
    preserve_shading: bool


@dataclass(frozen=True)
class TextureFill:
    part: str
    image: ImageRef
    fit: str
    tile_scale: float = 1.0
    blend_opacity: float = 1.0


@dataclass(frozen=True)
class LogoStamp:
    part: str
    image: ImageRef
    anchor_uv: tuple[float, float]
    scale: float
    rotation_deg: float
    opacity: float


EditOp = Recolor | TextureFill | LogoStamp


@dataclass(frozen=True)
class Recipe:
    garment_id: str
    ops: tuple[EditOp, ...]
    created_at: str
    schema_version: int = SCHEMA_VERSION


def make_recipe(garment_id: str, ops) -> Recipe:
    """Build a recipe stamped with the current UTC time."""
    now = datetime.now(timezone.utc).isoformat()
    return Recipe(garment_id=garment_id, ops=tuple(ops), created_at=now)


# --------------------------------------------------------------------------
# Strict parsing helpers.


def _take(fields: dict, key: str, ctx: str):
    if key not in fields:
        raise ParseError(f"{ctx}: missing field {key!r}")
    return fields.pop(key)


def _no_extras(fields: dict, ctx: str):
    if fields:
        raise ParseError(f"{ctx}: unknown fields {sorted(fields)}")


def _string(value, ctx: str) -> str:
    if not isinstance(value, str) or not value:
        raise ParseError(f"{ctx}: expected a non-empty string, got {value!r}")
    return value


def _number(value, ctx: str) -> float:
    if isinstance(value, bool) or not isinstance(value, (int, float)):
        raise ParseError(f"{ctx}: expected a number, got {value!r}")
    value = float(value)
    if not math.isfinite(value):
        raise ParseError(f"{ctx}: value must be finite")
    return value


def _fraction(value, ctx: str) -> float:
    value = _number(value, ctx)
    if not 0.0 <= value <= 1.0:
        raise ParseError(f"{ctx}: {value} outside [0, 1]")
    return value


def _positive(value, ctx: str) -> float:
    value = _number(value, ctx)
    if value <= 0.0:
        raise ParseError(f"{ctx}: {value} must be > 0")
    return value


def parse_image_ref(doc, ctx: str) -> ImageRef:
    if not isinstance(doc, dict) or len(doc) != 1:
        raise ParseError(f"{ctx}: image must be an object with exactly one "
                         f"of 'generated', 'inline', 'asset'")
    kind, payload = next(iter(doc.items()))
    if kind == "generated":
        try:
            return GeneratedRef(request=parse_gen_request(payload))
        except InvalidRequest as exc:
            raise ParseError(f"{ctx}.generated: {exc}") from exc
    if kind == "inline":
        if not isinstance(payload, dict):
            raise ParseError(f"{ctx}.inline: expected an object")
        fields = dict(payload)
        digest = _string(_take(fields, "digest", ctx), f"{ctx}.inline.digest")
        b64 = _string(_take(fields, "png_b64", ctx), f"{ctx}.inline.png_b64")
        _no_extras(fields, f"{ctx}.inline")
        try:
            png = base64.b64decode(b64, validate=True)
        except (ValueError, TypeError) as exc:
            raise ParseError(f"{ctx}.inline: invalid base64: {exc}") from exc
        return InlineRef(digest=digest, png=png)
    if kind == "asset":
        return AssetRef(path=_string(payload, f"{ctx}.asset"))
    raise ParseError(f"{ctx}: unknown image kind {kind!r}")


def image_ref_to_dict(ref: ImageRef) -> dict:
    if isinstance(ref, GeneratedRef):
        return {"generated": gen_request_to_dict(ref.request)}
    if isinstance(ref, InlineRef):
        return {"inline": {"digest": ref.digest,
                           "png_b64": base64.b64encode(ref.png).decode("ascii")}}
    return {"asset": ref.path}


def parse_op(doc, ctx: str) -> EditOp:
    if not isinstance(doc, dict):
        raise ParseError(f"{ctx}: op must be an object")
    fields = dict(doc)
    op_type = _string(_take(fields, "type", ctx), f"{ctx}.type")
    part = _string(_take(fields, "part", ctx), f"{ctx}.part")

    if op_type == "recolor":
        target = parse_hex_color(_take(fields, "target", ctx))
        preserve = _take(fields, "preserve_shading", ctx)
        if not isinstance(preserve, bool):
            raise ParseError(f"{ctx}.preserve_shading: expected a boolean")
        _no_extras(fields, ctx)
        return Recolor(part=part, target=target, preserve_shading=preserve)

    if op_type == "texture_fill":
        image = parse_image_ref(_take(fields, "image", ctx), f"{ctx}.image")
        fit = _string(_take(fields, "fit", ctx), f"{ctx}.fit")
        if fit not in FIT_MODES:
            raise ParseError(f"{ctx}.fit: must be one of {FIT_MODES}")
        tile_scale = _positive(fields.pop("tile_scale", 1.0), f"{ctx}.tile_scale")
        blend_opacity = _fraction(fields.pop("blend_opacity", 1.0),
                                  f"{ctx}.blend_opacity")
        _no_extras(fields, ctx)
        return TextureFill(part=part, image=image, fit=fit,
                           tile_scale=tile_scale, blend_opacity=blend_opacity)

    if op_type == "logo_stamp":
        image = parse_image_ref(_take(fields, "image", ctx), f"{ctx}.image")
        anchor = _take(fields, "anchor_uv", ctx)
        if not isinstance(anchor, (list, tuple)) or len(anchor) != 2:
            raise ParseError(f"{ctx}.anchor_uv: expected [u, v]")
        anchor_uv = (_fraction(anchor[0], f"{ctx}.anchor_uv[0]"),
                     _fraction(anchor[1], f"{ctx}.anchor_uv[1]"))
        scale = _positive(_take(fields, "scale", ctx), f"{ctx}.scale")
        rotation = _number(_take(fields, "rotation_deg", ctx), f"{ctx}.rotation_deg")
        opacity = _fraction(_take(fields, "opacity", ctx), f"{ctx}.opacity")
        _no_extras(fields, ctx)
        return LogoStamp(part=part, image=image, anchor_uv=anchor_uv,
                         scale=scale, rotation_deg=rotation, opacity=opacity)

    raise ParseError(f"{ctx}: unknown op type {op_type!r}")


def op_to_dict(op: EditOp) -> dict:
    if isinstance(op, Recolor):
        return {
            "type": "recolor",
            "part": op.part,
            "target": format_hex_color(op.target),
            "preserve_shading": op.preserve_shading,
        }
    if isinstance(op, TextureFill):
        return {
            "type": "texture_fill",
            "part": op.part,
            "fit": op.fit,
            "tile_scale": op.tile_scale,
            "blend_opacity": op.blend_opacity,
            "image": image_ref_to_dict(op.image),
        }
    return {
        "type": "logo_stamp",
        "part": op.part,
        "anchor_uv": [op.anchor_uv[0], op.anchor_uv[1]],
        "scale": op.scale,
        "rotation_deg": op.rotation_deg,
        "opacity": op.opacity,
        "image": image_ref_to_dict(op.image),
    }


def _check_timestamp(value, ctx: str) -> str:
    value = _string(value, ctx)
    try:
        datetime.fromisoformat(value.replace("Z", "+00:00"))
    except ValueError as exc:
        raise ParseError(f"{ctx}: not an ISO-8601 timestamp: {value!r}") from exc
    return value


def parse_recipe(doc) -> Recipe:
    """Parse and validate a schema-version-1 recipe document."""
    if not isinstance(doc, dict):
        raise ParseError("recipe must be a JSON object")
    fields = dict(doc)
    version = _take(fields, "schema_version", "recipe")
    if version != SCHEMA_VERSION or isinstance(version, bool):
        raise ParseError(f"unsupported schema_version {version!r} (expected 1)")
    garment_id = _string(_take(fields, "garment_id", "recipe"), "recipe.garment_id")
    created_at = _check_timestamp(_take(fields, "created_at", "recipe"),
                                  "recipe.created_at")
    ops_doc = _take(fields, "ops", "recipe")
    _no_extras(fields, "recipe")
    if not isinstance(ops_doc, list):
        raise ParseError("recipe.ops must be an array")
    ops = tuple(parse_op(op, f"ops[{i}]") for i, op in enumerate(ops_doc))
    return Recipe(garment_id=garment_id, ops=ops, created_at=created_at)


def parse_recipe_json(text: str | bytes) -> Recipe:
    try:
        doc = json.loads(text)
    except json.JSONDecodeError as exc:
        raise ParseError(f"recipe is not valid JSON: {exc}") from exc
    return parse_recipe(doc)


def recipe_to_dict(recipe: Recipe) -> dict:
    return {
        "schema_version": recipe.schema_version,
        "garment_id": recipe.garment_id,
        "created_at": recipe.created_at,
        "ops": [op_to_dict(op) for op in recipe.ops],
    }


def recipe_to_json(recipe: Recipe, indent: int | None = 2) -> str:
    return json.dumps(recipe_to_dict(recipe), indent=indent)

"""Exception types raised across the package.

Everything domain-level derives from UvforgeError so callers (CLI, service)
can map the whole family to exit code 1 / HTTP error bodies in one place.
Plain file-not-found conditions use the builtin FileNotFoundError.
"""

from __future__ import annotations


class UvforgeError(Exception):
    """Base class for all domain errors."""

    #: short machine-readable identifier, used in CLI --json and HTTP bodies
    code = "error"


# ---------------------------------------------------------------- atlas I/O

class DecodeError(UvforgeError):
    """PNG payload is corrupt, truncated, or not an 8-bit PNG."""
    code = "decode_error"


class DimensionBound(UvforgeError):
    """Image exceeds the 16384-pixel per-side sanity bound."""
    code = "dimension_bound"


# ----------------------------------------------------------- label registry

class ParseError(UvforgeError):
    """Malformed registry or recipe document (bad JSON, schema violation,
    unknown field, out-of-range value)."""
    code = "parse_error"


class DuplicateName(UvforgeError):
    code = "duplicate_name"


class DuplicateColor(UvforgeError):
    code = "duplicate_color"


class ColorsTooClose(UvforgeError):
    """Two label colors are within the combined match tolerance, so a mask
    pixel could be claimed by both."""
    code = "colors_too_close"


# ------------------------------------------------------------ mask / region

class UnknownPart(UvforgeError):
    code = "unknown_part"


class DimensionMismatch(UvforgeError):
    code = "dimension_mismatch"


# ------------------------------------------------------------------- edits

class EmptyRegion(UvforgeError):
    code = "empty_region"


class EmptyFillImage(UvforgeError):
    code = "empty_fill_image"


class EmptyLogo(UvforgeError):
    code = "empty_logo"


class NonPositiveScale(UvforgeError):
    code = "non_positive_scale"


class GarmentMismatch(UvforgeError):
    code = "garment_mismatch"


class ResolveError(UvforgeError):
    """An image reference could not be turned into pixels (provider failure,
    missing asset, corrupt inline payload)."""
    code = "resolve_error"


class RecipeOpError(UvforgeError):
    """An op inside a recipe failed; carries the zero-based op index and the
    original error as __cause__."""
    code = "recipe_op_error"

    def __init__(self, op_index: int, cause: UvforgeError):
        super().__init__(f"op {op_index} failed: {cause}")
        self.op_index = op_index
        self.cause = cause


# ---------------------------------------------------------------- provider

class InvalidRequest(UvforgeError):
    code = "invalid_request"


class ProviderError(UvforgeError):
    """Backend rejected or failed the generation call."""
    code = "provider_error"

    def __init__(self, message: str, status: int | None = None):
        super().__init__(message)
        self.status = status


class ProviderTimeout(UvforgeError):
    code = "provider_timeout"


class CacheIoError(UvforgeError):
    code = "cache_io_error"


# ---------------------------------------------------------------- wardrobe

class ValidationFailed(UvforgeError):
    """Garment assets failed validation; carries the full report."""
    code = "validation_failed"

    def __init__(self, report):
        super().__init__(f"garment validation failed: {report.summary()}")
        self.report = report


class DuplicateGarment(UvforgeError):
    code = "duplicate_garment"


class NotFound(UvforgeError):
    code = "not_found"


class StoreIoError(UvforgeError):
    code = "store_io_error"


class StoreBusy(UvforgeError):
    """Another writer holds the store lock."""
    code = "store_busy"

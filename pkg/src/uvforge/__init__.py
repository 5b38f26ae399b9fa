"""uvforge: mask-constrained texture customization for garment UV atlases.

Pipeline: load a garment's texture atlas and its artist-painted color
mask, classify mask pixels into named part regions, then apply recolor /
texture-fill / logo-stamp edits strictly inside a chosen part. Edits are
described by replayable recipes; generated images come from a pluggable
text-to-image provider (deterministic offline mock included); outfits
persist in a wardrobe store; an HTTP service and a CLI sit on top.
"""

from .atlas import TextureAtlas, decode_png, encode_png, load_atlas, new_atlas, pixel_digest, sha256_hex
from .color import format_hex_color, hsl_to_rgb, mix_channel, parse_hex_color, rgb_to_hsl
from .edits import (
    GarmentAssets,
    ImageResolver,
    apply_op,
    apply_recipe,
    logo_stamp,
    recolor,
    texture_fill,
)
from .errors import UvforgeError
from .genprovider import (
    GenRequest,
    GenResult,
    MockProvider,
    RemoteProvider,
    cache_key,
    cached_resolve,
)
from .labels import LabelRegistry, PartLabel, load_label_registry
from .mask import (
    BACKGROUND,
    PartMaskIndex,
    Region,
    ValidationReport,
    classify_mask,
    extract_region,
    validate_garment,
)
from .recipe import (
    AssetRef,
    GeneratedRef,
    InlineRef,
    LogoStamp,
    Recipe,
    Recolor,
    TextureFill,
    make_recipe,
    parse_recipe,
    parse_recipe_json,
    recipe_to_dict,
    recipe_to_json,
)
from .wardrobe import Outfit, WardrobeStore

__version__ = "0.1.0"

__all__ = [
    "TextureAtlas", "decode_png", "encode_png", "load_atlas", "new_atlas",
    "pixel_digest", "sha256_hex",
    "format_hex_color", "hsl_to_rgb", "mix_channel", "parse_hex_color", "rgb_to_hsl",
    "GarmentAssets", "ImageResolver", "apply_op", "apply_recipe",
    "logo_stamp", "recolor", "texture_fill",
    "UvforgeError",
    "GenRequest", "GenResult", "MockProvider", "RemoteProvider",
    "cache_key", "cached_resolve",
    "LabelRegistry", "PartLabel", "load_label_registry",
    "BACKGROUND", "PartMaskIndex", "Region", "ValidationReport",
    "classify_mask", "extract_region", "validate_garment",
    "AssetRef", "GeneratedRef", "InlineRef",
    "LogoStamp", "Recipe", "Recolor", "TextureFill",
    "make_recipe", "parse_recipe", "parse_recipe_json",
    "recipe_to_dict", "recipe_to_json",
    "Outfit", "WardrobeStore",
]

"""Install the fixture garment, save an outfit, and replay it bit-exactly.

The wardrobe stores the recipe plus the rendered texture's digest; loading
the outfit and re-running the recipe reproduces the identical bytes.
"""

import tempfile
from pathlib import Path

from uvforge import (
    ImageResolver,
    MockProvider,
    WardrobeStore,
    encode_png,
    make_recipe,
    sha256_hex,
)
from uvforge.edits import apply_recipe
from uvforge.recipe import GeneratedRef, Recolor, TextureFill
from uvforge.genprovider import GenRequest
import helpers_demo

G = helpers_demo.GARMENT_DIR

with tempfile.TemporaryDirectory() as root:
    store = WardrobeStore(Path(root) / "wardrobe")
    gid = store.install_garment(G / "atlas.png", G / "mask.png",
                                G / "registry.json")
    print(f"installed garment {gid!r}:",
          [g.garment_id for g in store.list_garments()])

    recipe = make_recipe(gid, [
        Recolor(part="body", target=(30, 60, 160), preserve_shading=True),
        TextureFill(part="sleeve",
                    image=GeneratedRef(GenRequest("gingham", "none", 64, 64, 5)),
                    fit="tile"),
    ])
    resolver = ImageResolver(provider=MockProvider(),
                             cache_dir=Path(root) / "gencache")
    outfit = store.save_outfit(recipe, "evening look", resolver)
    print(f"saved outfit {outfit.outfit_id}")
    print(f"  texture digest: {outfit.texture_digest[:24]}...")

    loaded = store.load_outfit(outfit.outfit_id)
    assets, base_atlas, _ = store.load_garment(gid)
    rerendered = apply_recipe(assets, base_atlas, loaded.recipe, resolver)
    match = sha256_hex(encode_png(rerendered)) == outfit.texture_digest
    print(f"  re-rendered digest matches: {match}")

    store.delete_outfit(outfit.outfit_id)
    print(f"deleted; wardrobe now lists {len(store.list_outfits())} outfits")

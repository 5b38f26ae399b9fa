"""The three edit modes on the committed fixture garment.

Writes four PNGs into demos/out/: the base atlas, a shading-preserving
recolor, a generated tile fill, and a rotated logo stamp. Every edit stays
inside its part; compare the outputs pixel by pixel if you like.
"""

from pathlib import Path

from uvforge import (
    GenRequest,
    MockProvider,
    encode_png,
    extract_region,
    load_atlas,
    logo_stamp,
    recolor,
    texture_fill,
)
import helpers_demo

OUT = Path(__file__).parent / "out"
OUT.mkdir(exist_ok=True)

assets, atlas, registry = helpers_demo.load_fixture_garment()
index = assets.index

(OUT / "0_base.png").write_bytes(encode_png(atlas))

# 1. shading-preserving recolor of the body: hue/saturation change,
#    fabric shading kept
body = extract_region(index, "body")
recolored = recolor(atlas, body, index, (58, 123, 255), preserve_shading=True)
(OUT / "1_recolor.png").write_bytes(encode_png(recolored))

# 2. tile a generated pattern over the sleeves
sleeve = extract_region(index, "sleeve")
pattern = MockProvider().generate(
    GenRequest("herringbone weave", "cartoon", 64, 64, 11)).image
filled = texture_fill(recolored, sleeve, index, pattern, fit="tile",
                      tile_scale=1.0, blend_opacity=1.0)
(OUT / "2_fill.png").write_bytes(encode_png(filled))

# 3. stamp the star logo on the chest, rotated, slightly transparent
chest = extract_region(index, "chest")
logo = load_atlas(helpers_demo.FIXTURES / "logos" / "star.png")
stamped = logo_stamp(filled, chest, index, logo, anchor_uv=(0.5, 0.4),
                     scale=1.2, rotation_deg=20.0, opacity=0.9)
(OUT / "3_logo.png").write_bytes(encode_png(stamped))

for n, label in enumerate(("base atlas", "recolored body", "sleeve fill",
                           "chest logo")):
    print(f"wrote demos/out/{n}_*.png ({label})")
print(f"pixels outside the chest changed by the logo stamp: "
      f"{(stamped.pixels != filled.pixels).any(axis=2)[~chest.bits].sum()}")

"""Build a tiny garment in memory, classify its mask, and validate it.

Walks the asset-ingestion path: label registry -> mask classification ->
part regions -> validation report.
"""

import numpy as np

from uvforge import TextureAtlas, classify_mask, extract_region, validate_garment
from uvforge.labels import LabelRegistry, PartLabel

# A 12x12 "garment": body painted red, one pocket painted blue, rest empty.
mask_px = np.zeros((12, 12, 4), dtype=np.uint8)
mask_px[2:10, 2:10, :3] = (255, 0, 0)
mask_px[2:10, 2:10, 3] = 255
mask_px[6:9, 6:9, :3] = (0, 0, 255)
mask_px[6:9, 6:9, 3] = 255
# one soft edge pixel: half-transparent label -> fractional coverage
mask_px[2, 1] = (255, 0, 0, 128)
mask = TextureAtlas.from_array(mask_px)

atlas_px = np.full((12, 12, 4), (180, 170, 160, 255), dtype=np.uint8)
atlas = TextureAtlas.from_array(atlas_px)

registry = LabelRegistry("demo-jacket", (
    PartLabel("body", (255, 0, 0)),
    PartLabel("pocket", (0, 0, 255)),
))

index = classify_mask(mask, registry)
print("labeled pixels per part:")
for name in registry.part_names:
    region = extract_region(index, name)
    print(f"  {name:<7} count={region.pixel_count:<4} bbox={region.bbox}")

print(f"soft edge pixel coverage: {index.coverage[2, 1]:.3f} (alpha 128/255)")

report = validate_garment(atlas, mask, registry)
print(f"validation: {'PASS' if report.passed else 'FAIL'} "
      f"(unknown fraction {report.unknown_fraction:.3f})")

# A mask with stray colors fails once the stray fraction crosses the threshold.
bad = mask_px.copy()
bad[0, 0:4] = (200, 200, 50, 255)  # 4 stray pixels of 144 = 2.8%
bad_report = validate_garment(atlas, TextureAtlas.from_array(bad), registry)
print(f"stray-color mask: {'PASS' if bad_report.passed else 'FAIL'} -> "
      f"{bad_report.summary()}")

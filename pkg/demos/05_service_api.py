"""Walk the HTTP API end to end against an in-process service instance.

Uses the ASGI test client (no sockets needed): install a garment, list it,
fetch the mask overlay, generate a pattern, preview a recipe, save the
outfit, and fetch its texture back.
"""

import tempfile
from pathlib import Path

from fastapi.testclient import TestClient

from uvforge import WardrobeStore, sha256_hex
from uvforge.service import create_app
import helpers_demo

G = helpers_demo.GARMENT_DIR

recipe = {
    "schema_version": 1,
    "garment_id": "tee",
    "created_at": "2024-05-01T09:00:00+00:00",
    "ops": [
        {"type": "recolor", "part": "body", "target": "#3A7BFF",
         "preserve_shading": True},
        {"type": "texture_fill", "part": "sleeve", "fit": "tile",
         "tile_scale": 1.0, "blend_opacity": 1.0,
         "image": {"generated": {"prompt": "blue stripes", "style": "cartoon",
                                 "width": 64, "height": 64, "seed": 7}}},
    ],
}

with tempfile.TemporaryDirectory() as root:
    store_dir = Path(root) / "store"
    WardrobeStore(store_dir).install_garment(G / "atlas.png", G / "mask.png",
                                             G / "registry.json")
    app = create_app(store_dir, provider="mock", cache_dir=Path(root) / "cache")
    with TestClient(app) as client:
        garments = client.get("/v1/garments").json()
        print("GET /v1/garments ->", garments)

        overlay = client.get("/v1/garments/tee/mask-overlay")
        print(f"GET mask-overlay -> {len(overlay.content)} bytes, "
              f"ETag {overlay.headers['etag'][:12]}...")

        gen = client.post("/v1/generate", json={
            "prompt": "blue stripes", "style": "cartoon",
            "width": 64, "height": 64, "seed": 7})
        print(f"POST /v1/generate -> digest {gen.json()['request_digest'][:12]}...")

        preview = client.post("/v1/garments/tee/preview", json=recipe)
        print(f"POST preview -> {len(preview.content)} bytes, "
              f"ETag {preview.headers['etag'][:12]}...")

        again = client.post("/v1/garments/tee/preview", json=recipe)
        print("preview deterministic:", preview.content == again.content)

        saved = client.post("/v1/wardrobe",
                            json={"recipe": recipe, "title": "demo look"}).json()
        print(f"POST /v1/wardrobe -> outfit {saved['outfit_id'][:8]}...")

        texture = client.get(f"/v1/wardrobe/{saved['outfit_id']}/texture")
        print("texture digest matches outfit:",
              sha256_hex(texture.content) == saved["texture_digest"])

        bad = client.post("/v1/garments/tee/preview", json={
            **recipe,
            "ops": [{"type": "recolor", "part": "elbow", "target": "#000000",
                     "preserve_shading": False}]})
        print(f"preview with unknown part -> {bad.status_code} "
              f"{bad.json()['code']}")

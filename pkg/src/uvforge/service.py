"""HTTP facade over the engine: garments, generation, preview, wardrobe CRUD.

Single-tenant local service, no sessions or auth. All error bodies share
the shape {code, message, detail?}; PNG responses carry an ETag equal to
the sha256 of the body so clients can cache previews and textures.
Preview never mutates the store; the generation cache lives outside the
store tree (a temp directory unless configured).
"""

from __future__ import annotations

import base64
import tempfile
from pathlib import Path

import numpy as np
from fastapi import FastAPI, Request, Response
from fastapi.middleware.cors import CORSMiddleware
from fastapi.responses import JSONResponse
from fastapi.staticfiles import StaticFiles

from .atlas import encode_png, sha256_hex, TextureAtlas
from .errors import (
    CacheIoError,
    GarmentMismatch,
    NotFound,
    ParseError,
    ProviderError,
    ProviderTimeout,
    RecipeOpError,
    StoreBusy,
    StoreIoError,
    UvforgeError,
)
from .genprovider import (
    DEFAULT_TIMEOUT_MS,
    MockProvider,
    RemoteProvider,
    cached_resolve,
    parse_gen_request,
)
from .edits import ImageResolver, apply_recipe
from .recipe import parse_recipe, recipe_to_dict
from .wardrobe import WardrobeStore

_STATUS_BY_TYPE = (
    (ProviderTimeout, 504),
    (ProviderError, 502),
    (NotFound, 404),
    (StoreBusy, 409),
    (StoreIoError, 500),
    (CacheIoError, 500),
)


def _error_response(exc: UvforgeError) -> JSONResponse:
    detail = {}
    if isinstance(exc, RecipeOpError):
        detail["op_index"] = exc.op_index
        exc = exc.cause
    # provider failures can hide under ResolveError; surface the deepest one
    cur: Exception | None = exc
    while cur is not None:
        if isinstance(cur, (ProviderTimeout, ProviderError)):
            exc = cur
            break
        nxt = cur.__cause__
        cur = nxt if isinstance(nxt, Exception) else None

    status = 400
    for cls, code in _STATUS_BY_TYPE:
        if isinstance(exc, cls):
            status = code
            break
    report = getattr(exc, "report", None)
    if report is not None:
        detail["report"] = report.to_dict()
    body = {"code": exc.code, "message": str(exc)}
    if detail:
        body["detail"] = detail
    return JSONResponse(status_code=status, content=body)


def _png_response(png: bytes, request: Request) -> Response:
    etag = sha256_hex(png)
    if request.headers.get("if-none-match") == etag:
        return Response(status_code=304, headers={"ETag": etag})
    return Response(content=png, media_type="image/png", headers={"ETag": etag})


def create_app(
    store_root,
    provider: str = "mock",
    gen_endpoint: str | None = None,
    gen_timeout_ms: int = DEFAULT_TIMEOUT_MS,
    cache_dir=None,
    ui_dir=None,
) -> FastAPI:
    """Build the service around one wardrobe store and one provider."""
    store = WardrobeStore(store_root)
    if provider == "mock":
        gen = MockProvider()
    elif provider == "remote":
        if not gen_endpoint:
            raise ValueError("remote provider needs --gen-endpoint")
        gen = RemoteProvider(gen_endpoint, timeout_ms=gen_timeout_ms)
    else:
        raise ValueError(f"unknown provider {provider!r}")
    if cache_dir is None:
        cache_dir = Path(tempfile.mkdtemp(prefix="uvforge-gencache-"))
    else:
        cache_dir = Path(cache_dir)

    app = FastAPI(title="uvforge", docs_url=None, redoc_url=None)
    # single-tenant local tool; lets the editor run off a dev server too
    app.add_middleware(
        CORSMiddleware,
        allow_origins=["*"],
        allow_methods=["*"],
        allow_headers=["*"],
        expose_headers=["ETag"],
    )

    def resolver_for(garment_id: str) -> ImageResolver:
        return ImageResolver(
            provider=gen,
            cache_dir=cache_dir,
            asset_root=store.garment_dir(garment_id),
        )

    @app.exception_handler(UvforgeError)
    async def _domain_error(_request, exc: UvforgeError):
        return _error_response(exc)

    async def _json_body(request: Request):
        try:
            return await request.json()
        except Exception:
            raise ParseError("request body is not valid JSON") from None

    # ------------------------------------------------------------- garments

    @app.get("/v1/garments")
    def list_garments():
        return [
            {
                "garment_id": g.garment_id,
                "name": g.garment_id,
                "parts": list(g.part_names),
                "width": g.width,
                "height": g.height,
            }
            for g in store.list_garments()
        ]

    @app.get("/v1/garments/{garment_id}/mask-overlay")
    def mask_overlay(garment_id: str, request: Request):
        assets, atlas, registry = store.load_garment(garment_id)
        out = atlas.pixels.copy()
        labels = assets.index.labels
        labeled = labels >= 0
        if labeled.any():
            lut = np.array([e.color for e in registry.entries], dtype=np.float64)
            src = out[:, :, :3].astype(np.float64)
            repl = np.zeros_like(src)
            repl[labeled] = lut[labels[labeled]]
            t = (0.5 * assets.index.coverage)[:, :, None]
            mixed = np.floor(src + (repl - src) * t + 0.5).astype(np.uint8)
            rgb = out[:, :, :3]
            rgb[labeled] = mixed[labeled]
        overlay = TextureAtlas(width=atlas.width, height=atlas.height, pixels=out)
        return _png_response(encode_png(overlay), request)

    @app.get("/v1/garments/{garment_id}/parts")
    def garment_parts(garment_id: str):
        assets, _, registry = store.load_garment(garment_id)
        return [
            {
                "name": e.name,
                "color": "#%02X%02X%02X" % e.color,
                "pixel_count": int((assets.index.labels == lid).sum()),
            }
            for lid, e in enumerate(registry.entries)
        ]

    @app.get("/v1/garments/{garment_id}/part-lookup")
    def part_lookup(garment_id: str, request: Request):
        """Flat label-color image for client-side part picking: labeled
        pixels carry their registry color at alpha 255, background is
        transparent."""
        assets, atlas, registry = store.load_garment(garment_id)
        out = np.zeros((atlas.height, atlas.width, 4), dtype=np.uint8)
        labels = assets.index.labels
        labeled = labels >= 0
        if labeled.any():
            lut = np.array([e.color for e in registry.entries], dtype=np.uint8)
            out[labeled, :3] = lut[labels[labeled]]
            out[labeled, 3] = 255
        lookup = TextureAtlas(width=atlas.width, height=atlas.height, pixels=out)
        return _png_response(encode_png(lookup), request)

    # ----------------------------------------------------------- generation

    @app.post("/v1/generate")
    async def generate(request: Request):
        req = parse_gen_request(await _json_body(request))
        result = cached_resolve(cache_dir, gen, req)
        png = encode_png(result.image)
        return {
            "image_b64": base64.b64encode(png).decode("ascii"),
            "request_digest": result.request_digest,
        }

    # -------------------------------------------------------------- preview

    @app.post("/v1/garments/{garment_id}/preview")
    async def preview(garment_id: str, request: Request):
        recipe = parse_recipe(await _json_body(request))
        assets, base_atlas, _ = store.load_garment(garment_id)
        if recipe.garment_id != garment_id:
            raise GarmentMismatch(
                f"recipe targets {recipe.garment_id!r}, path names {garment_id!r}"
            )
        rendered = apply_recipe(assets, base_atlas, recipe, resolver_for(garment_id))
        return _png_response(encode_png(rendered), request)

    # ------------------------------------------------------------- wardrobe

    def _outfit_json(outfit) -> dict:
        return {
            "outfit_id": outfit.outfit_id,
            "garment_id": outfit.garment_id,
            "title": outfit.title,
            "saved_at": outfit.saved_at,
            "texture_digest": outfit.texture_digest,
            "recipe": recipe_to_dict(outfit.recipe),
        }

    @app.post("/v1/wardrobe")
    async def save_outfit(request: Request):
        doc = await _json_body(request)
        if not isinstance(doc, dict):
            raise ParseError("expected an object with 'recipe' and 'title'")
        fields = dict(doc)
        recipe_doc = fields.pop("recipe", None)
        title = fields.pop("title", None)
        if fields:
            raise ParseError(f"unknown fields: {sorted(fields)}")
        if not isinstance(title, str) or not title:
            raise ParseError("title must be a non-empty string")
        recipe = parse_recipe(recipe_doc)
        outfit = store.save_outfit(recipe, title, resolver_for(recipe.garment_id))
        return _outfit_json(outfit)

    @app.get("/v1/wardrobe")
    def list_outfits():
        return store.list_outfits()

    @app.get("/v1/wardrobe/{outfit_id}")
    def get_outfit(outfit_id: str):
        return _outfit_json(store.load_outfit(outfit_id))

    @app.get("/v1/wardrobe/{outfit_id}/texture")
    def outfit_texture(outfit_id: str, request: Request):
        return _png_response(store.outfit_texture(outfit_id), request)

    @app.delete("/v1/wardrobe/{outfit_id}", status_code=204)
    def delete_outfit(outfit_id: str):
        store.delete_outfit(outfit_id)
        return Response(status_code=204)

    if ui_dir is not None and Path(ui_dir).is_dir():
        app.mount("/", StaticFiles(directory=ui_dir, html=True), name="ui")

    return app

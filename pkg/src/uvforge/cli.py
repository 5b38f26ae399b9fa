"""Command-line entry points: validate, apply, gen, wardrobe, serve.

Exit codes: 0 success, 1 domain error (validation failure, bad recipe,
provider failure, unknown outfit...), 2 usage error (bad flags, missing
input files). Data goes to stdout (--json for machine-readable output),
diagnostics to stderr.
"""

from __future__ import annotations

import argparse
import json
import sys
from pathlib import Path

from .atlas import encode_png, load_atlas, pixel_digest
from .edits import ImageResolver, apply_recipe
from .errors import UvforgeError
from .genprovider import (
    DEFAULT_TIMEOUT_MS,
    GenRequest,
    MockProvider,
    RemoteProvider,
    cached_resolve,
)
from .labels import load_label_registry
from .mask import validate_garment
from .recipe import parse_recipe_json
from .wardrobe import WardrobeStore


def _require_file(path: str) -> Path:
    p = Path(path)
    if not p.is_file():
        raise FileNotFoundError(f"no such file: {path}")
    return p


def _size(text: str):
    try:
        w_s, h_s = text.lower().split("x")
        w, h = int(w_s), int(h_s)
    except ValueError:
        raise argparse.ArgumentTypeError(f"size must look like 512x512, got {text!r}")
    for side in (w, h):
        if not 64 <= side <= 2048 or side % 8 != 0:
            raise argparse.ArgumentTypeError(
                f"sides must be 64..2048 and multiples of 8, got {text!r}"
            )
    return (w, h)


def _add_provider_flags(sub):
    sub.add_argument("--provider", choices=("mock", "remote"), default="mock")
    sub.add_argument("--gen-endpoint", help="base URL of the remote backend")
    sub.add_argument("--gen-timeout-ms", type=int, default=DEFAULT_TIMEOUT_MS)
    sub.add_argument("--cache-dir", help="content-addressed PNG cache directory")


def _make_provider(args):
    if args.provider == "remote":
        if not args.gen_endpoint:
            raise UvforgeError("--provider remote needs --gen-endpoint")
        return RemoteProvider(args.gen_endpoint, timeout_ms=args.gen_timeout_ms)
    return MockProvider()


def _make_resolver(args, asset_root) -> ImageResolver:
    return ImageResolver(
        provider=_make_provider(args),
        cache_dir=args.cache_dir,
        asset_root=asset_root,
    )


# ------------------------------------------------------------------- validate

def _cmd_validate(args) -> int:
    atlas = load_atlas(_require_file(args.atlas))
    mask = load_atlas(_require_file(args.mask))
    registry = load_label_registry(_require_file(args.registry))
    report = validate_garment(atlas, mask, registry, args.threshold)
    if args.json:
        print(json.dumps(report.to_dict(), indent=2))
    else:
        print(f"garment:    {report.garment_id}")
        print(f"dimensions: atlas {report.atlas_size[0]}x{report.atlas_size[1]}, "
              f"mask {report.mask_size[0]}x{report.mask_size[1]} "
              f"({'match' if report.dimensions_match else 'MISMATCH'})")
        for name, count in report.label_pixel_counts.items():
            print(f"  part {name}: {count} px")
        print(f"unknown fraction: {report.unknown_fraction:.4f} "
              f"(threshold {report.unknown_threshold})")
        print(f"verdict: {'PASS' if report.passed else 'FAIL: ' + report.summary()}")
    return 0 if report.passed else 1


# ---------------------------------------------------------------------- apply

def _cmd_apply(args) -> int:
    recipe = parse_recipe_json(_require_file(args.recipe).read_text(encoding="utf-8"))
    store = WardrobeStore(args.store, create=False)
    assets, base_atlas, _ = store.load_garment(args.garment)
    asset_root = args.assets if args.assets else Path(args.recipe).resolve().parent
    rendered = apply_recipe(assets, base_atlas, recipe, _make_resolver(args, asset_root))
    out = Path(args.out)
    out.write_bytes(encode_png(rendered))
    if args.json:
        print(json.dumps({"out": str(out), "pixel_digest": pixel_digest(rendered)}))
    else:
        print(f"wrote {out} ({rendered.width}x{rendered.height})")
    return 0


# ------------------------------------------------------------------------ gen

def _cmd_gen(args) -> int:
    width, height = args.size
    request = GenRequest(prompt=args.prompt, style=args.style,
                         width=width, height=height, seed=args.seed)
    provider = _make_provider(args)
    if args.cache_dir:
        result = cached_resolve(args.cache_dir, provider, request)
    else:
        result = provider.generate(request)
    out = Path(args.out)
    out.write_bytes(encode_png(result.image))
    if args.json:
        print(json.dumps({
            "out": str(out),
            "request_digest": result.request_digest,
            "provider_id": result.provider_id,
            "elapsed_ms": result.elapsed_ms,
        }))
    else:
        print(f"wrote {out} ({width}x{height}, digest {result.request_digest[:12]}...)")
    return 0


# ------------------------------------------------------------------- wardrobe

def _cmd_wardrobe_install(args) -> int:
    store = WardrobeStore(args.store)
    gid = store.install_garment(
        _require_file(args.atlas), _require_file(args.mask),
        _require_file(args.registry), unknown_threshold=args.threshold,
    )
    print(json.dumps({"garment_id": gid}) if args.json else f"installed {gid}")
    return 0


def _cmd_wardrobe_save(args) -> int:
    store = WardrobeStore(args.store)
    recipe = parse_recipe_json(_require_file(args.recipe).read_text(encoding="utf-8"))
    asset_root = args.assets if args.assets else Path(args.recipe).resolve().parent
    outfit = store.save_outfit(recipe, args.title, _make_resolver(args, asset_root))
    doc = {
        "outfit_id": outfit.outfit_id,
        "garment_id": outfit.garment_id,
        "title": outfit.title,
        "saved_at": outfit.saved_at,
        "texture_digest": outfit.texture_digest,
    }
    print(json.dumps(doc, indent=2) if args.json
          else f"saved outfit {outfit.outfit_id} (texture {outfit.texture_digest[:12]}...)")
    return 0


def _cmd_wardrobe_list(args) -> int:
    store = WardrobeStore(args.store, create=False)
    outfits = store.list_outfits()
    if args.json:
        print(json.dumps(outfits, indent=2))
    else:
        if not outfits:
            print("(no outfits)")
        for o in outfits:
            print(f"{o['outfit_id']}  {o['garment_id']:<12} {o['saved_at']}  {o['title']}")
    return 0


def _cmd_wardrobe_show(args) -> int:
    store = WardrobeStore(args.store, create=False)
    outfit = store.load_outfit(args.outfit_id)
    from .recipe import recipe_to_dict
    doc = {
        "outfit_id": outfit.outfit_id,
        "garment_id": outfit.garment_id,
        "title": outfit.title,
        "saved_at": outfit.saved_at,
        "texture_digest": outfit.texture_digest,
        "recipe": recipe_to_dict(outfit.recipe),
    }
    print(json.dumps(doc, indent=2))
    return 0


def _cmd_wardrobe_delete(args) -> int:
    store = WardrobeStore(args.store, create=False)
    store.delete_outfit(args.outfit_id)
    print(json.dumps({"deleted": args.outfit_id}) if args.json
          else f"deleted {args.outfit_id}")
    return 0


# ---------------------------------------------------------------------- serve

def _load_serve_config(path) -> dict:
    try:
        import tomllib
    except ModuleNotFoundError:
        import tomli as tomllib
    with open(path, "rb") as fh:
        return tomllib.load(fh)


def _cmd_serve(args) -> int:
    import uvicorn

    from .service import create_app

    cfg = _load_serve_config(_require_file(args.config)) if args.config else {}
    store = args.store or cfg.get("store")
    if not store:
        raise UvforgeError("serve needs --store (flag or config)")
    app = create_app(
        store,
        provider=args.provider or cfg.get("provider", "mock"),
        gen_endpoint=args.gen_endpoint or cfg.get("gen_endpoint"),
        gen_timeout_ms=args.gen_timeout_ms or cfg.get("gen_timeout_ms", DEFAULT_TIMEOUT_MS),
        cache_dir=args.cache_dir or cfg.get("cache_dir"),
        ui_dir=args.ui_dir or cfg.get("ui_dir"),
    )
    uvicorn.run(app, host=args.host or cfg.get("host", "127.0.0.1"),
                port=args.port or int(cfg.get("port", 8000)))
    return 0


# --------------------------------------------------------------------- parser

def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="uvforge",
        description="Mask-constrained texture customization for garment UV atlases.",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("validate", help="check an atlas + mask + registry trio")
    p.add_argument("atlas")
    p.add_argument("mask")
    p.add_argument("registry")
    p.add_argument("--threshold", type=float, default=0.01,
                   help="tolerated fraction of unclassifiable colored pixels")
    p.add_argument("--json", action="store_true")
    p.set_defaults(func=_cmd_validate)

    p = sub.add_parser("apply", help="render a recipe against a stored garment")
    p.add_argument("--store", required=True)
    p.add_argument("--garment", required=True)
    p.add_argument("--recipe", required=True)
    p.add_argument("--out", required=True)
    p.add_argument("--assets", help="root for asset image refs (default: recipe dir)")
    p.add_argument("--json", action="store_true")
    _add_provider_flags(p)
    p.set_defaults(func=_cmd_apply)

    p = sub.add_parser("gen", help="generate one image")
    p.add_argument("--prompt", required=True)
    p.add_argument("--style", choices=("cartoon", "aesthetic", "scenic", "none"),
                   default="none")
    p.add_argument("--size", type=_size, required=True, metavar="WxH")
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--out", required=True)
    p.add_argument("--json", action="store_true")
    _add_provider_flags(p)
    p.set_defaults(func=_cmd_gen)

    w = sub.add_parser("wardrobe", help="manage stored garments and outfits")
    wsub = w.add_subparsers(dest="wardrobe_command", required=True)

    p = wsub.add_parser("install", help="validate and add a garment")
    p.add_argument("--store", required=True)
    p.add_argument("--atlas", required=True)
    p.add_argument("--mask", required=True)
    p.add_argument("--registry", required=True)
    p.add_argument("--threshold", type=float, default=0.01)
    p.add_argument("--json", action="store_true")
    p.set_defaults(func=_cmd_wardrobe_install)

    p = wsub.add_parser("save", help="render a recipe and save it as an outfit")
    p.add_argument("--store", required=True)
    p.add_argument("--recipe", required=True)
    p.add_argument("--title", required=True)
    p.add_argument("--assets")
    p.add_argument("--json", action="store_true")
    _add_provider_flags(p)
    p.set_defaults(func=_cmd_wardrobe_save)

    p = wsub.add_parser("list", help="list saved outfits")
    p.add_argument("--store", required=True)
    p.add_argument("--json", action="store_true")
    p.set_defaults(func=_cmd_wardrobe_list)

    p = wsub.add_parser("show", help="print one outfit (always JSON)")
    p.add_argument("--store", required=True)
    p.add_argument("outfit_id")
    p.set_defaults(func=_cmd_wardrobe_show)

    p = wsub.add_parser("delete", help="remove an outfit")
    p.add_argument("--store", required=True)
    p.add_argument("outfit_id")
    p.add_argument("--json", action="store_true")
    p.set_defaults(func=_cmd_wardrobe_delete)

    p = sub.add_parser("serve", help="run the HTTP service")
    p.add_argument("--store")
    p.add_argument("--provider", choices=("mock", "remote"))
    p.add_argument("--gen-endpoint")
    p.add_argument("--gen-timeout-ms", type=int)
    p.add_argument("--cache-dir")
    p.add_argument("--ui-dir", help="serve a built frontend from this directory")
    p.add_argument("--host")
    p.add_argument("--port", type=int)
    p.add_argument("--config", help="optional TOML config; flags take precedence")
    p.set_defaults(func=_cmd_serve)

    return parser


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    try:
        return args.func(args)
    except UvforgeError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1
    except FileNotFoundError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())

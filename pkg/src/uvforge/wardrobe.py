"""The wardrobe: a directory-tree store for garments and saved outfits.

Layout:
    {root}/index.json
    {root}/garments/{garment_id}/(atlas.png | mask.png | registry.json)
    {root}/outfits/{outfit_id}/(recipe.json | texture.png)

One JSON index, atomic temp-file-plus-rename updates, and an advisory lock
file serializing writers; readers never block. Desk-scale by design -- no
database, everything diffable.
"""

from __future__ import annotations

import json
import os
import shutil
import tempfile
import uuid
from contextlib import contextmanager
from dataclasses import dataclass
from datetime import datetime, timezone
from pathlib import Path

from .atlas import encode_png, load_atlas, sha256_hex
from .edits import GarmentAssets, ImageResolver, apply_recipe
from .errors import (
    DuplicateGarment,
    NotFound,
    ParseError,
    StoreBusy,
    StoreIoError,
    ValidationFailed,
)
from .labels import load_label_registry
from .mask import classify_mask, validate_garment
from .recipe import Recipe, parse_recipe_json, recipe_to_json

INDEX_SCHEMA_VERSION = 1
LOCK_NAME = ".lock"


@dataclass(frozen=True)
class Outfit:
    outfit_id: str
    garment_id: str
    recipe: Recipe
    texture_digest: str
    title: str
    saved_at: str


@dataclass(frozen=True)
class GarmentInfo:
    garment_id: str
    installed_at: str
    width: int
    height: int
    part_names: tuple[str, ...]


def _utcnow() -> str:
    return datetime.now(timezone.utc).isoformat()


class WardrobeStore:
    """Filesystem-backed store. One writer at a time (advisory lock)."""

    def __init__(self, root, create: bool = True):
        self.root = Path(root)
        if create:
            self.root.mkdir(parents=True, exist_ok=True)
            (self.root / "garments").mkdir(exist_ok=True)
            (self.root / "outfits").mkdir(exist_ok=True)
            if not self._index_path.exists():
                self._write_index({"schema_version": INDEX_SCHEMA_VERSION,
                                   "garments": [], "outfits": []})
        elif not self.root.is_dir():
            raise StoreIoError(f"store root {self.root} does not exist")

    # ------------------------------------------------------------- plumbing

    @property
    def _index_path(self) -> Path:
        return self.root / "index.json"

    def _read_index(self) -> dict:
        try:
            return json.loads(self._index_path.read_text(encoding="utf-8"))
        except FileNotFoundError:
            return {"schema_version": INDEX_SCHEMA_VERSION, "garments": [], "outfits": []}
        except (OSError, json.JSONDecodeError) as exc:
            raise StoreIoError(f"cannot read store index: {exc}") from exc

    def _write_index(self, index: dict):
        # temp file + atomic rename: a killed writer leaves old or new, never torn
        try:
            fd, tmp = tempfile.mkstemp(dir=self.root, suffix=".tmp")
            with os.fdopen(fd, "w", encoding="utf-8") as fh:
                json.dump(index, fh, indent=2)
            os.replace(tmp, self._index_path)
        except OSError as exc:
            raise StoreIoError(f"cannot write store index: {exc}") from exc

    @contextmanager
    def _write_lock(self):
        lock = self.root / LOCK_NAME
        try:
            fd = os.open(lock, os.O_CREAT | os.O_EXCL | os.O_WRONLY)
        except FileExistsError:
            raise StoreBusy(f"store {self.root} is locked by another writer") from None
        except OSError as exc:
            raise StoreIoError(f"cannot acquire store lock: {exc}") from exc
        try:
            os.write(fd, str(os.getpid()).encode("ascii"))
            os.close(fd)
            yield
        finally:
            try:
                os.unlink(lock)
            except FileNotFoundError:
                pass

    def garment_dir(self, garment_id: str) -> Path:
        return self.root / "garments" / garment_id

    def outfit_dir(self, outfit_id: str) -> Path:
        return self.root / "outfits" / outfit_id

    # ------------------------------------------------------------- garments

    def install_garment(self, atlas_path, mask_path, registry_path,
                        unknown_threshold: float = 0.01) -> str:
        """Validate and copy a garment's assets into the store."""
        registry = load_label_registry(registry_path)
        atlas = load_atlas(atlas_path)
        mask = load_atlas(mask_path)
        report = validate_garment(atlas, mask, registry, unknown_threshold)
        if not report.passed:
            raise ValidationFailed(report)

        gid = registry.garment_id
        with self._write_lock():
            index = self._read_index()
            if any(g["garment_id"] == gid for g in index["garments"]):
                raise DuplicateGarment(f"garment {gid!r} already installed")
            gdir = self.garment_dir(gid)
            try:
                gdir.mkdir(parents=True, exist_ok=True)
                shutil.copyfile(atlas_path, gdir / "atlas.png")
                shutil.copyfile(mask_path, gdir / "mask.png")
                shutil.copyfile(registry_path, gdir / "registry.json")
            except OSError as exc:
                raise StoreIoError(f"cannot copy garment assets: {exc}") from exc
            index["garments"].append({
                "garment_id": gid,
                "installed_at": _utcnow(),
                "width": atlas.width,
                "height": atlas.height,
                "parts": list(registry.part_names),
            })
            self._write_index(index)
        return gid

    def list_garments(self) -> list[GarmentInfo]:
        index = self._read_index()
        return [
            GarmentInfo(
                garment_id=g["garment_id"],
                installed_at=g["installed_at"],
                width=g["width"],
                height=g["height"],
                part_names=tuple(g["parts"]),
            )
            for g in index["garments"]
        ]

    def has_garment(self, garment_id: str) -> bool:
        return any(g.garment_id == garment_id for g in self.list_garments())

    def load_garment(self, garment_id: str):
        """Load a garment's atlas, registry, and part index from the store.

        Returns (assets, base_atlas, registry).
        """
        gdir = self.garment_dir(garment_id)
        if not self.has_garment(garment_id) or not gdir.is_dir():
            raise NotFound(f"garment {garment_id!r} is not installed")
        atlas = load_atlas(gdir / "atlas.png")
        mask = load_atlas(gdir / "mask.png")
        registry = load_label_registry(gdir / "registry.json")
        idx = classify_mask(mask, registry)
        return GarmentAssets(garment_id=garment_id, index=idx), atlas, registry

    # -------------------------------------------------------------- outfits

    def save_outfit(self, recipe: Recipe, title: str,
                    resolver: ImageResolver) -> Outfit:
        """Render the recipe, persist it with its texture, update the index."""
        if not recipe.ops:
            raise ParseError("a saved recipe needs at least one op")
        assets, base_atlas, _ = self.load_garment(recipe.garment_id)
        rendered = apply_recipe(assets, base_atlas, recipe, resolver)
        png = encode_png(rendered)
        digest = sha256_hex(png)

        outfit_id = str(uuid.uuid4())
        saved_at = _utcnow()
        with self._write_lock():
            index = self._read_index()
            odir = self.outfit_dir(outfit_id)
            try:
                odir.mkdir(parents=True)
                (odir / "recipe.json").write_text(recipe_to_json(recipe),
                                                  encoding="utf-8")
                (odir / "texture.png").write_bytes(png)
            except OSError as exc:
                raise StoreIoError(f"cannot write outfit files: {exc}") from exc
            index["outfits"].append({
                "outfit_id": outfit_id,
                "garment_id": recipe.garment_id,
                "title": title,
                "saved_at": saved_at,
                "texture_digest": digest,
            })
            self._write_index(index)
        return Outfit(
            outfit_id=outfit_id,
            garment_id=recipe.garment_id,
            recipe=recipe,
            texture_digest=digest,
            title=title,
            saved_at=saved_at,
        )

    def list_outfits(self) -> list[dict]:
        """Outfit summaries, most recently saved first."""
        index = self._read_index()
        return sorted(
            index["outfits"],
            key=lambda o: (o["saved_at"], o["outfit_id"]),
            reverse=True,
        )

    def _find_outfit(self, outfit_id: str) -> dict:
        index = self._read_index()
        for o in index["outfits"]:
            if o["outfit_id"] == outfit_id:
                return o
        raise NotFound(f"no outfit {outfit_id!r}")

    def load_outfit(self, outfit_id: str) -> Outfit:
        entry = self._find_outfit(outfit_id)
        path = self.outfit_dir(outfit_id) / "recipe.json"
        try:
            recipe = parse_recipe_json(path.read_text(encoding="utf-8"))
        except FileNotFoundError:
            raise NotFound(f"outfit {outfit_id!r} files are missing") from None
        return Outfit(
            outfit_id=entry["outfit_id"],
            garment_id=entry["garment_id"],
            recipe=recipe,
            texture_digest=entry["texture_digest"],
            title=entry["title"],
            saved_at=entry["saved_at"],
        )

    def outfit_texture(self, outfit_id: str) -> bytes:
        self._find_outfit(outfit_id)
        path = self.outfit_dir(outfit_id) / "texture.png"
        try:
            return path.read_bytes()
        except FileNotFoundError:
            raise NotFound(f"outfit {outfit_id!r} texture is missing") from None

    def delete_outfit(self, outfit_id: str):
        with self._write_lock():
            index = self._read_index()
            remaining = [o for o in index["outfits"] if o["outfit_id"] != outfit_id]
            if len(remaining) == len(index["outfits"]):
                raise NotFound(f"no outfit {outfit_id!r}")
            index["outfits"] = remaining
            self._write_index(index)
            shutil.rmtree(self.outfit_dir(outfit_id), ignore_errors=True)

"""Text-to-image boundary: request contract, offline mock, remote client, cache.

The mock provider exists so recipes replay byte-identically with no model
in the loop. Its entire algorithm (FNV-1a request hash, splitmix64 palette
stream, four pattern families) is pinned in docs/determinism.md; any
implementation following that document reproduces the same bytes, and
tests/fixtures/mock_vectors.json carries known-answer vectors.

The remote client speaks a minimal bespoke JSON protocol
(POST {base_url}/v1/generate) rather than any vendor API.
"""

from __future__ import annotations

import base64
import json
import os
import tempfile
import time
from dataclasses import dataclass
from pathlib import Path

import numpy as np
import requests

from .atlas import TextureAtlas, decode_png, encode_png, sha256_hex
from .errors import (
    CacheIoError,
    DimensionMismatch,
    InvalidRequest,
    ProviderError,
    ProviderTimeout,
)

STYLES = ("cartoon", "aesthetic", "scenic", "none")

MIN_SIZE = 64
MAX_SIZE = 2048
MAX_PROMPT_CHARS = 500
MAX_SEED = 2**64 - 1

DEFAULT_TIMEOUT_MS = 60_000
TOKEN_ENV_VAR = "UVFORGE_GEN_TOKEN"

# --------------------------------------------------------------------------
# Pinned integer primitives (all arithmetic mod 2^64).

_M64 = (1 << 64) - 1

FNV_OFFSET = 0xCBF29CE484222325
FNV_PRIME = 0x100000001B3

SM64_GAMMA = 0x9E3779B97F4A7C15
_SM64_MULT1 = 0xBF58476D1CE4E5B9
_SM64_MULT2 = 0x94D049BB133111EB

LATTICE_PX = 0x9E3779B97F4A7C15
LATTICE_PY = 0xC2B2AE3D27D4EB4F

NOISE_CELL = 8


def fnv1a64(data: bytes) -> int:
    """64-bit FNV-1a over a byte string."""
    h = FNV_OFFSET
    for b in data:
        h ^= b
        h = (h * FNV_PRIME) & _M64
    return h


def sm64_mix(z: int) -> int:
    """The splitmix64 output finalizer applied to a raw 64-bit state."""
    z = ((z ^ (z >> 30)) * _SM64_MULT1) & _M64
    z = ((z ^ (z >> 27)) * _SM64_MULT2) & _M64
    return z ^ (z >> 31)


class SplitMix64:
    """Standard splitmix64 sequence: state += gamma, then finalize."""

    def __init__(self, seed: int):
        self._state = seed & _M64

    def next(self) -> int:
        self._state = (self._state + SM64_GAMMA) & _M64
        return sm64_mix(self._state)


# --------------------------------------------------------------------------
# Request / result contract.


@dataclass(frozen=True)
class GenRequest:
    """One text-to-image call: prompt, style, output size, seed.

    Invalid values raise InvalidRequest at construction, so a GenRequest
    that exists is always servable.
    """

    prompt: str
    style: str
    width: int
    height: int
    seed: int

    def __post_init__(self):
        if not isinstance(self.prompt, str) or not self.prompt.strip():
            raise InvalidRequest("prompt must be non-empty after trimming")
        if len(self.prompt) > MAX_PROMPT_CHARS:
            raise InvalidRequest(f"prompt longer than {MAX_PROMPT_CHARS} chars")
        if self.style not in STYLES:
            raise InvalidRequest(f"style must be one of {STYLES}, got {self.style!r}")
        for side, value in (("width", self.width), ("height", self.height)):
            if not isinstance(value, int) or isinstance(value, bool):
                raise InvalidRequest(f"{side} must be an integer")
            if not MIN_SIZE <= value <= MAX_SIZE:
                raise InvalidRequest(f"{side} {value} outside {MIN_SIZE}..{MAX_SIZE}")
            if value % 8 != 0:
                raise InvalidRequest(f"{side} {value} is not a multiple of 8")
        if not isinstance(self.seed, int) or isinstance(self.seed, bool):
            raise InvalidRequest("seed must be an integer")
        if not 0 <= self.seed <= MAX_SEED:
            raise InvalidRequest("seed outside unsigned 64-bit range")


def parse_gen_request(doc) -> GenRequest:
    """Build a GenRequest from a parsed JSON object; unknown fields rejected."""
    if not isinstance(doc, dict):
        raise InvalidRequest("generation request must be a JSON object")
    fields = dict(doc)
    try:
        req = GenRequest(
            prompt=fields.pop("prompt", None),
            style=fields.pop("style", None),
            width=fields.pop("width", None),
            height=fields.pop("height", None),
            seed=fields.pop("seed", None),
        )
    except InvalidRequest:
        raise
    if fields:
        raise InvalidRequest(f"unknown request fields: {sorted(fields)}")
    return req


def gen_request_to_dict(req: GenRequest) -> dict:
    """Wire/canonical form; field order is pinned for hashing."""
    return {
        "prompt": req.prompt,
        "style": req.style,
        "width": req.width,
        "height": req.height,
        "seed": req.seed,
    }


def cache_key(req: GenRequest) -> str:
    """Content digest of the canonical request serialization.

    sha256 over compact JSON with the pinned field order
    (prompt, style, width, height, seed); 64 lowercase hex chars.
    """
    canonical = json.dumps(
        gen_request_to_dict(req), separators=(",", ":"), ensure_ascii=True
    )
    return sha256_hex(canonical.encode("utf-8"))


def request_hash(req: GenRequest) -> int:
    """The pinned 64-bit pattern hash: FNV-1a over prompt, style, seed.

    Byte layout: utf8(prompt) 0x00 utf8(style) 0x00 seed as 8-byte
    little-endian. Dimensions are deliberately excluded so the same look
    renders at any resolution.
    """
    payload = (
        req.prompt.encode("utf-8")
        + b"\x00"
        + req.style.encode("utf-8")
        + b"\x00"
        + req.seed.to_bytes(8, "little")
    )
    return fnv1a64(payload)


@dataclass(frozen=True)
class GenResult:
    image: TextureAtlas
    provider_id: str
    request_digest: str
    elapsed_ms: int


# --------------------------------------------------------------------------
# Mock provider: four deterministic pattern families.


def _word_rgb(u: int) -> tuple[int, int, int]:
    return ((u >> 16) & 0xFF, (u >> 8) & 0xFF, u & 0xFF)


def _mix_array(a: np.ndarray, b: np.ndarray, t: np.ndarray) -> np.ndarray:
    # pinned blend: floor(a + (b - a) * t + 0.5) on float64
    return np.floor(a + (b - a) * t + 0.5)


def _stripes(w: int, h: int, palette, param: int) -> np.ndarray:
    band = 4 + (param % 13)
    idx = (np.arange(h) // band) % 3
    rows = np.array(palette, dtype=np.uint8)[idx]
    return np.broadcast_to(rows[:, None, :], (h, w, 3)).copy()

def _checker(w: int, h: int, palette, param: int) -> np.ndarray:
    cell = 4 + (param % 13)
    xs = np.arange(w) // cell
    ys = np.arange(h) // cell
    parity = (ys[:, None] + xs[None, :]) % 2
    c0 = np.array(palette[0], dtype=np.uint8)
    c1 = np.array(palette[1], dtype=np.uint8)
    return np.where(parity[:, :, None] == 0, c0, c1)


def _gradient(w: int, h: int, palette, param: int) -> np.ndarray:
    horizontal = (param & 1) == 0
    n = w if horizontal else h
    t = np.arange(n, dtype=np.float64) / (n - 1) if n > 1 else np.zeros(n)
    c0 = np.array(palette[0], dtype=np.float64)
    c1 = np.array(palette[1], dtype=np.float64)
    ramp = _mix_array(c0[None, :], c1[None, :], t[:, None]).astype(np.uint8)
    if horizontal:
        return np.broadcast_to(ramp[None, :, :], (h, w, 3)).copy()
    return np.broadcast_to(ramp[:, None, :], (h, w, 3)).copy()


def _fade(t: np.ndarray) -> np.ndarray:
    return t * t * t * (t * (t * 6.0 - 15.0) + 10.0)


def _lattice_value(h64: int, i: int, j: int) -> float:
    s = h64 ^ ((i * LATTICE_PX) & _M64) ^ ((j * LATTICE_PY) & _M64)
    return sm64_mix(s) / 2.0**64


def _value_noise(w: int, h: int, palette, h64: int) -> np.ndarray:
    ni = (w - 1) // NOISE_CELL + 2
    nj = (h - 1) // NOISE_CELL + 2
    lattice = np.empty((nj, ni), dtype=np.float64)
    for j in range(nj):
        for i in range(ni):
            lattice[j, i] = _lattice_value(h64, i, j)

    xs = np.arange(w, dtype=np.float64) / NOISE_CELL
    ys = np.arange(h, dtype=np.float64) / NOISE_CELL
    i0 = np.floor(xs).astype(np.int64)
    j0 = np.floor(ys).astype(np.int64)
    fu = _fade(xs - i0)[None, :]
    fv = _fade(ys - j0)[:, None]

    v00 = lattice[j0[:, None], i0[None, :]]
    v10 = lattice[j0[:, None], i0[None, :] + 1]
    v01 = lattice[j0[:, None] + 1, i0[None, :]]
    v11 = lattice[j0[:, None] + 1, i0[None, :] + 1]
    nx0 = v00 + (v10 - v00) * fu
    nx1 = v01 + (v11 - v01) * fu
    n = nx0 + (nx1 - nx0) * fv

    c0 = np.array(palette[0], dtype=np.float64)
    c1 = np.array(palette[1], dtype=np.float64)
    c2 = np.array(palette[2], dtype=np.float64)
    t = n[:, :, None]
    lo = _mix_array(c0, c1, 2.0 * t)
    hi = _mix_array(c1, c2, 2.0 * t - 1.0)
    return np.where(t < 0.5, lo, hi).astype(np.uint8)


_FAMILIES = (_stripes, _checker, _gradient, _value_noise)
FAMILY_NAMES = ("stripes", "checker", "gradient", "noise")


def render_mock_image(req: GenRequest) -> TextureAtlas:
    """Render the pinned deterministic pattern for a request."""
    h64 = request_hash(req)
    stream = SplitMix64(h64)
    palette = tuple(_word_rgb(stream.next()) for _ in range(3))
    param = stream.next()
    family = h64 % 4
    if family == 3:
        rgb = _value_noise(req.width, req.height, palette, h64)
    else:
        rgb = _FAMILIES[family](req.width, req.height, palette, param)
    px = np.empty((req.height, req.width, 4), dtype=np.uint8)
    px[:, :, :3] = rgb
    px[:, :, 3] = 255
    return TextureAtlas(width=req.width, height=req.height, pixels=px)


class MockProvider:
    """Offline stand-in for the trained models: pure function of the request."""

    provider_id = "mock"

    def generate(self, request: GenRequest) -> GenResult:
        t0 = time.perf_counter()
        image = render_mock_image(request)
        elapsed = int((time.perf_counter() - t0) * 1000)
        return GenResult(
            image=image,
            provider_id=self.provider_id,
            request_digest=cache_key(request),
            elapsed_ms=elapsed,
        )


# --------------------------------------------------------------------------
# Remote provider.


class RemoteProvider:
    """HTTP client for a generation backend speaking our minimal protocol.

    POST {base_url}/v1/generate with the canonical request JSON; expects
    {"image_b64": <PNG base64>, "provider_id": <string>}. Bearer token is
    read from UVFORGE_GEN_TOKEN unless given explicitly.
    """

    provider_id = "remote"

    def __init__(
        self,
        base_url: str,
        timeout_ms: int = DEFAULT_TIMEOUT_MS,
        token: str | None = None,
        session: requests.Session | None = None,
    ):
        self.base_url = base_url.rstrip("/")
        self.timeout_ms = timeout_ms
        self.token = token if token is not None else os.environ.get(TOKEN_ENV_VAR)
        self._session = session or requests.Session()

    def generate(self, request: GenRequest) -> GenResult:
        headers = {}
        if self.token:
            headers["Authorization"] = f"Bearer {self.token}"
        t0 = time.perf_counter()
        try:
            resp = self._session.post(
                f"{self.base_url}/v1/generate",
                json=gen_request_to_dict(request),
                headers=headers,
                timeout=self.timeout_ms / 1000.0,
            )
        except requests.Timeout as exc:
            raise ProviderTimeout(
                f"backend did not answer within {self.timeout_ms} ms"
            ) from exc
        except requests.RequestException as exc:
            raise ProviderError(f"backend unreachable: {exc}") from exc
        if not 200 <= resp.status_code < 300:
            raise ProviderError(
                f"backend returned HTTP {resp.status_code}", status=resp.status_code
            )
        try:
            body = resp.json()
            image_b64 = body["image_b64"]
            provider_id = body.get("provider_id", self.provider_id)
            png = base64.b64decode(image_b64, validate=True)
        except (ValueError, KeyError, TypeError) as exc:
            raise ProviderError(f"malformed backend response: {exc}") from exc
        image = decode_png(png)
        if (image.width, image.height) != (request.width, request.height):
            raise DimensionMismatch(
                f"backend returned {image.width}x{image.height} for a "
                f"{request.width}x{request.height} request"
            )
        elapsed = int((time.perf_counter() - t0) * 1000)
        return GenResult(
            image=image,
            provider_id=provider_id,
            request_digest=cache_key(request),
            elapsed_ms=elapsed,
        )


# --------------------------------------------------------------------------
# Content-addressed PNG cache.


def cached_resolve(cache_dir, provider, request: GenRequest) -> GenResult:
    """Serve a request from {cache_dir}/{cache_key}.png, generating on miss.

    Corrupt or wrong-sized cached files are treated as misses and
    overwritten. Writes go to a temp file then an atomic rename, so
    concurrent misses race harmlessly (identical content for deterministic
    providers; last rename wins).
    """
    key = cache_key(request)
    cache_dir = Path(cache_dir)
    path = cache_dir / f"{key}.png"
    t0 = time.perf_counter()
    if path.exists():
        try:
            image = decode_png(path.read_bytes())
            if (image.width, image.height) == (request.width, request.height):
                elapsed = int((time.perf_counter() - t0) * 1000)
                return GenResult(
                    image=image,
                    provider_id="cache",
                    request_digest=key,
                    elapsed_ms=elapsed,
                )
        except Exception:
            pass  # fall through: regenerate and overwrite

    result = provider.generate(request)
    try:
        cache_dir.mkdir(parents=True, exist_ok=True)
        fd, tmp = tempfile.mkstemp(dir=cache_dir, suffix=".tmp")
        try:
            with os.fdopen(fd, "wb") as fh:
                fh.write(encode_png(result.image))
            os.replace(tmp, path)
        finally:
            if os.path.exists(tmp):
                os.unlink(tmp)
    except OSError as exc:
        raise CacheIoError(f"cannot write cache entry {path}: {exc}") from exc
    return result

"""Naive per-pixel reference implementations used as the test oracle.

Written independently of the engine, from the arithmetic contract in
docs/determinism.md: plain Python loops over scalars, one pixel at a time.
Only numpy arrays are used as storage; no vectorized math. The engine must
match these byte-for-byte.
"""

from __future__ import annotations

import math

import numpy as np


def mix(a: float, b: float, t: float) -> int:
    return int(math.floor(a + (b - a) * t + 0.5))


def quant(v: float) -> int:
    b = int(math.floor(v * 255.0 + 0.5))
    return 0 if b < 0 else 255 if b > 255 else b


def rgb_to_hsl(r8: int, g8: int, b8: int):
    r = r8 / 255.0
    g = g8 / 255.0
    b = b8 / 255.0
    mx = max(r, g, b)
    mn = min(r, g, b)
    d = mx - mn
    l = (mx + mn) / 2.0
    if d == 0.0:
        return 0.0, 0.0, l
    s = d / (1.0 - abs(2.0 * l - 1.0))
    if mx == r:
        hp = ((g - b) / d) % 6.0
    elif mx == g:
        hp = (b - r) / d + 2.0
    else:
        hp = (r - g) / d + 4.0
    return 60.0 * hp, s, l


def hsl_to_rgb(h: float, s: float, l: float):
    c = (1.0 - abs(2.0 * l - 1.0)) * s
    hp = h / 60.0
    x = c * (1.0 - abs(hp % 2.0 - 1.0))
    k = int(math.floor(hp)) % 6
    if k == 0:
        rp, gp, bp = c, x, 0.0
    elif k == 1:
        rp, gp, bp = x, c, 0.0
    elif k == 2:
        rp, gp, bp = 0.0, c, x
    elif k == 3:
        rp, gp, bp = 0.0, x, c
    elif k == 4:
        rp, gp, bp = x, 0.0, c
    else:
        rp, gp, bp = c, 0.0, x
    m = l - c / 2.0
    return quant(rp + m), quant(gp + m), quant(bp + m)


def bilinear_clamp(img: np.ndarray, sx: float, sy: float, channel: int) -> float:
    h, w = img.shape[:2]
    i0f = math.floor(sx)
    j0f = math.floor(sy)
    fu = sx - i0f
    fv = sy - j0f
    i0 = min(max(int(i0f), 0), w - 1)
    i1 = min(max(int(i0f) + 1, 0), w - 1)
    j0 = min(max(int(j0f), 0), h - 1)
    j1 = min(max(int(j0f) + 1, 0), h - 1)
    a00 = float(img[j0, i0, channel])
    a10 = float(img[j0, i1, channel])
    a01 = float(img[j1, i0, channel])
    a11 = float(img[j1, i1, channel])
    nx0 = a00 + (a10 - a00) * fu
    nx1 = a01 + (a11 - a01) * fu
    return nx0 + (nx1 - nx0) * fv


def bilinear_wrap(img: np.ndarray, u: float, v: float, channel: int) -> float:
    h, w = img.shape[:2]
    i0f = math.floor(u)
    j0f = math.floor(v)
    fu = u - i0f
    fv = v - j0f
    i0 = int(i0f) % w
    i1 = (int(i0f) + 1) % w
    j0 = int(j0f) % h
    j1 = (int(j0f) + 1) % h
    a00 = float(img[j0, i0, channel])
    a10 = float(img[j0, i1, channel])
    a01 = float(img[j1, i0, channel])
    a11 = float(img[j1, i1, channel])
    nx0 = a00 + (a10 - a00) * fu
    nx1 = a01 + (a11 - a01) * fu
    return nx0 + (nx1 - nx0) * fv


def region_scan(labels: np.ndarray, lid: int):
    """Full-scan membership, count, and tight bbox for one label id."""
    h, w = labels.shape
    bits = np.zeros((h, w), dtype=bool)
    count = 0
    x_min = y_min = None
    x_max = y_max = None
    for y in range(h):
        for x in range(w):
            if labels[y, x] == lid:
                bits[y, x] = True
                count += 1
                if x_min is None or x < x_min:
                    x_min = x
                if x_max is None or x > x_max:
                    x_max = x
                if y_min is None or y < y_min:
                    y_min = y
                if y_max is None or y > y_max:
                    y_max = y
    bbox = None if count == 0 else (x_min, y_min, x_max, y_max)
    return bits, count, bbox


def classify(mask_px: np.ndarray, parts):
    """parts: list of ((r, g, b), tolerance). Returns labels, coverage.

    Asserts that no pixel matches two labels (the registry separation
    invariant must make that impossible).
    """
    h, w = mask_px.shape[:2]
    labels = np.full((h, w), -1, dtype=np.int16)
    coverage = np.zeros((h, w), dtype=np.float64)
    for y in range(h):
        for x in range(w):
            a = int(mask_px[y, x, 3])
            if a == 0:
                continue
            matches = []
            for lid, (color, tol) in enumerate(parts):
                ok = True
                for c in range(3):
                    if abs(int(mask_px[y, x, c]) - color[c]) > tol:
                        ok = False
                        break
                if ok:
                    matches.append(lid)
            assert len(matches) <= 1, f"ambiguous pixel at {(x, y)}: {matches}"
            if matches:
                labels[y, x] = matches[0]
                coverage[y, x] = a / 255.0
    return labels, coverage


def recolor(px: np.ndarray, bits: np.ndarray, coverage: np.ndarray,
            target, preserve_shading: bool) -> np.ndarray:
    h, w = px.shape[:2]
    out = px.copy()
    h_t, s_t, _ = rgb_to_hsl(*target)
    for y in range(h):
        for x in range(w):
            if not bits[y, x]:
                continue
            r, g, b = int(px[y, x, 0]), int(px[y, x, 1]), int(px[y, x, 2])
            if preserve_shading:
                _, _, l = rgb_to_hsl(r, g, b)
                repl = hsl_to_rgb(h_t, s_t, l)
            else:
                repl = target
            t = float(coverage[y, x])
            out[y, x, 0] = mix(r, repl[0], t)
            out[y, x, 1] = mix(g, repl[1], t)
            out[y, x, 2] = mix(b, repl[2], t)
    return out


def texture_fill(px: np.ndarray, bits: np.ndarray, coverage: np.ndarray,
                 bbox, fill_px: np.ndarray, fit: str,
                 tile_scale: float, blend_opacity: float) -> np.ndarray:
    h, w = px.shape[:2]
    out = px.copy()
    x0, y0, x1, y1 = bbox
    fh, fw = fill_px.shape[:2]
    bw = x1 - x0 + 1
    bh = y1 - y0 + 1
    sx = (fw - 1) / (bw - 1) if bw > 1 else 0.0
    sy = (fh - 1) / (bh - 1) if bh > 1 else 0.0
    for y in range(h):
        for x in range(w):
            if not bits[y, x]:
                continue
            if fit == "tile":
                if tile_scale == 1.0:
                    ix = (x - x0) % fw
                    iy = (y - y0) % fh
                    sample = [float(fill_px[iy, ix, c]) for c in range(3)]
                else:
                    u = ((x - x0) / tile_scale) % fw
                    v = ((y - y0) / tile_scale) % fh
                    sample = [bilinear_wrap(fill_px, u, v, c) for c in range(3)]
            else:
                u = (x - x0) * sx
                v = (y - y0) * sy
                sample = [bilinear_clamp(fill_px, u, v, c) for c in range(3)]
            t = float(coverage[y, x]) * blend_opacity
            for c in range(3):
                out[y, x, c] = mix(float(px[y, x, c]), sample[c], t)
    return out


def logo_stamp(px: np.ndarray, bits: np.ndarray, coverage: np.ndarray,
               bbox, logo_px: np.ndarray, anchor_uv, scale: float,
               rotation_deg: float, opacity: float) -> np.ndarray:
    h, w = px.shape[:2]
    out = px.copy()
    x0, y0, x1, y1 = bbox
    bw = x1 - x0 + 1
    bh = y1 - y0 + 1
    u, v = anchor_uv
    cx = x0 + u * bw
    cy = y0 + v * bh
    lh, lw = logo_px.shape[:2]
    rad = rotation_deg * (math.pi / 180.0)
    ct = math.cos(rad)
    st = math.sin(rad)
    ox = lw / 2.0 - 0.5
    oy = lh / 2.0 - 0.5
    for y in range(h):
        for x in range(w):
            if not bits[y, x]:
                continue
            dx = (x + 0.5) - cx
            dy = (y + 0.5) - cy
            qx = (dx * ct + dy * st) / scale
            qy = (dy * ct - dx * st) / scale
            if abs(qx) > lw / 2.0 or abs(qy) > lh / 2.0:
                continue
            sx = qx + ox
            sy = qy + oy
            sample = [bilinear_clamp(logo_px, sx, sy, c) for c in range(4)]
            la = sample[3] / 255.0
            t = (float(coverage[y, x]) * opacity) * la
            for c in range(3):
                out[y, x, c] = mix(float(px[y, x, c]), sample[c], t)
    return out


def mask_overlay(px: np.ndarray, labels: np.ndarray, coverage: np.ndarray,
                 colors) -> np.ndarray:
    """colors: list of (r, g, b) per label id."""
    h, w = px.shape[:2]
    out = px.copy()
    for y in range(h):
        for x in range(w):
            lid = int(labels[y, x])
            if lid < 0:
                continue
            t = 0.5 * float(coverage[y, x])
            color = colors[lid]
            for c in range(3):
                out[y, x, c] = mix(float(px[y, x, c]), float(color[c]), t)
    return out

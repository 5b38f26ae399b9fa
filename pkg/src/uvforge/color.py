"""sRGB byte color helpers: hex codes, HSL conversion, and the pinned blend.

All blending in this package happens on sRGB-encoded bytes with straight
alpha. The exact arithmetic below is part of the public contract (golden
images depend on it), so the formulas are spelled out operation by
operation; see docs/determinism.md. Float work is IEEE-754 double.
"""

from __future__ import annotations

import math
import re

from .errors import ParseError

Rgb = tuple[int, int, int]

_HEX_RE = re.compile(r"#([0-9a-fA-F]{6})\Z")


def parse_hex_color(text: str) -> Rgb:
    """Parse '#RRGGBB' (either case) into an (r, g, b) byte triple."""
    if not isinstance(text, str):
        raise ParseError(f"color must be a '#RRGGBB' string, got {text!r}")
    m = _HEX_RE.match(text)
    if m is None:
        raise ParseError(f"malformed color {text!r}, expected '#RRGGBB'")
    v = int(m.group(1), 16)
    return ((v >> 16) & 0xFF, (v >> 8) & 0xFF, v & 0xFF)


def format_hex_color(rgb: Rgb) -> str:
    """Format a byte triple as uppercase '#RRGGBB'."""
    r, g, b = rgb
    return f"#{r:02X}{g:02X}{b:02X}"


def check_rgb(rgb) -> Rgb:
    """Validate an (r, g, b) triple of 0-255 ints; returns it as a tuple."""
    try:
        r, g, b = rgb
    except (TypeError, ValueError):
        raise ParseError(f"expected an RGB triple, got {rgb!r}") from None
    for c in (r, g, b):
        if not isinstance(c, int) or isinstance(c, bool) or not 0 <= c <= 255:
            raise ParseError(f"RGB channel out of range in {rgb!r}")
    return (r, g, b)


def mix_channel(a: int | float, b: int | float, t: float) -> int:
    """Blend one channel: round(a + (b - a) * t), half away from zero.

    a and b are byte values (b may be a fractional sample), t in [0, 1].
    The domain is non-negative, so floor(x + 0.5) is the pinned rounding.
    """
    return int(math.floor(a + (b - a) * t + 0.5))


def quantize_unit(v: float) -> int:
    """Map a [0, 1] float to a byte: floor(v * 255 + 0.5), clamped."""
    b = int(math.floor(v * 255.0 + 0.5))
    if b < 0:
        return 0
    if b > 255:
        return 255
    return b


def rgb_to_hsl(rgb: Rgb) -> tuple[float, float, float]:
    """Convert a byte triple to (hue degrees in [0, 360), saturation, lightness).

    Hexcone HSL. Ties in the max channel resolve in r, g, b order; an
    achromatic pixel gets hue 0 and saturation 0.
    """
    r = rgb[0] / 255.0
    g = rgb[1] / 255.0
    b = rgb[2] / 255.0
    mx = max(r, g, b)
    mn = min(r, g, b)
    d = mx - mn
    l = (mx + mn) / 2.0
    if d == 0.0:
        return (0.0, 0.0, l)
    s = d / (1.0 - abs(2.0 * l - 1.0))
    if mx == r:
        hp = ((g - b) / d) % 6.0
    elif mx == g:
        hp = (b - r) / d + 2.0
    else:
        hp = (r - g) / d + 4.0
    return (60.0 * hp, s, l)


def hsl_to_rgb(h: float, s: float, l: float) -> Rgb:
    """Convert (hue degrees, saturation, lightness) back to a byte triple."""
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
    return (quantize_unit(rp + m), quantize_unit(gp + m), quantize_unit(bp + m))

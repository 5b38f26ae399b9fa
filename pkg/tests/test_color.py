"""Color primitives: hex parsing, the pinned mix, HSL conversions."""

import pytest
from hypothesis import given, strategies as st

import reference as ref
from uvforge.color import (
    format_hex_color,
    hsl_to_rgb,
    mix_channel,
    parse_hex_color,
    quantize_unit,
    rgb_to_hsl,
)
from uvforge.errors import ParseError

byte = st.integers(0, 255)


def test_hex_parse_and_format():
    assert parse_hex_color("#3A7BFF") == (0x3A, 0x7B, 0xFF)
    assert parse_hex_color("#3a7bff") == (0x3A, 0x7B, 0xFF)
    assert format_hex_color((0x3A, 0x7B, 0xFF)) == "#3A7BFF"


@pytest.mark.parametrize("bad", ["3A7BFF", "#3A7BF", "#3A7BFFF", "#GG0000", "", 42, None])
def test_hex_rejects_malformed(bad):
    with pytest.raises(ParseError):
        parse_hex_color(bad)


@given(byte, byte)
def test_mix_endpoints(a, b):
    assert mix_channel(a, b, 0.0) == a
    assert mix_channel(a, b, 1.0) == b


def test_mix_rounds_half_away_from_zero():
    # non-negative domain: half away from zero == half up
    assert mix_channel(0, 1, 0.5) == 1
    assert mix_channel(10, 11, 0.5) == 11
    assert mix_channel(10, 9, 0.5) == 10   # 9.5 rounds up to 10
    assert mix_channel(0, 255, 0.5) == 128


@given(byte, byte, st.floats(0.0, 1.0))
def test_mix_matches_reference(a, b, t):
    assert mix_channel(a, b, t) == ref.mix(a, b, t)


def test_quantize_unit():
    assert quantize_unit(0.0) == 0
    assert quantize_unit(1.0) == 255
    assert quantize_unit(0.5) == 128
    assert quantize_unit(-0.01) == 0
    assert quantize_unit(1.01) == 255


def test_hsl_known_values():
    assert rgb_to_hsl((255, 0, 0)) == (0.0, 1.0, 0.5)
    h, s, l = rgb_to_hsl((0, 255, 0))
    assert (h, s, l) == (120.0, 1.0, 0.5)
    h, s, l = rgb_to_hsl((64, 64, 64))
    assert (h, s) == (0.0, 0.0)
    assert l == 64 / 255.0


@given(byte, byte, byte)
def test_hsl_round_trip_is_exact(r, g, b):
    h, s, l = rgb_to_hsl((r, g, b))
    assert hsl_to_rgb(h, s, l) == (r, g, b)


@given(byte, byte, byte)
def test_hsl_matches_reference(r, g, b):
    assert rgb_to_hsl((r, g, b)) == ref.rgb_to_hsl(r, g, b)
    h, s, l = rgb_to_hsl((r, g, b))
    assert hsl_to_rgb(h, s, l) == ref.hsl_to_rgb(h, s, l)

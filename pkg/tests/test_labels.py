"""Label registry parsing and the color-separation invariant."""

import json

import pytest
from hypothesis import given, strategies as st

from uvforge.errors import ColorsTooClose, DuplicateColor, DuplicateName, ParseError
from uvforge.labels import (
    LabelRegistry,
    PartLabel,
    chebyshev,
    load_label_registry,
    parse_registry,
    registry_to_dict,
)


def write_registry(tmp_path, doc):
    path = tmp_path / "registry.json"
    path.write_text(json.dumps(doc))
    return path


GOOD = {
    "garment_id": "tee",
    "tolerance": 8,
    "parts": [
        {"name": "body", "color": "#FF0000"},
        {"name": "sleeve", "color": "#00ff00"},
    ],
}


def test_load_valid_registry(tmp_path):
    reg = load_label_registry(write_registry(tmp_path, GOOD))
    assert reg.garment_id == "tee"
    assert reg.part_names == ("body", "sleeve")
    assert reg.entries[0].color == (255, 0, 0)
    assert reg.entries[1].tolerance == 8


def test_colors_emitted_uppercase(tmp_path):
    reg = load_label_registry(write_registry(tmp_path, GOOD))
    doc = registry_to_dict(reg)
    assert doc["parts"][1]["color"] == "#00FF00"


def test_duplicate_name():
    with pytest.raises(DuplicateName):
        LabelRegistry("g", (PartLabel("body", (255, 0, 0)),
                            PartLabel("body", (0, 255, 0))))


def test_duplicate_color():
    with pytest.raises(DuplicateColor):
        LabelRegistry("g", (PartLabel("a", (255, 0, 0)),
                            PartLabel("b", (255, 0, 0))))


def test_colors_too_close():
    # Chebyshev distance 7 <= 2 * 8: ambiguous under tolerance matching
    with pytest.raises(ColorsTooClose):
        LabelRegistry("g", (PartLabel("a", (0xFF, 0, 0)),
                            PartLabel("b", (0xF8, 0, 0))))


def test_separation_boundary():
    # distance 16 == 2 * tol still ambiguous; 17 is the first safe distance
    with pytest.raises(ColorsTooClose):
        LabelRegistry("g", (PartLabel("a", (255, 0, 0)),
                            PartLabel("b", (239, 0, 0))))
    reg = LabelRegistry("g", (PartLabel("a", (255, 0, 0)),
                              PartLabel("b", (238, 0, 0))))
    assert chebyshev(reg.entries[0].color, reg.entries[1].color) == 17


def test_tolerance_bounds():
    with pytest.raises(ParseError):
        PartLabel("a", (0, 0, 0), tolerance=33)
    with pytest.raises(ParseError):
        PartLabel("a", (0, 0, 0), tolerance=-1)
    PartLabel("a", (0, 0, 0), tolerance=0)
    PartLabel("a", (0, 0, 0), tolerance=32)


def test_empty_name_rejected():
    with pytest.raises(ParseError):
        PartLabel("", (0, 0, 0))


@pytest.mark.parametrize("mutate", [
    lambda d: d.update(extra=1),
    lambda d: d["parts"][0].update(tolerance=4),
    lambda d: d.update(parts=[]),
    lambda d: d.pop("garment_id"),
    lambda d: d.update(tolerance="8"),
    lambda d: d["parts"][0].update(color="FF0000"),
])
def test_parse_rejects_bad_documents(mutate):
    doc = json.loads(json.dumps(GOOD))
    mutate(doc)
    with pytest.raises(ParseError):
        parse_registry(doc)


def test_bad_json_file(tmp_path):
    path = tmp_path / "registry.json"
    path.write_text("{not json")
    with pytest.raises(ParseError):
        load_label_registry(path)


@given(st.data())
def test_separation_implies_unambiguous_matching(data):
    """Brute force: a valid registry can never claim one pixel twice."""
    n = data.draw(st.integers(2, 4))
    tol = data.draw(st.integers(0, 16))
    colors = data.draw(
        st.lists(st.tuples(*[st.integers(0, 255)] * 3), min_size=n, max_size=n,
                 unique=True)
    )
    try:
        reg = LabelRegistry(
            "g", tuple(PartLabel(f"p{i}", c, tolerance=tol)
                       for i, c in enumerate(colors))
        )
    except (ColorsTooClose, DuplicateColor):
        return  # invalid registries are rejected; nothing more to check
    pixel = data.draw(st.tuples(*[st.integers(0, 255)] * 3))
    matches = [
        e.name for e in reg.entries
        if all(abs(pixel[c] - e.color[c]) <= e.tolerance for c in range(3))
    ]
    assert len(matches) <= 1

"""Diagram model: serialization, validation, homology of the ambient space."""

import pytest

from conftest import corpus_files, corpus_path
from hfk.builders import (
    essential_circle_diagram,
    genus2_tube_diagram,
    lens_diagram,
    lens_finger_diagram,
)
from hfk.diagram import (
    DiagramError,
    DiagramModel,
    ambient_h1,
    diagram_from_dict,
    diagram_to_dict,
    load_diagram,
    recover_knot_data,
    save_diagram,
    validate,
)

ALL_BUILDERS = [
    ("essential", essential_circle_diagram),
    ("lens2", lambda: lens_diagram(2)),
    ("lens5", lambda: lens_diagram(5)),
    ("finger1", lambda: lens_finger_diagram(1)),
    ("finger3", lambda: lens_finger_diagram(3)),
    ("tube", genus2_tube_diagram),
]


@pytest.mark.parametrize("name,make", ALL_BUILDERS)
def test_dict_round_trip(name, make):
    d = make()
    assert diagram_to_dict(diagram_from_dict(diagram_to_dict(d))) \
        == diagram_to_dict(d)


@pytest.mark.parametrize("name,make", ALL_BUILDERS)
def test_builders_validate_clean(name, make):
    assert validate(make()).errors == []


def test_file_round_trip(tmp_path):
    d = genus2_tube_diagram()
    path = str(tmp_path / "tube.hd.json")
    save_diagram(d, path)
    loaded = load_diagram(path)
    assert diagram_to_dict(loaded) == diagram_to_dict(d)
    assert loaded.domains == {"P": {"R1": 1, "R3": 1}}


@pytest.mark.parametrize("fname", corpus_files(".hd.json"))
def test_corpus_diagrams_validate(fname):
    assert validate(load_diagram(corpus_path(fname))).errors == []


def test_missing_top_level_key():
    with pytest.raises(DiagramError, match="missing top-level key"):
        diagram_from_dict({"genus": 1})


def test_not_json(tmp_path):
    path = tmp_path / "broken.hd.json"
    path.write_text("{not json")
    with pytest.raises(DiagramError, match="not valid JSON"):
        load_diagram(str(path))


def test_validate_catches_swapped_quadrants():
    data = diagram_to_dict(lens_diagram(3))
    p = data["points"][0]
    p["quadrants"] = [p["quadrants"][1], p["quadrants"][0]] + p["quadrants"][2:]
    report = validate(diagram_from_dict(data))
    assert any("quadrants" in e for e in report.errors)


def test_validate_catches_missing_basepoint_region():
    data = diagram_to_dict(lens_diagram(2))
    data["basepoints"]["z"] = "nope"
    report = validate(diagram_from_dict(data))
    assert report.errors == ["basepoint z region nope does not exist"]


def test_validate_catches_wrong_euler_characteristic():
    data = diagram_to_dict(lens_diagram(2))
    data["regions"][0]["euler_char"] = 7
    report = validate(diagram_from_dict(data))
    assert any("Euler characteristic" in e for e in report.errors)


def test_surface_homology_rank_is_twice_genus():
    assert DiagramModel(lens_diagram(4)).h1_rank == 2
    assert DiagramModel(genus2_tube_diagram()).h1_rank == 4


def test_ambient_homology():
    # The two slopes intersecting e times present a lens space of order e;
    # e = 1 gives the three-sphere.  The essential circle diagram has no
    # second curve intersection, so one handle survives untouched.
    assert ambient_h1(lens_diagram(1)) == []
    assert ambient_h1(lens_diagram(3)) == [3]
    assert ambient_h1(lens_diagram(6)) == [6]
    assert ambient_h1(lens_finger_diagram(2)) == [2]
    assert ambient_h1(essential_circle_diagram()) == [0]
    assert ambient_h1(genus2_tube_diagram()) == [0, 0]


def test_knot_classes():
    assert recover_knot_data(essential_circle_diagram()) == (0, -1)
    assert recover_knot_data(lens_diagram(1)) == (0, 0)
    assert recover_knot_data(lens_diagram(3)) == (0, 2)
    assert recover_knot_data(lens_finger_diagram(2)) == (0, 1)
    assert recover_knot_data(genus2_tube_diagram()) == (0, 0, 1, -1)

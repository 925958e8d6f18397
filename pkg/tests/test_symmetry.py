"""The symmetry transforms and the reports built from them."""

import pytest

from hfk.builders import (
    essential_circle_diagram,
    lens_diagram,
    lens_finger_diagram,
)
from hfk.chain_f2 import differential, homology
from hfk.diagram import DiagramError, diagram_to_dict, validate
from hfk.symmetry import (
    conjugate,
    evenness_check,
    knot_conjugation_check,
    point_swap,
    triangle_rank_consistency,
)

FAMILY = [
    ("essential", essential_circle_diagram),
    ("lens3", lambda: lens_diagram(3)),
    ("lens4", lambda: lens_diagram(4)),
    ("finger2", lambda: lens_finger_diagram(2)),
]


@pytest.mark.parametrize("name,make", FAMILY)
def test_point_swap_keeps_differential(name, make):
    d = make()
    swapped, t = point_swap(d)
    assert t.notes == ["differential compared: equal"]
    assert validate(swapped).errors == []
    assert differential(swapped) == differential(d)


def test_point_swap_label_shifts():
    assert point_swap(essential_circle_diagram())[1].label_shift == (0, -1)
    assert point_swap(lens_diagram(3))[1].label_shift == (0, 2)
    assert point_swap(lens_diagram(4))[1].label_shift == (0, 3)
    assert point_swap(lens_finger_diagram(2))[1].label_shift == (0, 1)


@pytest.mark.parametrize("name,make", FAMILY)
def test_point_swap_is_an_involution(name, make):
    d = make()
    twice = point_swap(point_swap(d, check=False)[0], check=False)[0]
    assert diagram_to_dict(twice) == diagram_to_dict(d)


@pytest.mark.parametrize("name,make", FAMILY)
def test_conjugation_preserves_ranks(name, make):
    d = make()
    conj, t = conjugate(d)
    assert t.notes == ["rank tables compared: equal multisets"]
    assert validate(conj).errors == []
    twice = conjugate(conj, check=False)[0]
    assert diagram_to_dict(twice) == diagram_to_dict(d)


def test_conjugation_class_maps():
    assert conjugate(lens_diagram(3))[1].class_map == {
        (0, 0): (0, 0), (0, 1): (0, 2), (0, 2): (0, 1)}
    assert conjugate(lens_diagram(4))[1].class_map == {
        (0, 0): (0, 0), (0, 1): (0, 3), (0, 2): (0, 2), (0, 3): (0, 1)}
    assert conjugate(essential_circle_diagram())[1].class_map == {
        (0, 0): (0, 0)}


def test_knot_conjugation_pairs_even_lens_without_fixed_class():
    for e in (2, 4, 6):
        report = knot_conjugation_check(lens_diagram(e))
        assert report["status"] == "pass"
        assert report["fixed"] == []
        assert report["ranks_checked"]
        invol = report["involution"]
        assert all(invol[invol[k]] == k for k in invol)


def test_knot_conjugation_on_odd_lens_has_one_fixed_class():
    report = knot_conjugation_check(lens_diagram(3))
    assert report["status"] == "pass"
    assert report["fixed"] == [(0, 2)]


def test_evenness_reports():
    ess = evenness_check(essential_circle_diagram())
    assert ess == {"check": "evenness", "applicable": True,
                   "grand_total": 0, "even": True}
    assert evenness_check(lens_diagram(3)) == {"check": "evenness",
                                               "applicable": False}
    lens4 = evenness_check(lens_diagram(4))
    assert lens4["applicable"] and lens4["even"] and lens4["grand_total"] == 4


def test_evenness_applicability_tracks_divisibility():
    # In Z_e the class of the knot is e - 1; it is twice another class
    # exactly when e is odd.
    for e in range(1, 7):
        report = evenness_check(lens_diagram(e))
        assert report["applicable"] == (e % 2 == 0)


def test_triangle_rank_consistency():
    assert triangle_rank_consistency(0, 7, 7)
    assert triangle_rank_consistency(3, 4, 5)
    assert not triangle_rank_consistency(9, 2, 3)
    with pytest.raises(DiagramError):
        triangle_rank_consistency(-1, 0, 0)


def test_homology_invariant_under_composite():
    # Swapping basepoints and conjugating leaves every rank in place.
    d = lens_diagram(4)
    composed = conjugate(point_swap(d, check=False)[0], check=False)[0]
    before = homology(d)
    after = homology(composed)
    assert before.grand_total == after.grand_total
    assert sorted(c["total"] for c in before.classes) \
        == sorted(c["total"] for c in after.classes)

"""The genus-2 tube diagram: the one corpus entry whose interest is its
periodic domain rather than its homology.

Its ambient space is the double connected sum of S1 x S2; the named
domain P is a genus-one piece missing z and crossing w once, which is
exactly the shape the pairing and adjunction machinery wants, while the
all-positive periodic domains defeat admissibility at both basepoints."""

import pytest

from hfk.builders import GENUS2_TUBE_P, genus2_tube_diagram
from hfk.diagram import DiagramError, DiagramModel
from hfk.chain_f2 import enumerate_generators
from hfk.symmetry import (
    _euler_char_of_support,
    adjunction_report,
    chern_eval,
    evenness_check,
    point_swap,
)


@pytest.fixture(scope="module")
def tube():
    return genus2_tube_diagram()


def test_support_euler_characteristic(tube):
    m = DiagramModel(tube)
    assert _euler_char_of_support(m, GENUS2_TUBE_P) == -2


def test_chern_values_are_class_constant_zero(tube):
    values = {x: chern_eval(tube, GENUS2_TUBE_P, x)
              for x in enumerate_generators(tube)}
    assert set(values.values()) == {0}
    assert len(values) == 4


def test_chern_rejects_bad_domains(tube):
    with pytest.raises(DiagramError, match="not 0/1"):
        chern_eval(tube, {"R1": 2}, ("u1", "v1"))
    with pytest.raises(DiagramError, match="not periodic"):
        chern_eval(tube, {"R1": 1}, ("u1", "v1"))
    with pytest.raises(DiagramError, match="z lies inside"):
        chern_eval(tube, {r: 1 for r in tube.regions}, ("u1", "v1"))


def test_adjunction_report(tube):
    report = adjunction_report(tube, GENUS2_TUBE_P)
    assert report["case"] == "i"
    assert report["genus"] == 1
    assert report["genus_hypothesis_ok"] is False
    assert report["ranks_available"] is False
    assert report["status"] == "pass"
    assert report["values"] == {(0, 0, 0, 0): 0}


def test_adjunction_flags_sphere_class_as_inconclusive(tube):
    # The domain through handle B closes to a sphere, so its pairing of 2
    # breaks the absolute bound; without ranks that is only inconclusive.
    q = {"R1": 1, "R4": 1, "R5": 1}
    report = adjunction_report(tube, q)
    assert report["case"] == "ii"
    assert report["genus"] == 0
    assert report["status"] == "inconclusive"
    assert report["witnesses"] == [
        {"class": (0, 0, 0, 0), "value": 2, "bound": -2, "case": "ii"}]


def test_evenness_degrades_to_a_note(tube):
    report = evenness_check(tube)
    assert report["applicable"] is True
    assert "even" not in report
    assert report["note"].startswith("homology unavailable")


def test_point_swap_works_without_a_differential(tube):
    swapped, t = point_swap(tube)
    assert t.label_shift == (0, 0, 1, -1)
    assert t.notes == ["differential undefined on both sides"]
    assert swapped.z == tube.w and swapped.w == tube.z

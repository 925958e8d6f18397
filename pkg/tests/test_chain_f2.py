"""The mod-2 complex: generator enumeration, the disc count, homology."""

import pytest

from hfk.builders import (
    essential_circle_diagram,
    genus2_tube_diagram,
    lens_diagram,
    lens_finger_diagram,
)
from hfk.diagram import BudgetError, DiagramError
from hfk.chain_f2 import (
    brute_force_differential,
    differential,
    enumerate_generators,
    homology,
    verify_d_squared,
)


def test_generator_enumeration():
    assert enumerate_generators(essential_circle_diagram()) \
        == [("p",), ("q",)]
    assert enumerate_generators(lens_diagram(3)) \
        == [("p0",), ("p1",), ("p2",)]
    assert enumerate_generators(genus2_tube_diagram()) == [
        ("u1", "v1"), ("u1", "v2"), ("u2", "v1"), ("u2", "v2")]


def test_generator_budget_is_enforced():
    with pytest.raises(BudgetError):
        enumerate_generators(lens_diagram(4), budget=2)


@pytest.mark.parametrize("make", [
    essential_circle_diagram,
    lambda: lens_diagram(1),
    lambda: lens_diagram(2),
    lambda: lens_diagram(3),
    lambda: lens_diagram(4),
    lambda: lens_finger_diagram(1),
    lambda: lens_finger_diagram(2),
    lambda: lens_finger_diagram(3),
])
def test_differential_matches_brute_force(make):
    # The walk-based count against the region-assignment oracle.
    d = make()
    assert differential(d) == brute_force_differential(d)


def test_essential_circle_differential():
    d = essential_circle_diagram()
    assert differential(d) == {("p",): (("q",),), ("q",): ()}
    assert verify_d_squared(d)


def test_lens_differentials_vanish():
    for e in range(1, 7):
        diff = differential(lens_diagram(e))
        assert all(v == () for v in diff.values())


def test_finger_differentials():
    assert differential(lens_finger_diagram(1)) == {
        ("p0",): (), ("u",): (), ("v",): (("u",),)}
    assert differential(lens_finger_diagram(2)) == {
        ("p0",): (("u",),), ("p1",): (), ("u",): (), ("v",): (("u",),)}


def test_differential_refuses_non_nice_diagram():
    with pytest.raises(DiagramError,
                       match="differential needs a nice diagram"):
        differential(genus2_tube_diagram())


def test_essential_circle_homology_vanishes():
    table = homology(essential_circle_diagram())
    assert table.grand_total == 0
    assert len(table.classes) == 1
    assert table.classes[0]["total"] == 0


def test_lens_homology_tables():
    for e in range(1, 7):
        table = homology(lens_diagram(e))
        assert table.grand_total == e
        totals = [cls["total"] for cls in table.classes]
        assert totals == [1] * e
        for cls in table.classes:
            assert (cls["delta_a"], cls["delta_m"]) == (0, 0)
            assert [r for _, _, r in cls["entries"] if r] == [1]


def test_finger_homology_matches_lens():
    for e in range(1, 4):
        finger = homology(lens_finger_diagram(e))
        plain = homology(lens_diagram(e))
        assert finger.grand_total == plain.grand_total
        assert sorted(c["total"] for c in finger.classes) \
            == sorted(c["total"] for c in plain.classes)


def test_rank_table_as_dict_is_json_ready():
    import json
    table = homology(lens_diagram(2))
    assert json.loads(json.dumps(table.as_dict())) == table.as_dict()

"""Structure classes: the generator partition and the relative gradings."""

import pytest

from hfk.builders import (
    essential_circle_diagram,
    genus2_tube_diagram,
    lens_diagram,
    lens_finger_diagram,
)
from hfk.spinc import (
    epsilon_class,
    grading_moduli,
    label_shift_pdk,
    partition,
    relative_gradings,
)


def test_lens_partition_is_singletons():
    for e in range(1, 7):
        part = partition(lens_diagram(e))
        assert len(part) == e
        assert all(len(cls["generators"]) == 1 for cls in part)


def test_essential_circle_partition_is_one_class():
    part = partition(essential_circle_diagram())
    assert len(part) == 1
    assert part[0]["generators"] == [("p",), ("q",)]


def test_finger_partition_merges_the_cancelling_pair():
    # u and v sit in the class of p0; the other base points stay alone.
    part = partition(lens_finger_diagram(2))
    sizes = sorted(len(cls["generators"]) for cls in part)
    assert sizes == [1, 3]
    big = max(part, key=lambda cls: len(cls["generators"]))
    assert big["generators"] == [("p0",), ("u",), ("v",)]


def test_tube_partition_is_one_class_of_four():
    part = partition(genus2_tube_diagram())
    assert len(part) == 1
    assert part[0]["generators"] == [
        ("u1", "v1"), ("u1", "v2"), ("u2", "v1"), ("u2", "v2")]


def test_epsilon_is_additive_and_antisymmetric():
    d = lens_finger_diagram(3)
    gens = [("p0",), ("u",), ("v",)]
    for x in gens:
        for y in gens:
            exy = epsilon_class(d, x, y)
            assert epsilon_class(d, y, x) == tuple(
                -c % m if m else -c
                for c, m in zip(exy, (0, 3)))
            for z in gens:
                lhs = tuple(
                    (a + b) % m if m else a + b
                    for a, b, m in zip(exy, epsilon_class(d, y, z), (0, 3)))
                assert lhs == epsilon_class(d, x, z)


def test_label_shift_values():
    assert label_shift_pdk(essential_circle_diagram()) == (0, -1)
    assert label_shift_pdk(lens_diagram(3)) == (0, 2)
    assert label_shift_pdk(lens_diagram(4)) == (0, 3)
    assert label_shift_pdk(lens_finger_diagram(2)) == (0, 1)
    assert label_shift_pdk(genus2_tube_diagram()) == (0, 0, 1, -1)


def test_grading_moduli():
    # The essential circle and the tube carry a periodic domain crossing w
    # once, so the Alexander grading collapses and the Maslov grading works
    # modulo two.  Lens diagrams have honest relative Z-gradings.
    assert grading_moduli(essential_circle_diagram(), ("p",)) == (1, 2)
    assert grading_moduli(lens_diagram(3), ("p0",)) == (0, 0)
    assert grading_moduli(genus2_tube_diagram(), ("u1", "v1")) == (1, 2)


def test_relative_gradings_of_finger_pair():
    # The finger's cancelling pair differs by a bigon: Alexander equal,
    # Maslov one apart.
    classes = relative_gradings(lens_finger_diagram(2))
    by_key = {cls["key"]: cls for cls in classes}
    offsets = by_key[(0, 0)]["offsets"]
    assert offsets[("p0",)] == (0, 0)
    assert offsets[("u",)] == (0, -1)
    assert offsets[("v",)] == (0, 0)
    assert by_key[(0, 1)]["offsets"] == {("p1",): (0, 0)}


def test_relative_gradings_of_essential_circle():
    classes = relative_gradings(essential_circle_diagram())
    assert len(classes) == 1
    cls = classes[0]
    assert (cls["delta_a"], cls["delta_m"]) == (1, 2)
    assert cls["offsets"] == {("p",): (0, 0), ("q",): (0, 1)}

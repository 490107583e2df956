"""Floor-decomposition engine: diagram enumeration, markings, refined counts."""

import pytest
from hypothesis import given, settings, strategies as st

from refinedcount.floors import (
    FloorDiagram,
    UnsupportedDegreeError,
    classify_family,
    compute_G_floor,
    enumerate_diagrams,
    markings_count,
    refined_multiplicity,
)
from refinedcount.geometry import (
    BalancedDegree,
    genus_max,
    p1xp1_degree,
    p2_degree,
    parse_degree,
)
from refinedcount.laurent import RefinedPoly, quantum_integer
from oracles import markings_count_brute, poset_size


def test_classify_family():
    assert classify_family(p2_degree(3)) == ("P2", 3)
    assert classify_family(p1xp1_degree(2, 3)) == ("P1xP1", (2, 3))
    assert classify_family(BalancedDegree([(2, 0), (0, 2), (-2, -2)])) is None
    assert classify_family(parse_degree("polygon:(0,0),(2,1),(0,2)")) is None


def test_unsupported_degree_raises():
    skew = parse_degree("polygon:(0,0),(2,1),(0,2)")
    with pytest.raises(UnsupportedDegreeError):
        enumerate_diagrams(skew, 0)
    with pytest.raises(UnsupportedDegreeError):
        compute_G_floor(skew, 0)


def test_cubic_rational_diagrams():
    diagrams = enumerate_diagrams(p2_degree(3), 0)
    assert len(diagrams) == 3
    assert sorted(markings_count(D) for D in diagrams) == [1, 3, 5]
    for D in diagrams:
        assert D.genus() == 0
        assert D.family == "P2"
        assert D.n_floors == 3
    total = RefinedPoly.zero()
    for D in diagrams:
        total = total + refined_multiplicity(D) * markings_count(D)
    assert total == RefinedPoly({1: 1, 0: 10, -1: 1})


def test_enumeration_is_deterministic_and_sorted():
    diagrams = enumerate_diagrams(p2_degree(4), 1)
    assert len(diagrams) == 13
    keys = [(D.elevators, D.infinite_down, D.infinite_up) for D in diagrams]
    assert keys == sorted(keys)
    assert diagrams == enumerate_diagrams(p2_degree(4), 1)


def test_refined_multiplicity_is_square_of_elevator_weights():
    for D in enumerate_diagrams(p2_degree(4), 1):
        expected = RefinedPoly.one()
        for _, _, w in D.elevators:
            expected = expected * quantum_integer(w) ** 2
        assert refined_multiplicity(D) == expected


def test_exact_counts_projective_plane():
    assert compute_G_floor(p2_degree(3), 0) == RefinedPoly({1: 1, 0: 10, -1: 1})
    assert compute_G_floor(p2_degree(3), 1) == RefinedPoly.one()
    assert compute_G_floor(p2_degree(4), 2) == RefinedPoly({1: 3, 0: 21, -1: 3})
    assert compute_G_floor(p2_degree(4), 1) == RefinedPoly(
        {2: 3, 1: 33, 0: 153, -1: 33, -2: 3}
    )
    assert compute_G_floor(p2_degree(4), 0) == RefinedPoly(
        {3: 1, 2: 13, 1: 94, 0: 404, -1: 94, -2: 13, -3: 1}
    )


def test_exact_counts_quadric():
    assert compute_G_floor(p1xp1_degree(2, 2), 0) == RefinedPoly({1: 1, 0: 10, -1: 1})
    assert compute_G_floor(p1xp1_degree(2, 2), 1) == RefinedPoly.one()


def test_evaluations():
    g03 = compute_G_floor(p2_degree(3), 0)
    assert (g03.evaluate(1), g03.evaluate(-1)) == (12, 8)
    g04 = compute_G_floor(p2_degree(4), 0)
    assert (g04.evaluate(1), g04.evaluate(-1)) == (620, 240)
    assert compute_G_floor(p2_degree(5), 0).evaluate(1) == 87304
    assert compute_G_floor(p2_degree(5), 1).evaluate(1) == 87192


def test_degenerate_and_top_genus():
    for deg in (p2_degree(1), p2_degree(2), p1xp1_degree(1, 1)):
        assert compute_G_floor(deg, 0) == RefinedPoly.one()
    for deg in (p2_degree(3), p2_degree(4), p1xp1_degree(2, 2)):
        gmax = genus_max(deg)
        assert compute_G_floor(deg, gmax) == RefinedPoly.one()
        assert compute_G_floor(deg, gmax + 1) == RefinedPoly.zero()
        assert enumerate_diagrams(deg, gmax + 1) == []


def test_genus_is_elevator_surplus():
    for g in (0, 1, 2):
        for D in enumerate_diagrams(p1xp1_degree(2, 2), g):
            assert D.genus() == g
            assert markings_count(D) >= 1


def test_markings_count_matches_brute_force():
    checked = 0
    for deg in (p2_degree(2), p2_degree(3), p1xp1_degree(1, 2), p1xp1_degree(2, 2)):
        for g in range(genus_max(deg) + 1):
            for D in enumerate_diagrams(deg, g):
                if poset_size(D) <= 9:
                    assert markings_count(D) == markings_count_brute(D)
                    checked += 1
    assert checked >= 10


def test_diagram_json_obj():
    D = enumerate_diagrams(p2_degree(2), 0)[0]
    obj = D.to_json_obj()
    assert obj["family"] == "P2"
    assert obj["floors"] == 2
    assert all(set(e) == {"lower", "upper", "weight"} for e in obj["elevators"])
    assert len(obj["infinite_down"]) == 2

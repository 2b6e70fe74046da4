from collections import Counter
from fractions import Fraction

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from arcop.arcgraph import (
    ArcGraph,
    GapGraph,
    WeightedArcGraph,
    ambient_genus,
    are_parallel,
    enumerate_graphs,
    enumeration_estimate,
    euler_characteristic,
    euler_defect,
    face_trace,
    from_sequence,
    is_cgtree,
    is_gtree,
    is_lgtree,
    is_quasi_filling,
    is_twisted_at,
    is_untwisted,
    iter_graphs,
    parallel_pairs,
    relabel,
    seq,
    validate,
)
from arcop.errors import EnumerationTooLarge, InvalidGraphError
from arcop.glue import twist
from arcop.stabilize import G_GRAPH, H_GRAPH


def test_twist_graph_fixture():
    t = twist(Fraction(1, 3)).graph
    assert t.arity == 1 and t.arc_count == 2
    assert euler_defect(t) == 0 and is_quasi_filling(t)
    assert is_twisted_at(t, 0) and is_twisted_at(t, 1)
    assert not is_lgtree(t)
    assert is_cgtree(t)


def test_defect_generators():
    assert euler_defect(G_GRAPH) == -2 and ambient_genus(G_GRAPH) == 1
    assert euler_defect(H_GRAPH) == -1 and ambient_genus(H_GRAPH) == 1


def test_bad_pairing_is_rejected():
    with pytest.raises(InvalidGraphError):
        ArcGraph((((1, 0),), ((0, 1),)), ((0,), (0,)), (0,))


def test_orbit_split_across_regions_is_rejected():
    # the two arcs of the cylinder bound one hexagonal orbit; giving it two labels is invalid
    with pytest.raises(InvalidGraphError):
        ArcGraph((((1, 0), (1, 1)), ((0, 0), (0, 1))), ((0, 0), (1, 1)), (0, 0))


def test_parallel_arcs_detected():
    g = from_sequence((1, 1))
    assert parallel_pairs(g)
    assert are_parallel(g, 0, 1)
    with pytest.raises(InvalidGraphError):
        validate(g)
    validate(g, allow_parallel=True)
    # a positive gap between them makes the pair admissible
    GapGraph(g, (1, 1), (1, 0), 0)
    with pytest.raises(InvalidGraphError):
        GapGraph(g, (1, 1), (0, 0), 0)


def test_sequence_graphs():
    for s in [(1,), (1, 2), (2, 1), (1, 2, 1), (1, 2, 1, 2), (1, 2, 3, 2, 1)]:
        g = from_sequence(s)
        assert seq(g) == s
        assert is_gtree(g) and is_lgtree(g) and is_quasi_filling(g)
        assert g.arc_count == len(s)


def test_cup_genus():
    # the alternating sequence of length i + 2 lives on a surface of genus i // 2
    for i in range(7):
        s = tuple(1 + k % 2 for k in range(i + 2))
        assert ambient_genus(from_sequence(s)) == i // 2


def test_small_enumeration_counts():
    assert [len(enumerate_graphs(1, k, genus=0, max_genus=0)) for k in (1, 2, 3)] == [1, 2, 2]
    counts = Counter(g.arc_count for g in enumerate_graphs(1, 7, genus=1, max_genus=1))
    assert counts == Counter({1: 1, 2: 5, 3: 10, 4: 14, 5: 13, 6: 5})


def test_enumeration_has_no_duplicates_and_respects_filters():
    found = enumerate_graphs(2, 4, max_genus=1)
    assert len(found) == len(set(found))
    for g in found:
        assert is_gtree(g) and not parallel_pairs(g)
    lg = set(enumerate_graphs(2, 4, max_genus=1, lgtree=True))
    assert lg == {g for g in found if is_lgtree(g)}
    qf = set(enumerate_graphs(2, 4, max_genus=1, quasi_filling=True))
    assert qf == {g for g in found if is_quasi_filling(g)}
    ut = set(enumerate_graphs(2, 4, max_genus=1, untwisted=True))
    assert ut == {g for g in found if is_untwisted(g)}


def test_enumeration_guard():
    assert enumeration_estimate(2, 3) == 4 * 2 + 8 * 6  # from k = n arcs upwards
    with pytest.raises(EnumerationTooLarge):
        enumerate_graphs(3, 9)
    with pytest.raises(EnumerationTooLarge):
        next(iter_graphs(3, 9))


def test_euler_characteristic_sum():
    # the regions cut the surface along the arcs, so their chi add up to chi(S) + #arcs
    for g in enumerate_graphs(3, 4, max_genus=1):
        total = sum(g.region_chi(r) for r in range(g.region_count))
        assert total == euler_characteristic(g) + g.arc_count
        assert euler_characteristic(g) == 2 - 2 * ambient_genus(g) - g.boundary_count


def test_face_trace_visits_every_corner_once():
    # the marked corner is the last corner of its window, so corners and slots match
    for n in (1, 2, 3):
        for g in enumerate_graphs(n, 4, max_genus=1):
            corners = [c for orbit in face_trace(g) for c in orbit]
            assert len(corners) == len(set(corners)) == sum(len(row) for row in g.partner)


def test_weighted_normalization():
    w = WeightedArcGraph(from_sequence((1, 2)), (2, 6))
    assert w.normalized().weights == (Fraction(1, 4), Fraction(3, 4))
    with pytest.raises(InvalidGraphError):
        WeightedArcGraph(from_sequence((1, 2)), (1, 0))


_POOL = enumerate_graphs(3, 4, max_genus=1)


@settings(max_examples=80, deadline=None)
@given(st.sampled_from(_POOL), st.permutations([1, 2, 3]))
def test_relabel_round_trip(g, perm):
    perm = tuple(perm[: g.arity]) if g.arity == 3 else tuple(range(1, g.arity + 1))
    h = relabel(g, perm)
    inverse = tuple(perm.index(k) + 1 for k in range(1, g.arity + 1))
    back = relabel(h, inverse)
    assert back == g
    assert euler_defect(h) == euler_defect(g) and ambient_genus(h) == ambient_genus(g)


@settings(max_examples=80, deadline=None)
@given(st.sampled_from(_POOL))
def test_tree_classes_nest(g):
    if is_lgtree(g):
        assert is_cgtree(g)
    assert ambient_genus(g) >= 0 and euler_defect(g) <= 0


def test_odd_cup_cells_are_twisted_at_zero():
    from arcop.cells import cup

    for i in range(6):
        assert is_twisted_at(cup(i).graph, 0) == (i % 2 == 1)
        assert not is_twisted_at(cup(i).graph, 2)

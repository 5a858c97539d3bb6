"""Diagrams: PD conversion, braids, structural operations and the knot table."""

import random

import pytest
from hypothesis import given, strategies as st

from knottheta.algebra import T
from knottheta.diagram import (Crossing, Diagram, MultiComponent, NonPlanar, PDFormatError,
                               braid_closure, closure_is_knot, connected_sum,
                               crossing_change_mirror, face_count, format_pd, from_pd, get_knot,
                               knots_up_to, ks_virtual, load_table, make_diagram, mirror,
                               orient, parse_pd, random_diagram, relabel, reverse, torus_knot,
                               trefoil, unknot, validate)
from knottheta.invariant import alexander

TREFOIL_PD = "PD[X[1,5,2,4], X[3,1,4,6], X[5,3,6,2]]"
diagrams = st.builds(random_diagram, st.integers(0, 10 ** 6), st.integers(0, 8))


def test_parse_pd_formats():
    pd = [(1, 5, 2, 4), (3, 1, 4, 6), (5, 3, 6, 2)]
    assert parse_pd(TREFOIL_PD) == pd
    assert parse_pd("[[1,5,2,4],[3,1,4,6],[5,3,6,2]]") == pd
    assert parse_pd(format_pd(pd)) == pd


@pytest.mark.parametrize("text", ["X[1,2,3]", "X[1,2,a,4]", "X[1,2,2,1] 7"])
def test_parse_pd_rejects_malformed(text):
    with pytest.raises(PDFormatError):
        parse_pd(text)


def test_labels_must_appear_twice():
    with pytest.raises(PDFormatError):
        from_pd([[1, 2, 3, 4]])


def test_links_are_rejected():
    with pytest.raises(MultiComponent):
        from_pd([[4, 1, 3, 2], [2, 3, 1, 4]])
    with pytest.raises(MultiComponent):
        braid_closure([1, 1], 2)


def test_non_planar_codes_are_rejected():
    pd = [(1, 2, 3, 4), (2, 3, 1, 4)]
    assert face_count(pd) == 2
    with pytest.raises(NonPlanar):
        from_pd(pd)


def test_trefoil_pd_gives_three_positive_crossings():
    d = from_pd(parse_pd(TREFOIL_PD))
    assert validate(d) == []
    assert d.edges == list(range(1, 8))
    assert sorted(c.sign for c in d.crossings) == [1, 1, 1]
    assert alexander(d) == T() ** -1 - 1 + T()


@pytest.mark.parametrize("pd, sign", [([[1, 1, 2, 2]], 1), ([[1, 2, 2, 1]], -1),
                                      ([[2, 2, 1, 1]], 1), ([[2, 1, 1, 2]], -1)])
def test_one_crossing_kinks(pd, sign):
    d = from_pd(pd)
    assert validate(d) == []
    assert [c.sign for c in d.crossings] == [sign]
    assert alexander(d) == 1


def test_orient_relabels_along_the_knot():
    # start the walk elsewhere: labels get shifted but the code stays valid
    pd = orient([(1, 5, 2, 4), (3, 1, 4, 6), (5, 3, 6, 2)], start=3)
    assert sorted(x for rec in pd for x in rec) == sorted(list(range(1, 7)) * 2)
    for a, _, c, _ in pd:
        assert c % 6 == (a + 1) % 6


def test_named_examples_are_valid():
    for d in (trefoil(), ks_virtual(), unknot(), torus_knot(22, 7)):
        assert validate(d) == []
    assert trefoil().rot == {4: -1}
    assert torus_knot(22, 7).n_crossings == 132


def test_braid_closure_counts_and_errors():
    assert torus_knot(3, 2).n_crossings == 3
    assert closure_is_knot([1, 2], 3) and not closure_is_knot([1], 3)
    with pytest.raises(ValueError):
        braid_closure([3], 3)
    with pytest.raises(ValueError):
        braid_closure([0], 2)


def test_braid_and_pd_trefoils_agree():
    assert alexander(braid_closure([1, 1, 1], 2)) == alexander(from_pd(parse_pd(TREFOIL_PD)))
    assert alexander(braid_closure([1, -2, 1, -2], 3)) == -T() ** -1 + 3 - T()


@given(diagrams)
def test_random_diagrams_are_valid(d):
    assert validate(d) == []
    assert len(d.edges) == 2 * d.n_crossings + 1


@given(diagrams)
def test_mirror_and_reverse_are_involutions(d):
    assert mirror(mirror(d)).isomorphic(d)
    assert reverse(reverse(d)).isomorphic(d)
    assert crossing_change_mirror(crossing_change_mirror(d)).isomorphic(d)
    assert validate(reverse(d)) == [] and validate(mirror(d)) == []


@given(diagrams, diagrams)
def test_connected_sum_is_valid_and_adds_crossings(a, b):
    s = connected_sum(a, b)
    assert validate(s) == []
    assert s.n_crossings == a.n_crossings + b.n_crossings
    assert s.writhe == a.writhe + b.writhe
    assert alexander(s) == alexander(a) * alexander(b)


@given(diagrams)
def test_json_round_trip_and_relabel(d):
    assert Diagram.from_json(d.to_json()) == d
    shuffled = list(d.edges)
    random.Random(len(shuffled)).shuffle(shuffled)
    r = relabel(d, {e: 100 + s for e, s in zip(d.edges, shuffled)})
    assert validate(r) == [] and r.isomorphic(d)


def test_validate_reports_problems():
    d = make_diagram([(1, 1, 4), (1, 5, 2), (1, 3, 6)])
    assert validate(d) == []
    bad = make_diagram([(1, 1, 4), (1, 4, 2), (1, 3, 6)])
    assert any("two events" in e for e in validate(bad))
    bad = make_diagram([(1, 1, 7), (1, 5, 2), (1, 3, 6)])
    assert any("final edge" in e for e in validate(bad))
    bad = make_diagram([(1, 1, 9), (1, 5, 2), (1, 3, 6)])
    assert any("dangling" in e for e in validate(bad))
    bad = make_diagram([(1, 1, 4), (1, 5, 2), (1, 3, 6)], {12: 1})
    assert any("rotation" in e for e in validate(bad))
    with pytest.raises(ValueError):
        Crossing(0, 1, 2)


def test_bundled_table_contents():
    table = load_table()
    names = [r.name for r in table]
    assert len(names) == len(set(names)) == 252
    assert len(knots_up_to(10)) == 250
    assert sum(1 for r in table if r.crossings == 10) == 165
    assert get_knot("11n34") is get_knot("11n_34")
    with pytest.raises(KeyError):
        get_knot("GST48")


def test_every_table_knot_converts_with_knotinfo_alexander(conway_reference):
    z2 = T() - 2 + T() ** -1
    for rec in load_table():
        d = rec.diagram()
        assert validate(d) == [], rec.name
        assert d.n_crossings == rec.crossings
        want = sum((c * z2 ** (n // 2) for n, c in conway_reference[rec.name]), 0 * T())
        assert alexander(d) == want, rec.name

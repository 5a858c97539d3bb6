"""Upright Reidemeister moves: validity, reversibility and invariance of theta."""

import random

import pytest
from hypothesis import given, settings, strategies as st

from knottheta.diagram import (KINDS, Move, PatternMismatch, apply_move, build_r3_site,
                               inverse_sites, r3_sites, random_diagram, random_forward_move,
                               trefoil, validate)
from knottheta.invariant import alexander_parts, theta, tilde_g

FORWARD = ("NV+", "R1l", "R1r", "R2b", "R2c", "Sw")
seeds = st.integers(0, 10 ** 6)


def theta_of(d):
    return theta(d, classical=False).theta


@settings(max_examples=60, deadline=None)
@given(seeds, st.integers(0, 6), st.sampled_from(FORWARD))
def test_forward_moves_preserve_theta(seed, size, kind):
    rng = random.Random(seed)
    d = random_diagram(seed, size)
    if kind == "Sw" and not d.crossings:
        return
    m = random_forward_move(d, rng, (kind,))
    d2 = apply_move(d, m)
    assert validate(d2) == []
    assert theta_of(d2) == theta_of(d)
    # Delta itself may pick up a half-integer power; det^2 T^(-phi-w) may not change
    det, e2 = alexander_parts(d)
    det2, e22 = alexander_parts(d2)
    assert det * det * type(det).monomial(e2) == det2 * det2 * type(det2).monomial(e22)


@settings(max_examples=40, deadline=None)
@given(seeds, st.integers(0, 5), st.sampled_from(("NV+", "R1l", "R1r", "R2b", "R2c")))
def test_forward_moves_are_undone_by_an_inverse_site(seed, size, kind):
    rng = random.Random(seed)
    d = random_diagram(seed, size)
    d2 = apply_move(d, random_forward_move(d, rng, (kind,)))
    undone = [apply_move(d2, m) for m in inverse_sites(d2)]
    assert any(u.isomorphic(d) for u in undone)


@settings(max_examples=30, deadline=None)
@given(seeds, st.integers(0, 5))
def test_r3_is_an_involution_and_preserves_theta(seed, size):
    rng = random.Random(seed)
    d = random_diagram(seed, size)
    d3, moves = build_r3_site(d, rng)
    r3 = moves[-1]
    assert r3.kind == "R3b" and r3 in r3_sites(d3)
    d4 = apply_move(d3, r3)
    assert validate(d4) == []
    assert apply_move(d4, r3).isomorphic(d3)
    assert theta_of(d4) == theta_of(d3) == theta_of(d)


def test_every_kind_is_reachable():
    assert set(KINDS) == {"NV+", "NV-", "R1l", "R1r", "R1-", "R2b", "R2b-", "R2c", "R2c-",
                          "R3b", "Sw"}
    with pytest.raises(ValueError):
        Move("R4", (1,))


def test_bad_sites_raise_pattern_mismatch():
    d = trefoil()
    with pytest.raises(PatternMismatch):
        apply_move(d, Move("R1-", (1,)))
    with pytest.raises(PatternMismatch):
        apply_move(d, Move("R3b", (1, 2, 3)))
    with pytest.raises(PatternMismatch):
        apply_move(d, Move("Sw", (2, 1)))
    with pytest.raises(PatternMismatch):
        apply_move(d, Move("NV-", (1, 2)))
    with pytest.raises(PatternMismatch):
        apply_move(d, Move("NV+", (99,)))


def test_swirl_moves_rotation_and_keeps_theta():
    d = trefoil()
    d2 = apply_move(d, Move("Sw", (1, 4), {"eps": 1}))
    assert d2.rot != d.rot and d2.total_rotation == d.total_rotation
    assert theta_of(d2) == theta_of(d)


def test_r1_kinks_change_writhe_and_keep_theta():
    d = trefoil()
    left = apply_move(d, Move("R1l", (3,), {"over_first": True}))
    right = apply_move(d, Move("R1r", (3,), {"over_first": False}))
    for k in (left, right):
        assert k.n_crossings == 4
        assert abs(k.writhe - d.writhe) == 1
        assert theta_of(k) == theta_of(d)


def test_marks_travel_with_moves_and_block_deletion():
    d = trefoil()
    d.marks = {2: ["p"], 6: ["q"]}
    before = tilde_g(d, "p", "q")
    d2 = apply_move(d, Move("R2b", (2, 6), {"sign": 1, "a_over": True, "at_a": 1, "at_b": 0}))
    assert sorted(n for names in d2.marks.values() for n in names) == ["p", "q"]
    assert tilde_g(d2, "p", "q") == before
    for m in inverse_sites(d2):
        try:
            back = apply_move(d2, m)
        except PatternMismatch:
            continue
        assert sorted(n for names in back.marks.values() for n in names) == ["p", "q"]

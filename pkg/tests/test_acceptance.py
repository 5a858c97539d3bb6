"""One test per acceptance criterion; the summary prints a PASS/FAIL line for each."""

import pathlib
import random
import subprocess
import sys
import time
from fractions import Fraction

import pytest

from knottheta.algebra import LaurentPoly2, RatFunc1, T, parse_laurent2, substitute_T
from knottheta.checks import move_fuzz, relative_invariance_fuzz
from knottheta.diagram import (connected_sum, get_knot, knots_up_to, ks_virtual, make_diagram,
                               mirror, reverse, torus_knot)
from knottheta.invariant import (build_matrix, fibered_multiplier, genus_bound_holds, green,
                                 hexagonal_symmetric, residue_oracle, t1_degree,
                                 telescoping_check, theta, theta_numeric)
from knottheta.render import hex_cells, hex_position, hexqr

POINT = (Fraction(22, 7), Fraction(21, 13))
GST48_FILE = pathlib.Path(__file__).parent / "data" / "GST48.pd"


@pytest.fixture(scope="module")
def table():
    """theta of every bundled knot with at most 10 crossings, with the total time."""
    records = [r for r in knots_up_to(10) if r.crossings > 0]
    start = time.perf_counter()
    results = {r.name: theta(r.diagram()) for r in records}
    return records, results, time.perf_counter() - start


def test_c01_trefoil_matrices():
    """A and G of the sample trefoil match the printed matrices exactly, in < 10 ms."""
    d = make_diagram([(1, 1, 4), (1, 5, 2), (1, 3, 6)], {4: -1})
    q = 1 / RatFunc1(T() ** 2 - T() + 1)
    t = T()
    a_rows = [[1, -t, 0, 0, t - 1, 0, 0], [0, 1, -1, 0, 0, 0, 0], [0, 0, 1, -t, 0, 0, t - 1],
              [0, 0, 0, 1, -1, 0, 0], [0, 0, t - 1, 0, 1, -t, 0], [0, 0, 0, 0, 0, 1, -1],
              [0, 0, 0, 0, 0, 0, 1]]
    g_rows = [[1, t, 1, t, 1, t, 1],
              [0, 1, q, t * q, t * q, t ** 2 * q, 1],
              [0, 0, q, t * q, t * q, t ** 2 * q, 1],
              [0, 0, (1 - t) * q, q, q, t * q, 1],
              [0, 0, (1 - t) * q, (t - t ** 2) * q, q, t * q, 1],
              [0, 0, 0, 0, 0, 1, 1],
              [0, 0, 0, 0, 0, 0, 1]]
    a, g = build_matrix(d), green(d)
    for r in range(7):
        for c in range(7):
            assert a[r + 1, c + 1] == RatFunc1(a_rows[r][c])
            assert g.g(r + 1, c + 1) == RatFunc1(g_rows[r][c])
    best = min(_timed(lambda: green(d)) for _ in range(5))
    assert best < 0.010, f"{best * 1000:.1f} ms"


def _timed(f):
    start = time.perf_counter()
    f()
    return time.perf_counter() - start


def test_c02_alexander_values(table):
    """Delta(3_1) = T^-1 - 1 + T, Delta(11n34) = Delta(11n42) = 1, Delta symmetric on the table."""
    records, results, _ = table
    assert results["3_1"].delta == T() ** -1 - 1 + T()
    assert theta(get_knot("11n34").diagram()).delta == 1
    assert theta(get_knot("11n42").diagram()).delta == 1
    bad = [n for n, r in results.items() if r.delta != r.delta.inverse_variable()]
    assert not bad
    assert len(results) == 249


def test_c03_polynomiality(table):
    """theta divides exactly with integer coefficients on all 249 knots, total < 5 min."""
    records, results, seconds = table
    assert len(records) == 249
    assert all(r.theta.is_integral() for r in results.values())
    assert seconds < 300, f"{seconds:.1f} s"


def test_c04_invariance_fuzz():
    """1000 seeded upright moves keep theta; tilde g survives 200 moves with marks."""
    moves = move_fuzz(seed=2024, count=1000, max_crossings=12)
    assert moves.ok, moves.failures[:5]
    assert moves.total == 1000
    marks = relative_invariance_fuzz(seed=2024, count=200)
    assert marks.ok, marks.failures[:5]
    assert marks.total == 200


def test_c05_residue_identities():
    """The residue vanishes and telescopes term by term on all knots <= 9 crossings."""
    bad = []
    for rec in knots_up_to(9):
        d = rec.diagram()
        g = green(d)
        if not residue_oracle(d, g).is_zero() or telescoping_check(d, g):
            bad.append(rec.name)
    assert not bad


def test_c06_mutant_separation():
    """theta separates the Conway and Kinoshita-Terasaka knots, whose Delta agree."""
    a = theta(get_knot("11n34").diagram())
    b = theta(get_knot("11n42").diagram())
    assert a.delta == b.delta == 1
    assert a.theta != b.theta


def test_c07_genus_bound(table):
    """deg_T1 theta <= 2 genus on the table; GST48 gives the genus bound 10."""
    records, results, _ = table
    extra = [get_knot("11n34"), get_knot("11n42")]
    checked = 0
    for rec in records + extra:
        th = results[rec.name].theta if rec.name in results else theta(rec.diagram()).theta
        if rec.genus is not None:
            assert genus_bound_holds(th, rec.genus), rec.name
            checked += 1
    assert checked == 251
    # The GST48 diagram is not available to this package; see the README.
    assert GST48_FILE.exists(), "GST48 diagram data is not available"
    from knottheta.diagram import from_pd, parse_pd
    d = from_pd(parse_pd(GST48_FILE.read_text()))
    start = time.perf_counter()
    theta_numeric(d, *POINT)
    assert time.perf_counter() - start < 30
    start = time.perf_counter()
    th = theta(d).theta
    assert time.perf_counter() - start < 600
    assert -(-t1_degree(th) // 2) == 10


def test_c08_fibered_criterion(table):
    """Fibered knots pass the T2^(2d) criterion; >= 90% of non-fibered knots fail it."""
    records, results, _ = table
    fibered = [r for r in records if r.fibered]
    nonfibered = [r for r in records if r.fibered is False]
    fails_on_fibered = [r.name for r in fibered
                        if fibered_multiplier(results[r.name].delta, results[r.name].theta) is None]
    assert not fails_on_fibered
    caught = sum(fibered_multiplier(results[r.name].delta, results[r.name].theta) is None
                 for r in nonfibered)
    assert caught >= 0.9 * len(nonfibered), f"{caught} of {len(nonfibered)}"


def test_c09_conjectured_symmetries(table):
    """Hexagonal symmetry, theta(mirror) = -theta and theta(reverse) = theta on the table."""
    records, results, _ = table
    bad = []
    for rec in records:
        th = results[rec.name].theta
        d = rec.diagram()
        if (not all(hexagonal_symmetric(th).values()) or theta(mirror(d)).theta != -th
                or theta(reverse(d)).theta != th):
            bad.append(rec.name)
    assert not bad


def test_c10_virtual_negative_control():
    """theta of the rotational virtual KS diagram computes but is not hexagonally symmetric."""
    r = theta(ks_virtual(), classical=False)
    assert not r.theta.is_zero()
    assert not all(hexagonal_symmetric(r.theta).values())


def test_c11_connected_sum():
    """theta0 is additive under connected sum for 20 random pairs from the table."""
    rng = random.Random(11)
    pool = [r for r in knots_up_to(8) if r.crossings > 0]

    def parts(d):
        r = theta(d)
        dd = (substitute_T(r.delta, "T1") * substitute_T(r.delta, "T2")
              * substitute_T(r.delta, "T1T2"))
        return r.theta, dd

    for _ in range(20):
        a, b = rng.sample(pool, 2)
        ta, da = parts(a.diagram())
        tb, db = parts(b.diagram())
        ts, ds = parts(connected_sum(a.diagram(), b.diagram()))
        # theta0 = theta / (Delta1 Delta2 Delta3) and the Deltas multiply
        assert ds == da * db
        assert ts == ta * db + tb * da, (a.name, b.name)


def test_c12_mode_agreement(table):
    """theta_numeric at (22/7, 21/13) equals symbolic theta there on the whole table."""
    records, results, _ = table
    bad = [r.name for r in records
           if theta_numeric(r.diagram(), *POINT) != (results[r.name].delta(POINT[0]),
                                                      results[r.name].theta(*POINT))]
    assert not bad


def test_c13_performance_envelope():
    """The 132-crossing torus knot T(22,7): symbolic < 10 min, numeric < 60 s, consistent."""
    d = torus_knot(22, 7)
    assert d.n_crossings == 132
    start = time.perf_counter()
    delta, value = theta_numeric(d, *POINT)
    numeric = time.perf_counter() - start
    start = time.perf_counter()
    r = theta(d)
    symbolic = time.perf_counter() - start
    print(f"T(22,7): symbolic {symbolic:.1f} s, numeric {numeric:.1f} s")
    assert numeric < 60 and symbolic < 600
    assert r.theta(*POINT) == value and r.delta(POINT[0]) == delta
    assert all(hexagonal_symmetric(r.theta).values())


def test_c14_rendering_golden():
    """The 7-term example renders as a sheared 7-cell hexagon, byte-identical across runs."""
    p = parse_laurent2("2 + T1 - T1 T2 + T2 - T1^-1 + T1^-1 T2^-1 - T2^-1")
    colored = [c for c in hex_cells(p) if c.hue != "white"]
    want = {hex_position(n1, n2) for n1, n2 in p.terms()}
    assert len(colored) == 7 and {c.position for c in colored} == want
    assert hex_position(1, 1) == (0.5, 3 ** 0.5 / 2)
    script = ("from knottheta.algebra import parse_laurent2; from knottheta.render import hexqr;"
              "import sys; sys.stdout.write(hexqr(parse_laurent2("
              "'2 + T1 - T1 T2 + T2 - T1^-1 + T1^-1 T2^-1 - T2^-1')))")
    runs = {subprocess.run([sys.executable, "-c", script], capture_output=True,
                           check=True).stdout for _ in range(2)}
    assert runs == {hexqr(p).encode()}

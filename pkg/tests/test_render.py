"""Bar codes, hexagonal QR codes and cards."""

import math
import xml.etree.ElementTree as ET

from hypothesis import given, strategies as st

from knottheta.algebra import LaurentPoly1, LaurentPoly2, T, parse_laurent2
from knottheta.diagram import trefoil, unknot
from knottheta.invariant import theta
from knottheta.render import (ColorCell, barcode, barcode_cells, card_boxes, hex_cells,
                              hex_position, hexqr, theta_card)

SVG = "{http://www.w3.org/2000/svg}"
HEX_EXAMPLE = parse_laurent2("2 + T1 - T1 T2 + T2 - T1^-1 + T1^-1 T2^-1 - T2^-1")
poly2 = st.dictionaries(st.tuples(st.integers(-3, 3), st.integers(-3, 3)),
                        st.integers(-9, 9), max_size=8).map(LaurentPoly2)


def rects(svg):
    root = ET.fromstring(svg)
    return [r.attrib for r in root.iter(SVG + "rect")][1:]  # skip the background


def test_trefoil_barcode_is_red_blue_red():
    cells = barcode_cells(T() ** -1 - 1 + T())
    assert [c.hue for c in cells] == ["red", "blue", "red"]
    assert [c.intensity for c in cells] == [1.0, 1.0, 1.0]
    assert [r["fill"] for r in rects(barcode(T() ** -1 - 1 + T()))] == \
        ["#ff0000", "#0000ff", "#ff0000"]


def test_zero_coefficients_are_white_bars():
    cells = barcode_cells(T() ** 2 - 2)
    assert [c.hue for c in cells] == ["blue", "white", "red"]
    assert [c.intensity for c in cells] == [1.0, 0.0, 0.5]


def test_hexagon_example_has_seven_cells():
    colored = [c for c in hex_cells(HEX_EXAMPLE) if c.hue != "white"]
    assert len(colored) == 7
    center = [c for c in colored if c.position == (0.0, 0.0)]
    assert center == [ColorCell((0.0, 0.0), "red", 1.0)]
    ring = [c for c in colored if c.position != (0.0, 0.0)]
    assert all(c.intensity == 0.5 for c in ring)
    # the six neighbours sit at unit distance, alternating in sign around the center
    assert all(math.isclose(math.hypot(*c.position), 1.0) for c in ring)
    by_angle = sorted(ring, key=lambda c: math.atan2(c.position[1], c.position[0]))
    hues = [c.hue for c in by_angle]
    assert all(a != b for a, b in zip(hues, hues[1:] + hues[:1]))
    assert len(rects(hexqr(HEX_EXAMPLE))) == 7


def test_hex_position_shear():
    assert hex_position(1, 0) == (1.0, 0.0)
    x, y = hex_position(0, 1)
    assert x == -0.5 and math.isclose(y, math.sqrt(3) / 2)


def test_fill_shades():
    assert ColorCell((0, 0), "red", 0.5).fill == "#ff8080"
    assert ColorCell((0, 0), "blue", 0.25).fill == "#bfbfff"
    assert ColorCell((0, 0), "white", 0.0).fill == "#ffffff"


@given(poly2)
def test_output_is_deterministic_and_well_formed(p):
    a, b = hexqr(p), hexqr(LaurentPoly2(p.terms()))
    assert a == b
    ET.fromstring(a)


@given(poly2)
def test_negation_swaps_red_and_blue(p):
    swap = {"red": "blue", "blue": "red", "white": "white"}
    assert [(c.position, swap[c.hue], c.intensity) for c in hex_cells(p)] == \
        [(c.position, c.hue, c.intensity) for c in hex_cells(-p)]


def test_empty_pictures():
    assert rects(barcode(LaurentPoly1())) == []
    assert rects(hexqr(LaurentPoly2())) == []
    ET.fromstring(theta_card(theta(unknot()), "unknot"))


def test_card_puts_the_bar_code_above_the_qr_code():
    r = theta(trefoil())
    boxes = card_boxes(r)
    bx, by, bw, bh = boxes["bar"]
    qx, qy, qw, qh = boxes["qr"]
    assert by + bh <= qy
    assert math.isclose(bx + bw / 2, qx + qw / 2)
    svg = theta_card(r, "3_1")
    root = ET.fromstring(svg)
    assert "3_1" in root.find(SVG + "title").text
    assert len(rects(svg)) == 3 + len([c for c in hex_cells(r.theta) if c.hue != "white"])
    assert svg == theta_card(theta(trefoil()), "3_1")

"""SVG pictures of the invariant: a bar code for Delta and a hexagonal QR code for theta.

Each coefficient becomes a cell colored red (positive), blue (negative) or
white (zero), with intensity |c| / max|c| over the picture. The bar code
has one bar per exponent of Delta from the lowest to the highest. The QR
code places the monomial c T1^n1 T2^n2 at (n1 - n2/2, sqrt(3) n2 / 2),
drawn as an axis-aligned unit square, with n2 increasing upwards.

Output is deterministic: cells are emitted in sorted order and all
coordinates are printed with a fixed number of decimals.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction

from .algebra import LaurentPoly1, LaurentPoly2, to_text

SCALE = 12          # pixels per lattice unit in the QR code
BAR_WIDTH = 8
BAR_HEIGHT = 48
MARGIN = 6
SQRT3_2 = math.sqrt(3) / 2


@dataclass(frozen=True)
class ColorCell:
    position: tuple[float, float]
    hue: str            # "red", "blue" or "white"
    intensity: float    # in [0, 1]

    @property
    def fill(self) -> str:
        return _fill(self.hue, self.intensity)


def _fill(hue: str, a: float) -> str:
    fade = round(255 * (1 - a))
    if hue == "red":
        return f"#ff{fade:02x}{fade:02x}"
    if hue == "blue":
        return f"#{fade:02x}{fade:02x}ff"
    return "#ffffff"


def _cell(pos, c: Fraction, top: Fraction) -> ColorCell:
    if c == 0:
        return ColorCell(pos, "white", 0.0)
    return ColorCell(pos, "red" if c > 0 else "blue", float(abs(c) / top))


def _num(x: float) -> str:
    s = f"{x:.4f}".rstrip("0").rstrip(".")
    return "0" if s in ("-0", "") else s


def barcode_cells(delta: LaurentPoly1) -> list[ColorCell]:
    """One cell per exponent, from the lowest to the highest, at (n, 0)."""
    terms = delta.terms()
    if not terms:
        return []
    top = max(abs(c) for c in terms.values())
    lo, hi = min(terms), max(terms)
    return [_cell((float(n), 0.0), terms.get(n, Fraction(0)), top) for n in range(lo, hi + 1)]


def hex_position(n1: int, n2: int) -> tuple[float, float]:
    return (n1 - n2 / 2, SQRT3_2 * n2)


def hex_cells(theta: LaurentPoly2) -> list[ColorCell]:
    """One cell per lattice point of the bounding box of theta's exponents.

    Points without a monomial are white. Cells are sorted by (n2, n1).
    """
    terms = theta.terms()
    if not terms:
        return []
    top = max(abs(c) for c in terms.values())
    lo1 = min(a for a, _ in terms)
    hi1 = max(a for a, _ in terms)
    lo2 = min(b for _, b in terms)
    hi2 = max(b for _, b in terms)
    out = []
    for n2 in range(lo2, hi2 + 1):
        for n1 in range(lo1, hi1 + 1):
            out.append(_cell(hex_position(n1, n2), terms.get((n1, n2), Fraction(0)), top))
    return out


def _svg(width: float, height: float, body: list[str], title: str) -> str:
    head = ('<?xml version="1.0" encoding="UTF-8"?>\n'
            f'<svg xmlns="http://www.w3.org/2000/svg" version="1.1" '
            f'width="{_num(width)}" height="{_num(height)}" '
            f'viewBox="0 0 {_num(width)} {_num(height)}">\n'
            f'<title>{_escape(title)}</title>\n'
            f'<rect x="0" y="0" width="{_num(width)}" height="{_num(height)}" fill="#ffffff"/>\n')
    return head + "".join(line + "\n" for line in body) + "</svg>\n"


def _escape(s: str) -> str:
    return s.replace("&", "&amp;").replace("<", "&lt;").replace(">", "&gt;")


def _bar_body(delta: LaurentPoly1, x0: float, y0: float) -> tuple[list[str], float, float]:
    cells = barcode_cells(delta)
    body = []
    for k, cell in enumerate(cells):
        body.append(f'<rect x="{_num(x0 + k * BAR_WIDTH)}" y="{_num(y0)}" '
                    f'width="{BAR_WIDTH}" height="{BAR_HEIGHT}" fill="{cell.fill}"/>')
    return body, len(cells) * BAR_WIDTH, BAR_HEIGHT if cells else 0


def _hex_body(theta: LaurentPoly2, x0: float, y0: float) -> tuple[list[str], float, float]:
    cells = hex_cells(theta)
    if not cells:
        return [], 0.0, 0.0
    xs = [c.position[0] for c in cells]
    ys = [c.position[1] for c in cells]
    left, right = min(xs) - 0.5, max(xs) + 0.5
    low, high = min(ys) - 0.5, max(ys) + 0.5
    body = []
    for cell in cells:
        if cell.hue == "white":
            continue
        x, y = cell.position
        # flip y so that larger n2 is drawn higher
        px = x0 + (x - 0.5 - left) * SCALE
        py = y0 + (high - y - 0.5) * SCALE
        body.append(f'<rect x="{_num(px)}" y="{_num(py)}" width="{SCALE}" height="{SCALE}" '
                    f'fill="{cell.fill}"/>')
    return body, (right - left) * SCALE, (high - low) * SCALE


def barcode(delta: LaurentPoly1) -> str:
    """SVG bar code of a one-variable polynomial."""
    body, w, h = _bar_body(delta, MARGIN, MARGIN)
    return _svg(w + 2 * MARGIN, h + 2 * MARGIN, body, "Delta = " + to_text(delta))


def hexqr(theta: LaurentPoly2) -> str:
    """SVG hexagonal QR code of a two-variable polynomial."""
    body, w, h = _hex_body(theta, MARGIN, MARGIN)
    return _svg(w + 2 * MARGIN, h + 2 * MARGIN, body, "theta = " + to_text(theta))


def _card_delta(result) -> LaurentPoly1:
    return result.delta if result.delta is not None else result.det


def card_boxes(result) -> dict[str, tuple[float, float, float, float]]:
    """Bounding boxes (x, y, width, height) of the two parts of a card."""
    _, bw, bh = _bar_body(_card_delta(result), 0, 0)
    _, qw, qh = _hex_body(result.theta, 0, 0)
    inner = max(bw, qw)
    qr_y = MARGIN + bh + (MARGIN if bh else 0)
    return {
        "bar": (MARGIN + (inner - bw) / 2, MARGIN, bw, bh),
        "qr": (MARGIN + (inner - qw) / 2, qr_y, qw, qh),
    }


def theta_card(result, name: str = "") -> str:
    """Bar code of Delta above the QR code of theta, centered in one picture."""
    delta = _card_delta(result)
    boxes = card_boxes(result)
    bx, by, bw, _ = boxes["bar"]
    qx, qy, qw, qh = boxes["qr"]
    bar, _, _ = _bar_body(delta, 0, 0)
    qr, _, _ = _hex_body(result.theta, 0, 0)
    body = [f'<g transform="translate({_num(bx)},{_num(by)})">'] + bar + ["</g>"]
    body += [f'<g transform="translate({_num(qx)},{_num(qy)})">'] + qr + ["</g>"]
    width = max(bw, qw) + 2 * MARGIN
    height = qy + qh + MARGIN
    title = (name + ": " if name else "") + "Delta = " + to_text(delta)
    return _svg(width, height, body, title)

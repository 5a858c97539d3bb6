"""Planar-diagram (PD) codes and their conversion to upright diagrams.

Convention (knot-atlas style): ``X[a, b, c, d]`` lists the four edge labels
counterclockwise starting from the incoming under strand, so ``a -> c`` is
the under strand and ``b, d`` are the ends of the over strand.

Conversion happens in three steps. First the code is walked to orient
every edge, relabel edges 1..2n along the knot, and reject links. Then a
face count checks that the cyclic orders describe a sphere (planarity).
Finally a front sweep in the spirit of Morse theory turns the diagram
upright: the knot is cut open on edge 1 and grown crossing by crossing
along a front of edge ends, counting the cups and caps each edge
accumulates.
"""

from __future__ import annotations

import re
from typing import Sequence

from .core import Crossing, Diagram


class NonPlanar(ValueError):
    """The PD code does not describe a diagram on the sphere."""


class MultiComponent(ValueError):
    """The code (or braid) describes a link with more than one component."""


class PDFormatError(ValueError):
    """Malformed PD text or record."""


PDCode = list[tuple[int, int, int, int]]

_X = re.compile(r"X\s*\[\s*([^\]]*)\]")


def parse_pd(text: str) -> PDCode:
    """Parse ``PD[X[1,5,2,4], X[3,1,4,6], ...]`` or a JSON-like list of lists."""
    text = text.strip()
    records = []
    if "X" in text:
        for body in _X.findall(text):
            parts = [p.strip() for p in body.split(",") if p.strip()]
            records.append(parts)
        rest = _X.sub("", text)
        if re.search(r"\d", rest):
            raise PDFormatError("stray numbers outside X[...] records")
    else:
        for body in re.findall(r"\[([^\[\]]*)\]", text):
            parts = [p.strip() for p in body.split(",") if p.strip()]
            records.append(parts)
    out = []
    for parts in records:
        if len(parts) != 4:
            raise PDFormatError(f"crossing record needs 4 labels, got {parts}")
        try:
            out.append(tuple(int(p) for p in parts))
        except ValueError:
            raise PDFormatError(f"non-integer label in {parts}") from None
    return out


def format_pd(pd: PDCode) -> str:
    return "PD[" + ", ".join("X[%d,%d,%d,%d]" % tuple(x) for x in pd) + "]"


def _check_labels(pd: PDCode) -> dict[int, list[tuple[int, int]]]:
    occ: dict[int, list[tuple[int, int]]] = {}
    for x, rec in enumerate(pd):
        if len(rec) != 4:
            raise PDFormatError(f"crossing record {rec} does not have 4 labels")
        for p, lab in enumerate(rec):
            occ.setdefault(lab, []).append((x, p))
    bad = sorted(lab for lab, o in occ.items() if len(o) != 2)
    if bad:
        raise PDFormatError(f"labels must appear exactly twice; offending: {bad}")
    return occ


def orient(pd: PDCode, start: int | None = None) -> PDCode:
    """Relabel edges 1..2n in traversal order; raise MultiComponent for links.

    The walk starts on edge ``start`` (default: the smallest label), which
    becomes edge 1.
    """
    if not pd:
        return []
    occ = _check_labels(pd)
    n = len(pd)
    if start is None:
        start = min(occ)

    def walk(first_label, entering):
        """Follow the knot assuming first_label is incoming at ``entering``."""
        seq = [first_label]
        x, p = entering
        while True:
            if p == 2:
                raise _WrongWay
            q = 2 if p == 0 else 4 - p
            nxt = pd[x][q]
            if nxt == first_label:
                return seq
            seq.append(nxt)
            if len(seq) > 2 * n:
                raise MultiComponent("walk did not close up")
            ends = occ[nxt]
            x, p = ends[0] if ends[1] == (x, q) else ends[1]

    seq = None
    for entering in occ[start]:
        try:
            seq = walk(start, entering)
            break
        except _WrongWay:
            continue
    if seq is None:
        raise PDFormatError(f"edge {start} cannot be oriented consistently")
    if len(seq) != 2 * n:
        raise MultiComponent(f"walk covers {len(seq)} of {2 * n} edges")
    # over strands may still disagree with the walk direction; check all
    # under strands run a -> c in walk order
    pos = {lab: k for k, lab in enumerate(seq)}
    m = 2 * n
    for rec in pd:
        a, _, c, _ = rec
        if (pos[a] + 1) % m != pos[c]:
            raise PDFormatError(f"under strand of {rec} is not oriented a -> c")
    return [tuple(pos[lab] + 1 for lab in rec) for rec in pd]


class _WrongWay(Exception):
    pass


def face_count(pd: PDCode) -> int:
    """Number of faces of the cellular embedding given by the PD cyclic orders."""
    occ = _check_labels(pd)
    darts = [(x, p) for x in range(len(pd)) for p in range(4)]
    seen = set()
    faces = 0
    for d0 in darts:
        if d0 in seen:
            continue
        faces += 1
        d = d0
        while d not in seen:
            seen.add(d)
            x, p = d
            lab = pd[x][p]
            ends = occ[lab]
            other = ends[0] if ends[1] == (x, p) else ends[1]
            x2, p2 = other
            d = (x2, (p2 + 1) % 4)
    return faces


def check_planar(pd: PDCode) -> None:
    n = len(pd)
    if n == 0:
        return
    f = face_count(pd)
    # connected 4-valent graph: V = n, E = 2n, sphere iff F = n + 2
    if f != n + 2:
        raise NonPlanar(f"{f} faces for {n} crossings; a planar diagram has {n + 2}")


def from_pd(pd: Sequence[Sequence[int]]) -> Diagram:
    """Upright long-knot diagram from a PD code of a knot.

    The knot is cut open on the edge labelled 1 after orienting, giving
    edges 1..2n+1 where 2n+1 is the final half of the cut edge.
    """
    pd = [tuple(int(v) for v in rec) for rec in pd]
    if not pd:
        return Diagram([1])
    pd = orient(pd, start=1 if any(1 in rec for rec in pd) else None)
    check_planar(pd)
    crossings, rot = _upright(pd)
    n = len(pd)
    return Diagram(list(range(1, 2 * n + 2)), crossings, rot)


def _upright(pd: PDCode) -> tuple[list[Crossing], dict[int, int]]:
    """Crossings and rotation numbers for an oriented, consecutively labelled code.

    Positive crossings have the over strand entering on d (b = d + 1);
    their incoming over and under edges are d and a. Negative crossings
    enter over on b. The sweep keeps a left-to-right front of signed edge
    ends: +k is edge k pointing up, -k is edge k pointing down (on its way
    back to meet a crossing from above). When edge k first reaches the
    front, the crossing it enters is attached: k is replaced by the two
    outgoing ends and the still-missing incoming end of the partner strand,
    which enters the front pointing down. Depending on which side the
    partner sits, bending it upright costs a unit of rotation. When an edge
    finally meets its own downward copy the two are joined by a cup or cap.
    """
    m = 2 * len(pd)
    xs = []
    for a, b, c, d in pd:
        # with one crossing b - d = 1 (mod 2) either way; the over strand
        # then enters on whichever of b, d carries the under strand's exit c
        if (d == c) if m == 2 else (b - d) % m == 1:
            xs.append((1, d, a))
        else:
            xs.append((-1, b, a))
    rots = [0] * (m + 2)
    front = [1]
    for k in range(1, m + 1):
        if -k in front:
            ks = [x for x in front if x in (k, -k)]
            if ks == [k, -k]:
                rots[k] -= 1
            continue
        rep: list[int] = []
        for s, i, j in xs:
            if (s > 0 and i == k) or (s < 0 and j == k):
                l = j if s > 0 else i
                rep = [l + 1, k + 1, -l]
                break
            if (s > 0 and j == k) or (s < 0 and i == k):
                l = i if s > 0 else j
                rots[l] += 1
                rep = [-l, k + 1, l + 1]
                break
        new_front = []
        for item in front:
            new_front.extend(rep if item == k else [item])
        front = new_front
    crossings = [Crossing(s, i, j) for s, i, j in xs]
    rot = {k: rots[k] for k in range(1, m + 2) if rots[k]}
    return crossings, rot

"""Upright Reidemeister moves on long-knot diagrams.

A move is a kind plus a site (the participating edge labels) plus a few
options. Forward moves split edges: the first piece keeps the old label,
the other pieces get fresh labels, and the last piece takes over the old
edge's role at the event where it ended. Inverse moves merge consecutive
pieces back into the first one. Named marks on split edges are divided
between the outer pieces at index ``at``; moves that would delete or
reorder a marked edge are refused.

Kinds:

- ``NV+`` on (e,): insert a null vertex, splitting phi_e as
  (phi_first, phi_e - phi_first). ``NV-`` on (j, k) removes one, summing phi.
- ``R1l`` / ``R1r`` on (e,): add a kink whose loop turns left (phi = +1) or
  right (phi = -1). ``over_first`` says whether the strand first passes
  over. ``R1-`` on the loop edge removes a kink.
- ``R2b`` on (a, b): both strands pass two crossings of opposite signs in
  the same order. ``R2b-`` on the two incoming edges of the lower crossing.
- ``R2c`` on (a, b): strand a meets the crossings in the order X1, X2 and
  strand b in the order X2, X1; the middle piece of b turns once
  (phi = orient). ``R2c-`` on (a1, b1) undoes it.
- ``R3b`` on (i, j, k): slide a strand across a crossing when all three
  crossings share a sign. It relinks crossings without changing labels.
- ``Sw`` on the crossing (i, j): move a unit of rotation across it.

Any pair of edges may host an R2 move, so results may be rotational
virtual diagrams; the invariant does not care.
"""

from __future__ import annotations

import random
from dataclasses import dataclass, field

from .core import Crossing, Diagram


class PatternMismatch(ValueError):
    """The diagram does not contain the move's pattern at the given site."""


KINDS = ("NV+", "NV-", "R1l", "R1r", "R1-", "R2b", "R2b-", "R2c", "R2c-", "R3b", "Sw")


@dataclass
class Move:
    kind: str
    site: tuple
    options: dict = field(default_factory=dict)

    def __post_init__(self):
        if self.kind not in KINDS:
            raise ValueError(f"unknown move kind {self.kind!r}")
        self.site = tuple(self.site)

    def to_dict(self) -> dict:
        return {"kind": self.kind, "site": list(self.site), "options": dict(self.options)}

    def __str__(self):
        opts = ", ".join(f"{k}={v}" for k, v in sorted(self.options.items()))
        return f"{self.kind}{self.site}" + (f" [{opts}]" if opts else "")


# ---------------------------------------------------------------------------
# low-level rewiring


class _Work:
    """Mutable copy of a diagram used while rewriting."""

    def __init__(self, d: Diagram):
        self.edges = list(d.edges)
        self.crossings = list(d.crossings)
        self.rot = dict(d.rot)
        self.nvs = list(d.null_vertices)
        self.marks = {k: list(v) for k, v in d.marks.items()}
        self.next = max(d.edges) + 1

    def fresh(self) -> int:
        v = self.next
        self.next += 1
        return v

    def rename_incoming(self, old: int, new: int):
        """The edge that ends at old's end event is now ``new``."""
        self.crossings = [Crossing(c.sign, new if c.over_in == old else c.over_in,
                                   new if c.under_in == old else c.under_in)
                          for c in self.crossings]
        self.nvs = [(new if a == old else a, b) for a, b in self.nvs]

    def split(self, e: int, pieces: int) -> list[int]:
        labels = [e] + [self.fresh() for _ in range(pieces - 1)]
        pos = self.edges.index(e)
        self.edges[pos:pos + 1] = labels
        self.rename_incoming(e, labels[-1])
        self.rot.pop(e, None)
        return labels

    def split_marks(self, e: int, first: int, last: int, at: int | None):
        names = self.marks.pop(e, [])
        if at is None:
            at = len(names)
        if not 0 <= at <= len(names):
            raise PatternMismatch(f"mark index {at} out of range on edge {e}")
        if names[:at]:
            self.marks[first] = names[:at]
        if names[at:]:
            self.marks[last] = names[at:]

    def merge(self, pieces: list[int], phi: int):
        """Merge consecutive edges into the first one, with rotation phi."""
        first, last = pieces[0], pieces[-1]
        names = []
        for p in pieces:
            names += self.marks.pop(p, [])
            self.rot.pop(p, None)
        pos = self.edges.index(first)
        if self.edges[pos:pos + len(pieces)] != pieces:
            raise PatternMismatch(f"edges {pieces} are not consecutive")
        del self.edges[pos + 1:pos + len(pieces)]
        self.rename_incoming(last, first)
        if phi:
            self.rot[first] = phi
        if names:
            self.marks[first] = names

    def set_rot(self, values: dict[int, int]):
        for k, v in values.items():
            if v:
                self.rot[k] = v
            else:
                self.rot.pop(k, None)

    def done(self) -> Diagram:
        return Diagram(self.edges, self.crossings, self.rot, self.nvs, marks=self.marks)


def _require(cond: bool, msg: str):
    if not cond:
        raise PatternMismatch(msg)


def _crossing_with(d: Diagram, a: int) -> Crossing | None:
    for c in d.crossings:
        if a in (c.over_in, c.under_in):
            return c
    return None


def _succ(d: Diagram, e: int) -> int:
    _require(e in d.succ, f"edge {e} has no successor")
    return d.succ[e]


# ---------------------------------------------------------------------------
# the moves


def _nv_insert(d, site, phi_first=None, at=None):
    (e,) = site
    _require(e in d.edges, f"no edge {e}")
    w = _Work(d)
    phi = d.phi(e)
    if phi_first is None:
        phi_first = phi
    a, b = w.split(e, 2)
    w.nvs.append((a, b))
    w.set_rot({a: phi_first, b: phi - phi_first})
    w.split_marks(e, a, b, at)
    return w.done()


def _nv_remove(d, site):
    j, k = site
    _require((j, k) in d.null_vertices, f"no null vertex {(j, k)}")
    w = _Work(d)
    w.nvs.remove((j, k))
    w.merge([j, k], d.phi(j) + d.phi(k))
    return w.done()


def _r1(d, site, left, over_first=True, phi_first=None, at=None):
    (e,) = site
    _require(e in d.edges, f"no edge {e}")
    w = _Work(d)
    phi = d.phi(e)
    if phi_first is None:
        phi_first = phi
    loop_phi = 1 if left else -1
    a, l, c = w.split(e, 3)
    if over_first:
        w.crossings.append(Crossing(-loop_phi, a, l))
    else:
        w.crossings.append(Crossing(loop_phi, l, a))
    w.set_rot({a: phi_first, l: loop_phi, c: phi - phi_first})
    w.split_marks(e, a, c, at)
    return w.done()


def _r1_remove(d, site):
    (l,) = site
    _require(l in d.edges and l != d.first and l != d.last, f"edge {l} cannot be a kink loop")
    a = d.pred()[l]
    c = d.succ[l]
    x = _crossing_with(d, l)
    _require(x is not None and {x.over_in, x.under_in} == {a, l}, f"edge {l} is not a kink loop")
    over_first = x.over_in == a
    expected = -x.sign if over_first else x.sign
    _require(d.phi(l) == expected, f"loop edge {l} has the wrong rotation for a kink")
    _require(not d.marks.get(l), f"loop edge {l} carries marks")
    w = _Work(d)
    w.crossings.remove(x)
    w.merge([a, l, c], d.phi(a) + d.phi(c))
    return w.done()


def _two_strands(d, site):
    ea, eb = site
    _require(ea != eb, "the two strands must be different edges")
    _require(ea in d.edges and eb in d.edges, f"no edges {site}")
    return ea, eb


def _r2b(d, site, sign=1, a_over=True, at_a=None, at_b=None):
    ea, eb = _two_strands(d, site)
    _require(sign in (1, -1), "sign must be +1 or -1")
    w = _Work(d)
    pa, pb = d.phi(ea), d.phi(eb)
    a1, a2, a3 = w.split(ea, 3)
    b1, b2, b3 = w.split(eb, 3)
    if a_over:
        w.crossings += [Crossing(sign, a1, b1), Crossing(-sign, a2, b2)]
    else:
        w.crossings += [Crossing(sign, b1, a1), Crossing(-sign, b2, a2)]
    w.set_rot({a1: pa, b1: pb})
    w.split_marks(ea, a1, a3, at_a)
    w.split_marks(eb, b1, b3, at_b)
    return w.done()


def _r2b_remove(d, site):
    a1, b1 = site
    x1 = _crossing_with(d, a1)
    _require(x1 is not None and {x1.over_in, x1.under_in} == {a1, b1},
             f"edges {site} do not enter one crossing")
    a2, b2 = _succ(d, a1), _succ(d, b1)
    x2 = _crossing_with(d, a2)
    _require(x2 is not None and {x2.over_in, x2.under_in} == {a2, b2},
             f"edges {a2, b2} do not enter one crossing")
    _require(x2.sign == -x1.sign, "the two crossings must have opposite signs")
    _require((x1.over_in == a1) == (x2.over_in == a2), "the same strand must be over twice")
    a3, b3 = _succ(d, a2), _succ(d, b2)
    _require(len({a1, a2, a3, b1, b2, b3}) == 6, "the two strands overlap")
    _require(d.phi(a2) == 0 and d.phi(b2) == 0, "middle edges must have zero rotation")
    _require(not d.marks.get(a2) and not d.marks.get(b2), "middle edges carry marks")
    w = _Work(d)
    w.crossings.remove(x1)
    w.crossings.remove(x2)
    w.merge([a1, a2, a3], d.phi(a1) + d.phi(a3))
    w.merge([b1, b2, b3], d.phi(b1) + d.phi(b3))
    return w.done()


def _r2c(d, site, orient=1, a_over=True, b_late=False, at_a=None, at_b=None):
    ea, eb = _two_strands(d, site)
    _require(orient in (1, -1), "orient must be +1 or -1")
    w = _Work(d)
    pa, pb = d.phi(ea), d.phi(eb)
    a1, a2, a3 = w.split(ea, 3)
    b1, b2, b3 = w.split(eb, 3)
    if a_over:
        w.crossings += [Crossing(-orient, a1, b2), Crossing(orient, a2, b1)]
    else:
        w.crossings += [Crossing(orient, b2, a1), Crossing(-orient, b1, a2)]
    if b_late:
        w.set_rot({a1: pa, b1: pb, b2: orient, b3: -orient})
    else:
        w.set_rot({a1: pa, b1: pb - orient, b2: orient})
    w.split_marks(ea, a1, a3, at_a)
    w.split_marks(eb, b1, b3, at_b)
    return w.done()


def _r2c_remove(d, site):
    a1, b1 = site
    a2, b2 = _succ(d, a1), _succ(d, b1)
    x1 = _crossing_with(d, a1)
    x2 = _crossing_with(d, a2)
    _require(x1 is not None and {x1.over_in, x1.under_in} == {a1, b2},
             f"edges {a1, b2} do not enter one crossing")
    _require(x2 is not None and {x2.over_in, x2.under_in} == {a2, b1},
             f"edges {a2, b1} do not enter one crossing")
    a_over = x1.over_in == a1
    _require(a_over == (x2.over_in == a2), "the same strand must be over twice")
    orient = x2.sign if a_over else -x2.sign
    _require(x1.sign == -x2.sign, "the two crossings must have opposite signs")
    a3, b3 = _succ(d, a2), _succ(d, b2)
    _require(len({a1, a2, a3, b1, b2, b3}) == 6, "the two strands overlap")
    _require(d.phi(a2) == 0 and d.phi(b2) == orient, "middle edges have the wrong rotation")
    _require(not d.marks.get(a2) and not d.marks.get(b2), "middle edges carry marks")
    w = _Work(d)
    w.crossings.remove(x1)
    w.crossings.remove(x2)
    w.merge([a1, a2, a3], d.phi(a1) + d.phi(a3))
    w.merge([b1, b2, b3], d.phi(b1) + d.phi(b2) + d.phi(b3))
    return w.done()


def r3_patterns(d: Diagram, i: int, j: int, k: int):
    """The left and right triangle crossing sets at (i, j, k), per sign."""
    s = d.succ
    if not all(e in s for e in (i, j, k)):
        return None
    ip, jp, kp = s[i], s[j], s[k]
    out = {}
    for sg in (1, -1):
        left = {Crossing(sg, j, k), Crossing(sg, i, kp), Crossing(sg, ip, jp)}
        right = {Crossing(sg, i, j), Crossing(sg, ip, k), Crossing(sg, jp, kp)}
        out[sg] = (left, right)
    return out, (ip, jp, kp)


def _r3b(d, site):
    i, j, k = site
    found = r3_patterns(d, i, j, k)
    _require(found is not None, f"edges {site} are not all followed by other edges")
    pats, inner = found
    _require(len({i, j, k, *inner}) == 6, "the three strands overlap")
    _require(all(d.phi(e) == 0 for e in inner), "inner edges must have zero rotation")
    _require(not any(d.marks.get(e) for e in inner), "inner edges carry marks")
    have = set(d.crossings)
    for left, right in pats.values():
        for src, dst in ((left, right), (right, left)):
            if src <= have:
                out = d.copy()
                out.crossings = [c for c in d.crossings if c not in src] + sorted(dst)
                return out
    raise PatternMismatch(f"no triangle at {site}")


def _sw(d, site, eps=1):
    i, j = site
    _require(eps in (1, -1), "eps must be +1 or -1")
    match = [c for c in d.crossings if c.over_in == i and c.under_in == j]
    _require(bool(match), f"no crossing entered by {i} (over) and {j} (under)")
    w = _Work(d)
    ip, jp = d.succ[i], d.succ[j]
    delta: dict[int, int] = {}
    for e, v in ((i, eps), (j, eps), (ip, -eps), (jp, -eps)):
        delta[e] = delta.get(e, 0) + v
    w.set_rot({e: d.phi(e) + v for e, v in delta.items()})
    return w.done()


_DISPATCH = {
    "NV+": _nv_insert,
    "NV-": _nv_remove,
    "R1l": lambda d, site, **kw: _r1(d, site, True, **kw),
    "R1r": lambda d, site, **kw: _r1(d, site, False, **kw),
    "R1-": _r1_remove,
    "R2b": _r2b,
    "R2b-": _r2b_remove,
    "R2c": _r2c,
    "R2c-": _r2c_remove,
    "R3b": _r3b,
    "Sw": _sw,
}


def apply_move(d: Diagram, move: Move) -> Diagram:
    """Apply a move; raises PatternMismatch when the site does not fit."""
    try:
        return _DISPATCH[move.kind](d, move.site, **move.options)
    except (KeyError, IndexError) as exc:
        raise PatternMismatch(f"{move}: {exc}") from None


# ---------------------------------------------------------------------------
# finding sites and random moves


def inverse_sites(d: Diagram) -> list[Move]:
    """Every simplifying move (NV-, R1-, R2b-, R2c-) that applies to d."""
    out = []
    for nv in d.null_vertices:
        out.append(Move("NV-", nv))
    pred = d.pred()
    for c in d.crossings:
        sites = [("R1-", (c.under_in,)), ("R1-", (c.over_in,)),
                 ("R2b-", (c.over_in, c.under_in)), ("R2b-", (c.under_in, c.over_in))]
        # an R2c pair is entered by (a1, b2) first, so b1 precedes the partner edge
        for x, y in ((c.over_in, c.under_in), (c.under_in, c.over_in)):
            if y in pred:
                sites.append(("R2c-", (x, pred[y])))
        for kind, site in sites:
            m = Move(kind, site)
            try:
                apply_move(d, m)
            except PatternMismatch:
                continue
            out.append(m)
    return out


def r3_sites(d: Diagram) -> list[Move]:
    """Every R3b site of d."""
    out = []
    have = set(d.crossings)
    for c in d.crossings:
        # a triangle has c1 = (s, j, k) on the left or (s, i, j) on the right
        for i in d.edges[:-1]:
            for site in ((i, c.over_in, c.under_in), (c.over_in, c.under_in, i)):
                if len(set(site)) < 3:
                    continue
                found = r3_patterns(d, *site)
                if found is None:
                    continue
                pats, inner = found
                if any(src <= have for lr in pats.values() for src in lr):
                    m = Move("R3b", site)
                    try:
                        apply_move(d, m)
                    except PatternMismatch:
                        continue
                    if m not in out:
                        out.append(m)
    return out


def _marks_at(d: Diagram, e: int, rng: random.Random) -> int:
    return rng.randint(0, len(d.marks.get(e, [])))


def random_forward_move(d: Diagram, rng: random.Random, kinds=None) -> Move:
    """A random applicable forward move (NV+, R1, R2, Sw)."""
    kinds = kinds or ("NV+", "R1l", "R1r", "R2b", "R2c", "Sw")
    kind = rng.choice([k for k in kinds if k != "Sw" or d.crossings])
    if kind == "Sw":
        c = rng.choice(d.crossings)
        return Move("Sw", (c.over_in, c.under_in), {"eps": rng.choice((1, -1))})
    if kind in ("NV+", "R1l", "R1r"):
        e = rng.choice(d.edges)
        phi = d.phi(e)
        opts = {"phi_first": phi + rng.choice((-1, 0, 0, 1)), "at": _marks_at(d, e, rng)}
        if kind != "NV+":
            opts["over_first"] = rng.random() < 0.5
        return Move(kind, (e,), opts)
    if len(d.edges) < 2:
        e = d.edges[0]
        return Move("NV+", (e,), {"at": _marks_at(d, e, rng)})
    ea, eb = rng.sample(d.edges, 2)
    opts = {"a_over": rng.random() < 0.5, "at_a": _marks_at(d, ea, rng),
            "at_b": _marks_at(d, eb, rng)}
    if kind == "R2b":
        opts["sign"] = rng.choice((1, -1))
    else:
        opts["orient"] = rng.choice((1, -1))
        opts["b_late"] = rng.random() < 0.5
    return Move(kind, (ea, eb), opts)


def build_r3_site(d: Diagram, rng: random.Random) -> tuple[Diagram, list[Move]]:
    """Create an R3b site from three R2b moves; returns (diagram, moves made).

    Strand j passes over k, then i passes over the middle of k and then
    over the middle of j, all with the same lower sign. The result contains
    the left triangle on (i, j, k) for that sign.
    """
    if len(d.edges) < 3:
        m = Move("NV+", (d.edges[0],))
        d = apply_move(d, m)
        moves = [m]
        m = Move("NV+", (d.edges[0],))
        d = apply_move(d, m)
        moves.append(m)
    else:
        moves = []
    sign = rng.choice((1, -1))
    i, j, k = rng.sample(d.edges, 3)
    m1 = Move("R2b", (j, k), {"sign": sign, "a_over": True})
    d1 = apply_move(d, m1)
    j2, k2 = d1.succ[j], d1.succ[k]
    m2 = Move("R2b", (i, k2), {"sign": sign, "a_over": True})
    d2 = apply_move(d1, m2)
    i2 = d2.succ[i]
    m3 = Move("R2b", (i2, j2), {"sign": sign, "a_over": True})
    d3 = apply_move(d2, m3)
    return d3, moves + [m1, m2, m3, Move("R3b", (i, j, k))]


def random_move(d: Diagram, rng: random.Random) -> Move:
    """A random applicable move of any kind, preferring variety."""
    r = rng.random()
    if r < 0.25:
        inv = inverse_sites(d)
        if inv:
            return rng.choice(inv)
    if r < 0.35:
        r3 = r3_sites(d)
        if r3:
            return rng.choice(r3)
    return random_forward_move(d, rng)

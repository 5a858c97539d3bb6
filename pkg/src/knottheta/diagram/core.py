"""Upright long-knot diagrams: crossings, rotation numbers, null vertices.

A diagram is a list of edge labels in traversal order. Every edge except
the last ends at exactly one event: as the incoming over strand of a
crossing, as the incoming under strand of a crossing, or as the incoming
half of a null vertex. A crossing ``(s, i, j)`` has sign ``s``, incoming
over edge ``i`` and incoming under edge ``j``; its outgoing edges are the
successors of ``i`` and ``j``.

Nothing here requires planarity, so rotational virtual diagrams are
accepted. Optional named marks record points sitting on edges, in order,
for the relative-invariance tests.
"""

from __future__ import annotations

import json
from dataclasses import dataclass, field
from typing import Iterable


@dataclass(frozen=True, order=True)
class Crossing:
    sign: int
    over_in: int
    under_in: int

    def __post_init__(self):
        if self.sign not in (1, -1):
            raise ValueError(f"crossing sign must be +1 or -1, got {self.sign}")

    def as_tuple(self) -> tuple[int, int, int]:
        return (self.sign, self.over_in, self.under_in)


@dataclass
class Diagram:
    edges: list[int]
    crossings: list[Crossing] = field(default_factory=list)
    rot: dict[int, int] = field(default_factory=dict)
    null_vertices: list[tuple[int, int]] = field(default_factory=list)
    succ: dict[int, int] | None = None
    marks: dict[int, list[str]] = field(default_factory=dict)

    def __post_init__(self):
        self.edges = list(self.edges)
        self.crossings = [c if isinstance(c, Crossing) else Crossing(*c) for c in self.crossings]
        self.rot = {k: v for k, v in self.rot.items() if v}
        self.null_vertices = [tuple(nv) for nv in self.null_vertices]
        if self.succ is None:
            self.succ = {a: b for a, b in zip(self.edges, self.edges[1:])}
        self.marks = {k: list(v) for k, v in self.marks.items() if v}

    # basic quantities ------------------------------------------------------
    @property
    def first(self) -> int:
        return self.edges[0]

    @property
    def last(self) -> int:
        return self.edges[-1]

    def phi(self, k: int) -> int:
        return self.rot.get(k, 0)

    @property
    def writhe(self) -> int:
        return sum(c.sign for c in self.crossings)

    @property
    def total_rotation(self) -> int:
        return sum(self.rot.values())

    @property
    def n_crossings(self) -> int:
        return len(self.crossings)

    def pred(self) -> dict[int, int]:
        return {b: a for a, b in self.succ.items()}

    def position(self) -> dict[int, int]:
        return {e: k for k, e in enumerate(self.edges)}

    def copy(self) -> "Diagram":
        return Diagram(list(self.edges), list(self.crossings), dict(self.rot),
                       list(self.null_vertices), dict(self.succ),
                       {k: list(v) for k, v in self.marks.items()})

    def end_event(self) -> dict[int, tuple[str, object]]:
        """Map each edge to the event at its end (role, crossing or nv)."""
        ev: dict[int, tuple[str, object]] = {}
        for c in self.crossings:
            ev[c.over_in] = ("over", c)
            ev[c.under_in] = ("under", c)
        for nv in self.null_vertices:
            ev[nv[0]] = ("nv", nv)
        return ev

    def fresh_label(self) -> int:
        return max(self.edges) + 1

    # comparison ------------------------------------------------------------
    def canonical(self) -> "Diagram":
        """Relabel edges 1..N in traversal order (marks keep their names)."""
        new = {e: k + 1 for k, e in enumerate(self.edges)}
        return Diagram(
            edges=list(range(1, len(self.edges) + 1)),
            crossings=sorted(Crossing(c.sign, new[c.over_in], new[c.under_in]) for c in self.crossings),
            rot={new[k]: v for k, v in self.rot.items()},
            null_vertices=sorted((new[a], new[b]) for a, b in self.null_vertices),
            marks={new[k]: v for k, v in self.marks.items()},
        )

    def isomorphic(self, other: "Diagram") -> bool:
        a, b = self.canonical(), other.canonical()
        return (a.edges == b.edges and a.crossings == b.crossings and a.rot == b.rot
                and a.null_vertices == b.null_vertices)

    # serialization ---------------------------------------------------------
    def to_dict(self) -> dict:
        out = {
            "edges": list(self.edges),
            "succ": {str(a): b for a, b in self.succ.items()},
            "crossings": [list(c.as_tuple()) for c in self.crossings],
            "rot": {str(k): v for k, v in sorted(self.rot.items())},
            "null_vertices": [list(nv) for nv in self.null_vertices],
        }
        if self.marks:
            out["marks"] = {str(k): v for k, v in self.marks.items()}
        return out

    def to_json(self) -> str:
        return json.dumps(self.to_dict(), sort_keys=True)

    @classmethod
    def from_dict(cls, data: dict) -> "Diagram":
        edges = [int(e) for e in data["edges"]]
        succ = data.get("succ")
        if succ is not None:
            succ = {int(a): int(b) for a, b in succ.items()}
        return cls(
            edges=edges,
            crossings=[Crossing(int(s), int(i), int(j)) for s, i, j in data.get("crossings", [])],
            rot={int(k): int(v) for k, v in data.get("rot", {}).items()},
            null_vertices=[(int(a), int(b)) for a, b in data.get("null_vertices", [])],
            succ=succ,
            marks={int(k): list(v) for k, v in data.get("marks", {}).items()},
        )

    @classmethod
    def from_json(cls, text: str) -> "Diagram":
        return cls.from_dict(json.loads(text))


def make_diagram(crossings: Iterable, rot: dict[int, int] | None = None,
                 n_edges: int | None = None) -> Diagram:
    """Diagram on edges 1..N from (s, i, j) triples; N defaults to 2n+1."""
    crossings = [Crossing(*c) if not isinstance(c, Crossing) else c for c in crossings]
    if n_edges is None:
        n_edges = 2 * len(crossings) + 1
    return Diagram(list(range(1, n_edges + 1)), crossings, dict(rot or {}))


def validate(d: Diagram) -> list[str]:
    """All violations of the diagram invariants; an empty list means ok."""
    errors: list[str] = []
    if not d.edges:
        return ["diagram has no edges"]
    labels = set(d.edges)
    if len(labels) != len(d.edges):
        errors.append("edge labels are not distinct")
    expected = {a: b for a, b in zip(d.edges, d.edges[1:])}
    if d.succ != expected:
        extra = set(d.succ) - labels | set(d.succ.values()) - labels
        if extra:
            errors.append(f"dangling label(s) in successor map: {sorted(extra)}")
        errors.append("successor map does not match the traversal order")
    seen: dict[int, str] = {}

    def claim(label, what):
        if label not in labels:
            errors.append(f"dangling label {label} in {what}")
            return
        if label == d.last:
            errors.append(f"final edge {label} used in {what}")
            return
        if label in seen:
            errors.append(f"edge {label} ends at two events ({seen[label]} and {what})")
            return
        seen[label] = what

    for c in d.crossings:
        if c.over_in == c.under_in:
            errors.append(f"crossing {c.as_tuple()} uses one edge twice")
        claim(c.over_in, f"crossing {c.as_tuple()}")
        claim(c.under_in, f"crossing {c.as_tuple()}")
    for a, b in d.null_vertices:
        claim(a, f"null vertex {(a, b)}")
        if b not in labels:
            errors.append(f"dangling label {b} in null vertex {(a, b)}")
        elif expected.get(a) != b:
            errors.append(f"null vertex {(a, b)} does not join consecutive edges")
    for e in d.edges[:-1]:
        if e not in seen and e in labels:
            errors.append(f"edge {e} does not end at a crossing or null vertex")
    for k in d.rot:
        if k not in labels:
            errors.append(f"dangling label {k} in rotation numbers")
    for k in d.marks:
        if k not in labels:
            errors.append(f"dangling label {k} in marks")
    return errors


def is_valid(d: Diagram) -> bool:
    return not validate(d)


# ---------------------------------------------------------------------------
# structural operations


def mirror(d: Diagram) -> Diagram:
    """Left-right reflection of the plane: signs and rotations flip.

    Over strands stay over; reflecting an upright crossing swaps which side
    the over strand enters from, which is exactly a sign change.
    """
    out = d.copy()
    out.crossings = [Crossing(-c.sign, c.over_in, c.under_in) for c in d.crossings]
    out.rot = {k: -v for k, v in d.rot.items()}
    return out


def crossing_change_mirror(d: Diagram) -> Diagram:
    """Mirror image via switching every crossing (rotations unchanged)."""
    out = d.copy()
    out.crossings = [Crossing(-c.sign, c.under_in, c.over_in) for c in d.crossings]
    return out


def reverse(d: Diagram) -> Diagram:
    """Reverse orientation, then turn the plane by a half turn.

    Edges keep their labels but are traversed backwards. A crossing entered
    through i (over) and j (under) is now entered through their old
    successors. Signs are preserved and rotation numbers negate.
    """
    if d.marks:
        raise ValueError("reverse does not track marks")
    succ = d.succ
    new_edges = list(reversed(d.edges))
    crossings = [Crossing(c.sign, succ[c.over_in], succ[c.under_in]) for c in d.crossings]
    nvs = [(b, a) for a, b in d.null_vertices]
    rot = {k: -v for k, v in d.rot.items()}
    return Diagram(new_edges, crossings, rot, nvs)


def connected_sum(d1: Diagram, d2: Diagram) -> Diagram:
    """Concatenate two long knots; the joining edges merge into one."""
    a = d1.canonical()
    b = d2.canonical()
    off = len(a.edges) - 1

    def shift(e):
        return e + off

    edges = a.edges + [shift(e) for e in b.edges[1:]]
    crossings = list(a.crossings) + [Crossing(c.sign, shift(c.over_in), shift(c.under_in))
                                     for c in b.crossings]
    rot = dict(a.rot)
    for k, v in b.rot.items():
        rot[shift(k)] = rot.get(shift(k), 0) + v
    nvs = list(a.null_vertices) + [(shift(x), shift(y)) for x, y in b.null_vertices]
    return Diagram(edges, crossings, rot, nvs)


def relabel(d: Diagram, mapping: dict[int, int]) -> Diagram:
    """Rename edges through an injective mapping."""
    f = mapping.__getitem__
    return Diagram(
        [f(e) for e in d.edges],
        [Crossing(c.sign, f(c.over_in), f(c.under_in)) for c in d.crossings],
        {f(k): v for k, v in d.rot.items()},
        [(f(a), f(b)) for a, b in d.null_vertices],
        marks={f(k): list(v) for k, v in d.marks.items()},
    )


def unknot() -> Diagram:
    return Diagram([1])

"""The bundled knot table and a few named example diagrams.

The table holds PD codes, genus and fiberedness for the unknot, all prime
knots with at most 10 crossings, and the knots 11n_34 (Conway) and 11n_42
(Kinoshita-Terasaka). It is regenerated by ``tools/make_knot_table.py``.
"""

from __future__ import annotations

import json
from dataclasses import dataclass
from functools import lru_cache
from importlib import resources

from .core import Diagram, make_diagram
from .pd import from_pd


@dataclass(frozen=True)
class KnotRecord:
    name: str
    crossings: int
    pd: tuple
    genus: int | None
    fibered: bool | None

    def diagram(self) -> Diagram:
        return from_pd([list(x) for x in self.pd])


@lru_cache(maxsize=1)
def load_table() -> tuple[KnotRecord, ...]:
    text = resources.files("knottheta.data").joinpath("knots.json").read_text()
    data = json.loads(text)
    return tuple(KnotRecord(k["name"], k["crossings"], tuple(tuple(x) for x in k["pd"]),
                            k["genus"], k["fibered"]) for k in data["knots"])


def get_knot(name: str) -> KnotRecord:
    """Look a knot up by name; ``11n34`` and ``11n_34`` both work."""
    want = name.replace("_", "")
    for rec in load_table():
        if rec.name.replace("_", "") == want:
            return rec
    raise KeyError(f"no knot named {name!r} in the bundled table")


def knots_up_to(n: int) -> list[KnotRecord]:
    return [r for r in load_table() if r.crossings <= n]


def trefoil() -> Diagram:
    """The left trefoil as three positive crossings, with one cap on edge 4."""
    return make_diagram([(1, 1, 4), (1, 5, 2), (1, 3, 6)], {4: -1})


def ks_virtual() -> Diagram:
    """A rotational virtual diagram on 11 edges whose theta lacks hexagonal symmetry."""
    phi = (-1, 0, 0, 1, 0, -1, 0, 0, 1, 0, 0)
    return make_diagram([(-1, 1, 6), (-1, 2, 4), (1, 9, 3), (-1, 7, 5), (1, 10, 8)],
                        {k + 1: v for k, v in enumerate(phi) if v})


NAMED = {"trefoil": trefoil, "ks": ks_virtual}


def named_diagram(name: str) -> Diagram:
    """A named example diagram, or a table knot by name."""
    if name in NAMED:
        return NAMED[name]()
    return get_knot(name).diagram()

"""Braid closures as upright long knots, and seeded random diagrams.

Braid strands run upward, so every braid crossing is already upright. The
generator ``k`` (``-k``) is a positive (negative) crossing of the strands
in positions k and k+1; in the positive case the strand coming from
position k passes over. The closure is cut open at the bottom of position
1. Every other strand returns from the top to the bottom along a closing
arc on the right, which turns clockwise through a cap and a cup and so
contributes rotation -1 to the edge that runs through it.
"""

from __future__ import annotations

import random
from typing import Sequence

from .core import Crossing, Diagram
from .pd import MultiComponent


def braid_permutation(word: Sequence[int], strands: int) -> list[int]:
    """Where the strand starting at each position ends up."""
    perm = list(range(strands))
    where = list(range(strands))  # where[pos] = strand at that position
    for g in word:
        k = abs(g) - 1
        where[k], where[k + 1] = where[k + 1], where[k]
    for pos, strand in enumerate(where):
        perm[strand] = pos
    return perm


def closure_is_knot(word: Sequence[int], strands: int) -> bool:
    perm = braid_permutation(word, strands)
    k, length = 0, 0
    while True:
        k = perm[k]
        length += 1
        if k == 0:
            break
    return length == strands


def braid_closure(word: Sequence[int], strands: int) -> Diagram:
    """Upright long-knot diagram of the closure of a braid."""
    word = [int(g) for g in word]
    if strands < 1:
        raise ValueError("a braid needs at least one strand")
    for g in word:
        if g == 0 or abs(g) >= strands:
            raise ValueError(f"generator {g} is out of range for {strands} strands")
    if not closure_is_knot(word, strands):
        raise MultiComponent("braid closure has more than one component")
    label = 1
    rot: dict[int, int] = {}
    pos = 1
    level = 0
    visits: dict[int, dict[str, int]] = {}
    while True:
        found = None
        for c in range(level, len(word)):
            g = abs(word[c])
            if g == pos or g + 1 == pos:
                found = c
                break
        if found is None:
            if pos == 1:
                break
            # up through a closing arc, back in at the bottom of the braid
            rot[label] = rot.get(label, 0) - 1
            level = 0
            continue
        g = abs(word[found])
        s = 1 if word[found] > 0 else -1
        over = (pos == g) if s > 0 else (pos == g + 1)
        visits.setdefault(found, {})["over" if over else "under"] = label
        label += 1
        pos = g + 1 if pos == g else g
        level = found + 1
    crossings = [Crossing(1 if word[c] > 0 else -1, v["over"], v["under"])
                 for c, v in sorted(visits.items())]
    return Diagram(list(range(1, label + 1)), crossings, rot)


def torus_knot_braid(p: int, q: int) -> tuple[list[int], int]:
    """The braid (s1 s2 ... s_{q-1})^p on q strands, closing to T(p, q)."""
    if q < 1 or p < 0:
        raise ValueError("need q >= 1 and p >= 0")
    return [g for _ in range(p) for g in range(1, q)], q


def torus_knot(p: int, q: int) -> Diagram:
    word, strands = torus_knot_braid(p, q)
    return braid_closure(word, strands)


def random_braid_word(rng: random.Random, size: int, max_strands: int = 5) -> tuple[list[int], int]:
    """A random braid word of the given length whose closure is a knot."""
    if size == 0:
        return [], 1
    hi = max(2, min(size + 1, max_strands))
    while True:
        strands = rng.randint(2, hi)
        word = [rng.choice((1, -1)) * rng.randint(1, strands - 1) for _ in range(size)]
        if closure_is_knot(word, strands):
            return word, strands


def random_diagram(seed: int, size: int, max_strands: int = 5) -> Diagram:
    """Deterministic random knot diagram with ``size`` crossings."""
    if size < 0:
        raise ValueError("size must be non-negative")
    rng = random.Random(seed)
    word, strands = random_braid_word(rng, size, max_strands)
    return braid_closure(word, strands)

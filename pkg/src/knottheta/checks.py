"""Seeded property runs shared by the CLI and the test-suite.

- ``move_fuzz``: random chains of upright moves must leave theta unchanged.
- ``relative_invariance_fuzz``: the same for g between marked points.
- ``conjecture_report``: the conjectured properties of theta over a table.
"""

from __future__ import annotations

import itertools
import random
from collections import Counter
from dataclasses import dataclass, field
from fractions import Fraction

from .diagram import (Diagram, PatternMismatch, apply_move, build_r3_site, inverse_sites,
                      mirror, r3_sites, random_diagram, random_forward_move, reverse, validate)
from .invariant import (SingularMatrix, fibered_criterion, genus_bound_holds, green,
                        hexagonal_symmetric, theta, theta_numeric, tilde_g)


@dataclass
class FuzzReport:
    applied: Counter = field(default_factory=Counter)
    failures: list[str] = field(default_factory=list)
    chains: int = 0

    @property
    def total(self) -> int:
        return sum(self.applied.values())

    @property
    def ok(self) -> bool:
        return not self.failures


def _random_point(rng: random.Random) -> tuple[Fraction, Fraction]:
    while True:
        t1 = Fraction(rng.randint(2, 40), rng.randint(1, 17))
        t2 = Fraction(rng.randint(2, 40), rng.randint(1, 17))
        if t2 != 1:
            return t1, t2


def _choose_move(d: Diagram, rng: random.Random, max_crossings: int):
    """A random move that keeps the diagram within max_crossings."""
    room = max_crossings - d.n_crossings
    r = rng.random()
    if r < 0.3 or room < 1:
        inv = inverse_sites(d)
        if inv:
            return rng.choice(inv)
    if r < 0.4:
        sites = r3_sites(d)
        if sites:
            return rng.choice(sites)
    if room >= 2:
        kinds = ("NV+", "R1l", "R1r", "R2b", "R2c", "Sw")
    elif room == 1:
        kinds = ("NV+", "R1l", "R1r", "Sw")
    else:
        kinds = ("NV+", "Sw")
    return random_forward_move(d, rng, kinds)


def move_fuzz(seed: int, count: int, max_crossings: int = 12, chain_length: int = 25,
              symbolic_every_chain: bool = True) -> FuzzReport:
    """Apply ``count`` random moves in chains; theta must never change.

    theta is compared exactly at a random rational point after every move,
    and symbolically at the end of each chain.
    """
    rng = random.Random(seed)
    rep = FuzzReport()
    while rep.total < count:
        rep.chains += 1
        d = random_diagram(rng.randrange(10 ** 9), rng.randint(0, max(0, max_crossings - 4)))
        t1, t2 = _random_point(rng)
        try:
            ref = theta_numeric(d, t1, t2)[1]
        except SingularMatrix:
            continue
        start = theta(d, classical=False).theta if symbolic_every_chain else None
        steps = 0
        while steps < chain_length and rep.total < count:
            if rng.random() < 0.08 and d.n_crossings + 6 <= max_crossings:
                _, moves = build_r3_site(d, rng)
                cur = d
                for m in moves:
                    cur = apply_move(cur, m)
                    rep.applied[m.kind] += 1
                    _check_step(cur, m, t1, t2, ref, rep)
                d = cur
                steps += len(moves)
                continue
            m = _choose_move(d, rng, max_crossings)
            try:
                d = apply_move(d, m)
            except PatternMismatch as exc:
                rep.failures.append(f"generated move did not apply: {m}: {exc}")
                break
            rep.applied[m.kind] += 1
            steps += 1
            _check_step(d, m, t1, t2, ref, rep)
        if symbolic_every_chain and theta(d, classical=False).theta != start:
            rep.failures.append(f"chain {rep.chains}: symbolic theta changed")
    return rep


def _check_step(d, m, t1, t2, ref, rep):
    errs = validate(d)
    if errs:
        rep.failures.append(f"{m} produced an invalid diagram: {errs[:3]}")
        return
    if theta_numeric(d, t1, t2)[1] != ref:
        rep.failures.append(f"theta changed under {m}")


def relative_invariance_fuzz(seed: int, count: int, marks: int = 3,
                             max_crossings: int = 10) -> FuzzReport:
    """Marked points ride along random moves; g between them must not change."""
    rng = random.Random(seed)
    rep = FuzzReport()
    names = [f"p{k}" for k in range(marks)]
    while rep.total < count:
        rep.chains += 1
        d = random_diagram(rng.randrange(10 ** 9), rng.randint(1, 6))
        for name in names:
            e = rng.choice(d.edges)
            lst = d.marks.setdefault(e, [])
            lst.insert(rng.randint(0, len(lst)), name)

        def table(diag):
            g = green(diag)
            return {(a, b): tilde_g(diag, a, b, g) for a, b in itertools.permutations(names, 2)}

        ref = table(d)
        for _ in range(10):
            if rep.total >= count:
                break
            m = _choose_move(d, rng, max_crossings)
            try:
                d2 = apply_move(d, m)
            except PatternMismatch:
                # inverse moves refuse to delete marked edges
                continue
            rep.applied[m.kind] += 1
            if table(d2) != ref:
                rep.failures.append(f"tilde g changed under {m}")
            d = d2
    return rep


@dataclass
class ConjectureReport:
    checked: int = 0
    failures: dict[str, list[str]] = field(default_factory=lambda: {
        "hexagonal": [], "mirror": [], "reverse": [], "genus": [], "fibered": [],
        "delta_symmetry": []})
    nonfibered_total: int = 0
    nonfibered_failing: int = 0

    @property
    def ok(self) -> bool:
        return not any(self.failures.values())


def conjecture_report(records, include=("hexagonal", "mirror", "reverse", "genus",
                                        "fibered", "delta_symmetry")) -> ConjectureReport:
    """Check the conjectured properties of theta on table records."""
    rep = ConjectureReport()
    for rec in records:
        d = rec.diagram()
        r = theta(d)
        rep.checked += 1
        th = r.theta
        if "hexagonal" in include and not all(hexagonal_symmetric(th).values()):
            rep.failures["hexagonal"].append(rec.name)
        if "mirror" in include and theta(mirror(d)).theta != -th:
            rep.failures["mirror"].append(rec.name)
        if "reverse" in include and theta(reverse(d)).theta != th:
            rep.failures["reverse"].append(rec.name)
        if "genus" in include and rec.genus is not None and not genus_bound_holds(th, rec.genus):
            rep.failures["genus"].append(rec.name)
        if "delta_symmetry" in include and r.delta != r.delta.inverse_variable():
            rep.failures["delta_symmetry"].append(rec.name)
        if "fibered" in include and rec.fibered is not None:
            holds = fibered_criterion(r.delta, th)
            if rec.fibered and not holds:
                rep.failures["fibered"].append(rec.name)
            if rec.fibered is False:
                rep.nonfibered_total += 1
                rep.nonfibered_failing += not holds
    return rep

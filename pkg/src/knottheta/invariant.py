"""The invariant (Delta, theta) of an upright long-knot diagram.

Pipeline: build the matrix A over Q(T), invert it once to get the Green
function G, then assemble theta from three sums of products of entries of
G specialized at T1, T2 and T1*T2.

Two-variable rational functions are never formed. Every term is multiplied
through by Delta1*Delta2*Delta3, so each entry g of G_nu appears as the
Laurent polynomial h = Delta_nu * g, and the only denominator left is a
single power of (T2 - 1). That pole is kept in a PoleAtOne and must cancel
exactly when the sums are added up.

Internally the scaling uses det(A) rather than the normalized Delta; the
two differ by T**((-phi - w)/2) per specialization, and the product over
the three specializations is the monomial (T1 T2)**(-phi - w), which has
integer exponents even when phi + w is odd.
"""

from __future__ import annotations

import time
from dataclasses import dataclass, field
from fractions import Fraction

import flint

from .algebra import (LaurentPoly1, LaurentPoly2, NonExactDivision, PoleAtOne, RatFunc1,
                      T, _laurent_to_int_parts, apply_symmetry, substitute_T, to_fraction,
                      to_json)
from .diagram.core import Crossing, Diagram
from .linalg import Matrix, SingularMatrix, eliminate

__all__ = [
    "OddParity", "NonIntegerCoefficients", "PoleAtOneEvaluation", "SingularMatrix",
    "GreenTable", "ThetaResult", "build_matrix", "alexander", "alexander_parts", "green",
    "f1", "f2", "f3", "theta", "theta_from_terms", "theta_numeric", "g_rule_check",
    "tilde_g", "residue_oracle", "residue_terms", "telescoping_check", "t1_degree",
    "genus_bound_holds", "fibered_multiplier", "fibered_criterion", "hexagonal_symmetric",
]


class OddParity(ArithmeticError):
    """phi + w is odd, so Delta needs a half-integer power of T."""

    def __init__(self, det: LaurentPoly1, exponent2: int):
        super().__init__(f"phi + w is odd; Delta = T^({exponent2}/2) * ({det})")
        self.det = det
        self.exponent2 = exponent2


class NonIntegerCoefficients(ArithmeticError):
    """theta of a classical knot came out with a non-integer coefficient."""


class PoleAtOneEvaluation(ZeroDivisionError):
    """Numeric evaluation requested at T2 = 1."""


# ---------------------------------------------------------------------------
# the matrix A and Delta


def _numeric(t, ring):
    t = to_fraction(t)
    if ring is flint.fmpq:
        return flint.fmpq(t.numerator, t.denominator)
    return ring(t)


def build_matrix(d: Diagram, t=None, ring=None) -> Matrix:
    """The matrix A of d, over Q(T) or specialized at a rational t.

    With t given, entries live in ``ring`` (flint.fmpq by default, or
    Fraction).
    """
    if t is None:
        ring = RatFunc1
        tv = RatFunc1(T())
        powers = {1: tv, -1: tv.inverse()}
    else:
        ring = ring or flint.fmpq
        tv = _numeric(t, ring)
        if tv == 0:
            raise ValueError("cannot specialize T at 0")
        powers = {1: tv, -1: 1 / tv}
    a = Matrix.identity(d.edges, ring)
    succ = d.succ
    for c in d.crossings:
        ts = powers[c.sign]
        a.add_at(c.over_in, succ[c.over_in], -ts)
        a.add_at(c.over_in, succ[c.under_in], ts - 1)
        a.add_at(c.under_in, succ[c.under_in], ring(-1))
    for j, k in d.null_vertices:
        a.add_at(j, k, ring(-1))
    return a


def normalization_exponent(d: Diagram) -> int:
    """Twice the exponent of T in the normalization of Delta: -phi - w."""
    return -d.total_rotation - d.writhe


def alexander_parts(d: Diagram) -> tuple[LaurentPoly1, int]:
    """(det A, -phi - w); Delta is T**(second / 2) times the first."""
    det, _ = eliminate(build_matrix(d), want_inverse=False)
    return det.to_laurent(), normalization_exponent(d)


def _normalize(det: LaurentPoly1, exponent2: int) -> LaurentPoly1:
    if exponent2 % 2:
        raise OddParity(det, exponent2)
    return det * LaurentPoly1.monomial(exponent2 // 2)


def alexander(d: Diagram) -> LaurentPoly1:
    """The normalized Alexander polynomial Delta = T**((-phi - w)/2) det A."""
    det, e2 = alexander_parts(d)
    return _normalize(det, e2)


# ---------------------------------------------------------------------------
# Green function tables

_SPEC = {1: "T1", 2: "T2", 3: "T1T2"}


@dataclass
class GreenTable:
    """G = A^-1 over Q(T) with lazily built, cached scaled tables.

    ``scaled(a, b)`` is det(A) * g_ab as a Laurent polynomial (an entry of
    the adjugate up to sign). ``h(nu, a, b)`` is Delta_nu * g_{nu,ab} as a
    two-variable Laurent polynomial.
    """

    diagram: Diagram
    det: LaurentPoly1
    exponent2: int
    G: Matrix
    _scaled: dict = field(default_factory=dict, repr=False)
    _scaled2: dict = field(default_factory=dict, repr=False)
    _h: dict = field(default_factory=dict, repr=False)
    _parts: dict = field(default_factory=dict, repr=False)
    _det_parts: tuple | None = field(default=None, repr=False)

    @property
    def parity_even(self) -> bool:
        return self.exponent2 % 2 == 0

    @property
    def delta(self) -> LaurentPoly1:
        return _normalize(self.det, self.exponent2)

    def g(self, a, b) -> RatFunc1:
        return self.G[a, b]

    def scaled_parts(self, a, b) -> tuple[int, flint.fmpz_poly]:
        """det * g_ab as (shift, integer polynomial)."""
        key = (a, b)
        v = self._parts.get(key)
        if v is None:
            if self._det_parts is None:
                shift, poly, den = _laurent_to_int_parts(self.det)
                if den != 1:
                    raise NonIntegerCoefficients("det A has non-integer coefficients")
                self._det_parts = (shift, poly)
            g = self.G[a, b]
            shift, poly = self._det_parts
            q, r = divmod(poly * g._n, g._d)
            if not r.is_zero():
                raise NonExactDivision("det A does not clear the denominator of G")
            v = (shift + g._v, q)
            self._parts[key] = v
        return v

    def scaled(self, a, b) -> LaurentPoly1:
        key = (a, b)
        v = self._scaled.get(key)
        if v is None:
            shift, poly = self.scaled_parts(a, b)
            v = LaurentPoly1._raw(shift, flint.fmpq_poly(poly))
            self._scaled[key] = v
        return v

    def scaled2(self, nu: int, a, b) -> LaurentPoly2:
        """det_nu * g_{nu,ab} in T1, T2."""
        key = (nu, a, b)
        v = self._scaled2.get(key)
        if v is None:
            v = substitute_T(self.scaled(a, b), _SPEC[nu])
            self._scaled2[key] = v
        return v

    def det_nu(self, nu: int) -> LaurentPoly2:
        return substitute_T(self.det, _SPEC[nu])

    def delta_nu(self, nu: int) -> LaurentPoly2:
        return substitute_T(self.delta, _SPEC[nu])

    def h(self, nu: int, a, b) -> LaurentPoly2:
        """Delta_nu * g_{nu,ab}; needs phi + w even."""
        key = (nu, a, b)
        v = self._h.get(key)
        if v is None:
            v = substitute_T(_normalize(self.scaled(a, b), self.exponent2), _SPEC[nu])
            self._h[key] = v
        return v

    @property
    def unit(self) -> LaurentPoly2:
        """Delta1 Delta2 Delta3 / (det1 det2 det3) = (T1 T2)**(-phi - w)."""
        return LaurentPoly2.monomial(self.exponent2, self.exponent2)

    def h_table(self, nu: int) -> dict:
        """The full table {(a, b): h_nu[a][b]} (dense; for small diagrams)."""
        return {(a, b): self.h(nu, a, b) for a in self.diagram.edges for b in self.diagram.edges}


def green(d: Diagram, verify: bool = False) -> GreenTable:
    """Invert A over Q(T); with verify=True also check A G = I."""
    a = build_matrix(d)
    det, inv = eliminate(a, want_inverse=True)
    if verify and not (a @ inv).is_identity():
        raise ArithmeticError("A @ G != I")
    return GreenTable(d, det.to_laurent(), normalization_exponent(d), inv)


# ---------------------------------------------------------------------------
# the three kinds of terms, one at a time (generic route)

_ONE = LaurentPoly2(1)


def _mono(n1: int, n2: int) -> LaurentPoly2:
    return LaurentPoly2.monomial(n1, n2)


def _pole_multiplier(s: int) -> LaurentPoly2:
    """s / (T2**s - 1) == _pole_multiplier(s) / (T2 - 1)."""
    return _ONE if s == 1 else _mono(0, 1)


def f1(c: Crossing, g: GreenTable) -> PoleAtOne:
    """Delta1 Delta2 Delta3 * F1(c)."""
    s, i, j = c.sign, c.over_in, c.under_in
    h = g.scaled2
    d1, d2, d3 = g.det_nu(1), g.det_nu(2), g.det_nu(3)
    t1s, t2s, t3s = _mono(s, 0), _mono(0, s), _mono(s, s)
    h1ii, h1ji = h(1, i, i), h(1, j, i)
    h2ji, h2jj, h2ii, h2ij = h(2, j, i), h(2, j, j), h(2, i, i), h(2, i, j)
    h3ii, h3jj, h3ji = h(3, i, i), h(3, j, j), h(3, j, i)
    regular = (
        Fraction(1, 2) * d1 * d2 * d3
        - h3ii * d1 * d2
        + t2s * h1ii * h2ji * d3
        - t2s * h3jj * h2ji * d1
        - (t2s - 1) * h3ii * h2ji * d1
        + (t3s - 1) * h2ji * h3ji * d1
        - h1ii * h2jj * d3
        + 2 * h3ii * h2jj * d1
        + h1ii * h3jj * d2
        - h2ii * h3jj * d1
    ) * s
    polar = (
        (t1s - 1) * t2s * (h3jj * h1ji * d2 - h2jj * h1ji * d3 + t2s * h1ji * h2ji * d3)
        + (t3s - 1) * (h3ji * d1 * d2 - t2s * h1ii * h3ji * d2 + h2ij * h3ji * d1
                       + (t2s - 2) * h2jj * h3ji * d1
                       - (t1s - 1) * (t2s + 1) * h1ji * h3ji * d2)
    ) * _pole_multiplier(s)
    return (PoleAtOne(regular) + PoleAtOne(polar, 1)) * PoleAtOne(g.unit)


def f2(c0: Crossing, c1: Crossing, g: GreenTable) -> PoleAtOne:
    """Delta1 Delta2 Delta3 * F2(c0, c1)."""
    s0, i0, j0 = c0.sign, c0.over_in, c0.under_in
    s1, i1, j1 = c1.sign, c1.over_in, c1.under_in
    h = g.scaled2
    t2s0 = _mono(0, s0)
    front = (_mono(s0, 0) - 1) * (_mono(s1, s1) - 1) * h(1, j1, i0) * h(3, j0, i1)
    back = t2s0 * h(2, i1, i0) + h(2, j1, j0) - t2s0 * h(2, j1, i0) - h(2, i1, j0)
    return PoleAtOne(front * back * _pole_multiplier(s1) * g.unit, 1)


def f3(k, g: GreenTable) -> LaurentPoly2:
    """Delta1 Delta2 Delta3 * F3(k) = phi_k (g_3kk - 1/2), scaled."""
    phi = g.diagram.phi(k)
    if not phi:
        return LaurentPoly2()
    d1, d2, d3 = g.det_nu(1), g.det_nu(2), g.det_nu(3)
    return phi * (g.scaled2(3, k, k) * d1 * d2 - Fraction(1, 2) * d1 * d2 * d3) * g.unit


# ---------------------------------------------------------------------------
# theta


@dataclass
class ThetaResult:
    delta: LaurentPoly1 | None
    theta: LaurentPoly2
    writhe: int
    total_rotation: int
    seconds: float
    det: LaurentPoly1 | None = None
    theta0_denominator_cleared: bool = True

    @property
    def ms(self) -> int:
        return int(round(self.seconds * 1000))

    def to_dict(self) -> dict:
        out = {
            "delta": None if self.delta is None else to_json(self.delta),
            "theta": to_json(self.theta),
            "writhe": self.writhe,
            "rotation": self.total_rotation,
            "ms": self.ms,
        }
        if self.delta is None and self.det is not None:
            out["det"] = to_json(self.det)
            out["delta_exponent_times_2"] = -self.total_rotation - self.writhe
        return out


def theta_from_terms(d: Diagram, g: GreenTable | None = None) -> LaurentPoly2:
    """theta as the plain sum of f1, f2 and f3 over all terms.

    Slow but transparent; the fast path in ``theta`` must agree with it.
    """
    g = g or green(d)
    total = PoleAtOne()
    for c in d.crossings:
        total = total + f1(c, g)
    for c0 in d.crossings:
        for c1 in d.crossings:
            total = total + f2(c0, c1, g)
    for k in d.edges:
        total = total + f3(k, g)
    if total.pole_order:
        raise NonExactDivision("the (T2 - 1) pole of theta0 did not cancel")
    return total.num


_ZCTX = flint.fmpz_mpoly_ctx.get(("T1", "T2"), "lex")


class _PairKernel:
    """Integer-coefficient accumulation of the F2 double sum.

    Every F2 term is u(T1) * v(T1 T2) * w(T2) / (T2 - 1) where u, v, w are
    one-variable Laurent polynomials built from det * g entries. They are
    lifted to ordinary integer polynomials with a common exponent offset,
    multiplied and summed in FLINT, and the offset is restored at the end.
    """

    def __init__(self, g: GreenTable):
        self.g = g

    def entry(self, a, b):
        """det * g_ab as (shift, integer poly)."""
        return self.g.scaled_parts(a, b)

    @staticmethod
    def _add(x, y, sign=1):
        (a, p), (b, q) = x, y
        if p.is_zero():
            return (b, q if sign == 1 else -q)
        if q.is_zero():
            return x
        lo = min(a, b)
        p = p * flint.fmpz_poly([0] * (a - lo) + [1]) if a > lo else p
        q = q * flint.fmpz_poly([0] * (b - lo) + [1]) if b > lo else q
        return (lo, p + q if sign == 1 else p - q)

    @staticmethod
    def _times_t_power_minus_one(x, s):
        """x * (T**s - 1)."""
        a, p = x
        if s == 1:
            return (a, p * flint.fmpz_poly([-1, 1]))
        return (a - 1, p * flint.fmpz_poly([1, -1]))

    @staticmethod
    def _shift(x, k):
        return (x[0] + k, x[1])

    def _lift(self, x, nu, offset):
        a, p = x
        if p.is_zero():
            return _ZCTX.from_dict({})
        base = a - offset
        if base < 0:
            raise AssertionError("lift offset too large")
        coeffs = p.coeffs()
        if nu == 1:
            return _ZCTX.from_dict({(base + k, 0): c for k, c in enumerate(coeffs) if c})
        if nu == 2:
            return _ZCTX.from_dict({(0, base + k): c for k, c in enumerate(coeffs) if c})
        return _ZCTX.from_dict({(base + k, base + k): c for k, c in enumerate(coeffs) if c})

    def pair_sum(self, crossings) -> LaurentPoly2:
        """sum over ordered pairs of (T2 - 1) * Delta1 Delta2 Delta3 F2 / unit."""
        ent = self.entry
        terms = []
        low = None
        for c0 in crossings:
            s0, i0, j0 = c0.sign, c0.over_in, c0.under_in
            for c1 in crossings:
                s1, i1, j1 = c1.sign, c1.over_in, c1.under_in
                u = self._times_t_power_minus_one(ent(j1, i0), s0)
                if u[1].is_zero():
                    continue
                v = self._times_t_power_minus_one(ent(j0, i1), s1)
                if v[1].is_zero():
                    continue
                w = self._add(self._add(self._shift(ent(i1, i0), s0), ent(j1, j0)),
                              self._add(self._shift(ent(j1, i0), s0), ent(i1, j0)), -1)
                if w[1].is_zero():
                    continue
                if s1 == -1:
                    w = self._shift(w, 1)
                terms.append((u, v, w))
                for x in (u, v, w):
                    low = x[0] if low is None else min(low, x[0])
        if not terms:
            return LaurentPoly2()
        acc = _ZCTX.from_dict({})
        for u, v, w in terms:
            acc += self._lift(u, 1, low) * self._lift(v, 3, low) * self._lift(w, 2, low)
        # the product of the three lifts is T1**(-2 low) T2**(-2 low) * u v w
        return LaurentPoly2.from_mpoly(acc, 2 * low, 2 * low)


def _f1_f3_sums(d: Diagram, g: GreenTable) -> tuple[LaurentPoly2, LaurentPoly2]:
    """(regular part, pole numerator) of the F1 and F3 sums, det-scaled.

    Terms are grouped by the det factors they still need so that the
    multiplications by det_nu happen once per group.
    """
    h = g.scaled2
    need: dict[str, LaurentPoly2] = {k: LaurentPoly2() for k in ("123", "12", "1", "2", "3")}
    need_pole: dict[str, LaurentPoly2] = {k: LaurentPoly2() for k in ("12", "1", "2", "3")}

    def add(tab, key, v):
        tab[key] = tab[key] + v

    for c in d.crossings:
        s, i, j = c.sign, c.over_in, c.under_in
        t1s, t2s, t3s = _mono(s, 0), _mono(0, s), _mono(s, s)
        h1ii, h1ji = h(1, i, i), h(1, j, i)
        h2ji, h2jj, h2ii, h2ij = h(2, j, i), h(2, j, j), h(2, i, i), h(2, i, j)
        h3ii, h3jj, h3ji = h(3, i, i), h(3, j, j), h(3, j, i)
        add(need, "123", LaurentPoly2(Fraction(s, 2)))
        add(need, "12", -s * h3ii)
        add(need, "3", s * (t2s * h1ii * h2ji - h1ii * h2jj))
        add(need, "1", s * (-t2s * h3jj * h2ji - (t2s - 1) * h3ii * h2ji + (t3s - 1) * h2ji * h3ji
                            + 2 * h3ii * h2jj - h2ii * h3jj))
        add(need, "2", s * h1ii * h3jj)
        m = _pole_multiplier(s)
        t1m, t3m = t1s - 1, t3s - 1
        add(need_pole, "2", m * (t1m * t2s * h3jj * h1ji - t3m * t2s * h1ii * h3ji
                                 - t3m * t1m * (t2s + 1) * h1ji * h3ji))
        add(need_pole, "3", m * t1m * t2s * (t2s * h1ji * h2ji - h2jj * h1ji))
        add(need_pole, "12", m * t3m * h3ji)
        add(need_pole, "1", m * t3m * (h2ij * h3ji + (t2s - 2) * h2jj * h3ji))
    for k in d.edges:
        phi = d.phi(k)
        if phi:
            add(need, "12", phi * h(3, k, k))
            add(need, "123", LaurentPoly2(Fraction(-phi, 2)))
    dets = {"1": g.det_nu(1), "2": g.det_nu(2), "3": g.det_nu(3)}

    def collect(tab):
        total = LaurentPoly2()
        for key, v in tab.items():
            if v.is_zero():
                continue
            for nu in key:
                v = v * dets[nu]
            total = total + v
        return total

    return collect(need), collect(need_pole)


def theta(d: Diagram, classical: bool = True, verify: bool = False) -> ThetaResult:
    """Compute (Delta, theta) of a diagram.

    ``classical`` asserts integer coefficients at the end. ``verify`` adds
    the A G = I check, the g-rules and (classical only) the residue
    identity; any failure raises ArithmeticError.
    """
    start = time.perf_counter()
    g = green(d, verify=verify)
    if verify:
        bad = g_rule_check(d, g)
        if bad:
            raise ArithmeticError("g-rule violations: " + "; ".join(bad[:5]))
        if classical and d.crossings and not residue_oracle(d, g).is_zero():
            raise ArithmeticError("the residue R does not vanish")
    regular, polar = _f1_f3_sums(d, g)
    if d.crossings:
        polar = polar + _PairKernel(g).pair_sum(d.crossings)
    # theta0 * det1 det2 det3 = regular + polar / (T2 - 1)
    total = regular + polar.divide_T2_minus_one()
    th = total * g.unit
    if classical and not th.is_integral():
        raise NonIntegerCoefficients("theta has non-integer coefficients")
    delta = g.delta if g.parity_even else None
    return ThetaResult(delta, th, d.writhe, d.total_rotation, time.perf_counter() - start,
                       det=g.det)


# ---------------------------------------------------------------------------
# exact evaluation at rational points


def _numeric_green(d: Diagram, t):
    det, inv = eliminate(build_matrix(d, t, flint.fmpq), want_inverse=True)
    return det, inv


def theta_numeric(d: Diagram, t1, t2) -> tuple[Fraction | None, Fraction]:
    """(Delta(t1), theta(t1, t2)) from three exact rational inversions.

    Delta(t1) is None when phi + w is odd (it would need a square root).
    """
    t1, t2 = to_fraction(t1), to_fraction(t2)
    if t2 == 1:
        raise PoleAtOneEvaluation("theta0 has a pole at T2 = 1; evaluate theta symbolically")
    if t1 == 0 or t2 == 0:
        raise ValueError("T1 and T2 must be nonzero")
    e2 = normalization_exponent(d)
    pts = {1: t1, 2: t2, 3: t1 * t2}
    dets, gs = {}, {}
    for nu, t in pts.items():
        dets[nu], gs[nu] = _numeric_green(d, t)
    idx = gs[1].index
    rows = {nu: gs[nu].rows for nu in gs}

    def g(nu, a, b):
        return rows[nu][idx[a]][idx[b]]

    q = lambda x: flint.fmpq(x.numerator, x.denominator)
    T1, T2, T3 = q(t1), q(t2), q(t1 * t2)
    half = flint.fmpq(1, 2)
    tot = flint.fmpq(0)
    for c in d.crossings:
        s, i, j = c.sign, c.over_in, c.under_in
        T1s, T2s, T3s = T1 ** s, T2 ** s, T3 ** s
        g1ii, g1ji = g(1, i, i), g(1, j, i)
        g2ji, g2jj, g2ii, g2ij = g(2, j, i), g(2, j, j), g(2, i, i), g(2, i, j)
        g3ii, g3jj, g3ji = g(3, i, i), g(3, j, j), g(3, j, i)
        tot += s * (half - g3ii + T2s * g1ii * g2ji - T2s * g3jj * g2ji - (T2s - 1) * g3ii * g2ji
                    + (T3s - 1) * g2ji * g3ji - g1ii * g2jj + 2 * g3ii * g2jj + g1ii * g3jj
                    - g2ii * g3jj)
        tot += s / (T2s - 1) * (
            (T1s - 1) * T2s * (g3jj * g1ji - g2jj * g1ji + T2s * g1ji * g2ji)
            + (T3s - 1) * g3ji * (1 - T2s * g1ii + g2ij + (T2s - 2) * g2jj
                                  - (T1s - 1) * (T2s + 1) * g1ji))
    for c0 in d.crossings:
        s0, i0, j0 = c0.sign, c0.over_in, c0.under_in
        T1s0, T2s0 = T1 ** s0, T2 ** s0
        for c1 in d.crossings:
            s1, i1, j1 = c1.sign, c1.over_in, c1.under_in
            a = g(1, j1, i0)
            if not a:
                continue
            b = g(3, j0, i1)
            if not b:
                continue
            tot += (s1 * (T1s0 - 1) * (T3 ** s1 - 1) * a * b / (T2 ** s1 - 1)
                    * (T2s0 * g(2, i1, i0) + g(2, j1, j0) - T2s0 * g(2, j1, i0) - g(2, i1, j0)))
    for k in d.edges:
        phi = d.phi(k)
        if phi:
            tot += (g(3, k, k) - half) * phi
    # Delta1 Delta2 Delta3 = (t1 t2)**e2 * det1 det2 det3
    scale = (T1 * T2) ** e2 * dets[1] * dets[2] * dets[3]
    th = to_fraction(scale * tot)
    delta = None
    if e2 % 2 == 0:
        delta = to_fraction(T1 ** (e2 // 2) * dets[1])
    return delta, th


# ---------------------------------------------------------------------------
# identities from the invariance proof (oracles)


def _t_value(g_entry):
    if isinstance(g_entry, RatFunc1):
        return RatFunc1(T())
    raise TypeError("pass t= for numeric Green matrices")


def g_rule_check(d: Diagram, g: GreenTable | Matrix, t=None) -> list[str]:
    """All violations of the row and column rules satisfied by G = A^-1.

    ``g`` is a GreenTable, or a bare Matrix over Q(T) (or over the
    rationals, with the specialization point t).
    """
    G = g.G if isinstance(g, GreenTable) else g
    if t is None:
        tv = RatFunc1(T())
        powers = {1: tv, -1: tv.inverse()}
    else:
        tv = G.ring(to_fraction(t)) if G.ring is Fraction else _numeric(t, G.ring)
        powers = {1: tv, -1: 1 / tv}
    edges = d.edges
    succ = d.succ
    out: list[str] = []

    def delta(a, b):
        return 1 if a == b else 0

    def check(ok, what):
        if not ok:
            out.append(what)

    for c in d.crossings:
        s, i, j = c.as_tuple()
        ts = powers[s]
        ip, jp = succ[i], succ[j]
        for b in edges:
            check(G[i, b] == delta(i, b) + ts * G[ip, b] + (1 - ts) * G[jp, b],
                  f"row rule for over edge {i} of {c.as_tuple()} fails at column {b}")
            check(G[j, b] == delta(j, b) + G[jp, b],
                  f"row rule for under edge {j} of {c.as_tuple()} fails at column {b}")
        for a in edges:
            check(G[a, ip] == ts * G[a, i] + delta(a, ip),
                  f"column rule for edge {ip} of {c.as_tuple()} fails at row {a}")
            check(G[a, jp] == G[a, j] + (1 - ts) * G[a, i] + delta(a, jp),
                  f"column rule for edge {jp} of {c.as_tuple()} fails at row {a}")
    for j, k in d.null_vertices:
        for b in edges:
            check(G[j, b] == delta(j, b) + G[k, b],
                  f"row rule for null vertex {(j, k)} fails at column {b}")
        for a in edges:
            check(G[a, k] == delta(a, k) + G[a, j],
                  f"column rule for null vertex {(j, k)} fails at row {a}")
    for b in edges:
        check(G[d.last, b] == delta(d.last, b), f"final-edge row fails at column {b}")
    for a in edges:
        check(G[a, d.first] == delta(a, d.first), f"first-edge column fails at row {a}")
    return out


def _mark_position(d: Diagram, name: str) -> tuple[int, int]:
    for edge, names in d.marks.items():
        if name in names:
            return edge, names.index(name)
    raise KeyError(f"no mark named {name!r}")


def tilde_g(d: Diagram, a: str, b: str, g: GreenTable | None = None) -> RatFunc1:
    """Green function between two marked points a and b.

    Equal to g of their edges, except that when both sit on one edge and a
    comes after b, 1 is subtracted.
    """
    if a == b:
        raise ValueError("the two points must differ")
    ea, pa = _mark_position(d, a)
    eb, pb = _mark_position(d, b)
    g = g or green(d)
    v = g.g(ea, eb)
    if ea == eb and pa > pb:
        v = v - 1
    return v


def _chi_table(d: Diagram):
    pos = d.position()
    return lambda a, b: 1 if pos[a] <= pos[b] else 0


def residue_terms(d: Diagram, g: GreenTable | None = None):
    """det**2 * R1(c) and det**2 * R2(c0, c1) as Laurent polynomials.

    R1 is the residue of F1 at T2 = 1 and R2 that of F2, after setting
    T2 = 1 (where g2 becomes the order indicator chi).
    """
    g = g or green(d)
    h = g.scaled
    chi = _chi_table(d)
    tp = {1: LaurentPoly1.monomial(1) - 1, -1: LaurentPoly1.monomial(-1) - 1}
    r1 = {}
    for c in d.crossings:
        s, i, j = c.as_tuple()
        r1[c] = tp[s] * h(j, i) * (h(j, j) - h(i, i) - 2 * tp[s] * h(j, i))
    r2 = {}
    for c0 in d.crossings:
        s0, i0, j0 = c0.as_tuple()
        for c1 in d.crossings:
            s1, i1, j1 = c1.as_tuple()
            ind = chi(i1, i0) - chi(i1, j0) - chi(j1, i0) + chi(j1, j0)
            if ind:
                r2[c0, c1] = ind * tp[s0] * tp[s1] * h(j0, i1) * h(j1, i0)
            else:
                r2[c0, c1] = LaurentPoly1()
    return r1, r2


def residue_oracle(d: Diagram, g: GreenTable | None = None) -> RatFunc1:
    """The residue R = sum R2 + sum R1, which the proof shows is zero."""
    g = g or green(d)
    r1, r2 = residue_terms(d, g)
    total = LaurentPoly1()
    for v in r1.values():
        total = total + v
    for v in r2.values():
        total = total + v
    return RatFunc1(total) / RatFunc1(g.det * g.det)


def telescoping_check(d: Diagram, g: GreenTable | None = None) -> list[str]:
    """Check the telescoping identity behind R = 0, term by term.

    With f(c0, x) = (T**s0 - 1) g_{x i0} g_{j0+ x} (chi(x <= i0) - chi(x <= j0)),
    every pair of crossings must satisfy
    f(c0, i1+) + f(c0, j1+) - f(c0, i1) - f(c0, j1) = R2(c0, c1) + [c0 == c1] R1(c0),
    and f(c0, last) - f(c0, first) = 0. Returns the violations.
    """
    g = g or green(d)
    h = g.scaled
    chi = _chi_table(d)
    succ = d.succ
    tp = {1: LaurentPoly1.monomial(1) - 1, -1: LaurentPoly1.monomial(-1) - 1}
    r1, r2 = residue_terms(d, g)
    out: list[str] = []

    def f(c0, x):
        s0, i0, j0 = c0.as_tuple()
        ind = chi(x, i0) - chi(x, j0)
        if not ind:
            return LaurentPoly1()
        return ind * tp[s0] * h(x, i0) * h(succ[j0], x)

    for c0 in d.crossings:
        for c1 in d.crossings:
            _, i1, j1 = c1.as_tuple()
            lhs = f(c0, succ[i1]) + f(c0, succ[j1]) - f(c0, i1) - f(c0, j1)
            rhs = r2[c0, c1] + (r1[c0] if c0 == c1 else LaurentPoly1())
            if lhs != rhs:
                out.append(f"telescoping fails for {c0.as_tuple()}, {c1.as_tuple()}")
        if f(c0, d.last) != f(c0, d.first):
            out.append(f"boundary term does not vanish for {c0.as_tuple()}")
    return out


# ---------------------------------------------------------------------------
# topological criteria and symmetries


def t1_degree(th: LaurentPoly2) -> int:
    """Highest power of T1 in theta (0 for theta = 0)."""
    if th.is_zero():
        return 0
    return th.degree_range(1)[1]


def genus_bound_holds(th: LaurentPoly2, genus: int) -> bool:
    return t1_degree(th) <= 2 * genus


def fibered_multiplier(delta: LaurentPoly1, th: LaurentPoly2) -> int | None:
    """The integer s with [T2**(2d)] theta = s T1**d Delta(T1), if it exists.

    d is the highest power of T in Delta. Returns None when the coefficient
    is not an integer multiple.
    """
    d = delta.degree()
    coeff = th.coefficient_of_T2(2 * d)
    target = delta * LaurentPoly1.monomial(d)
    if coeff.is_zero():
        return 0
    if coeff.low_degree() != target.low_degree() or coeff.degree() != target.degree():
        return None
    ratio = coeff.coefficient(coeff.degree()) / target.coefficient(target.degree())
    if ratio.denominator != 1 or coeff != target * ratio:
        return None
    return int(ratio)


def fibered_criterion(delta: LaurentPoly1, th: LaurentPoly2) -> bool:
    """True when the T2**(2d) coefficient is an integer multiple (zero allowed).

    Zero must count: amphichiral fibered knots such as 4_1 have theta = 0.
    """
    return fibered_multiplier(delta, th) is not None


def hexagonal_symmetric(th: LaurentPoly2) -> dict[str, bool]:
    """Whether theta is fixed by each of the two hexagonal reflections."""
    return {name: apply_symmetry(th, name) == th for name in ("refl_h", "refl_30")}

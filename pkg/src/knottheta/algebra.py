"""Exact Laurent polynomials, rational functions and (T2 - 1)-poles.

Coefficients are exact rationals. Arithmetic is delegated to FLINT through
python-flint; this module adds Laurent shifts, canonical forms, the variable
substitutions used by the invariant, and deterministic text/JSON encodings.

A Laurent polynomial is stored as ``T**shift * p(T)`` where ``p`` is an
ordinary polynomial with nonzero constant term (or ``p == 0`` and
``shift == 0``). Two-variable polynomials use the same idea with one shift
per variable.
"""

from __future__ import annotations

import re
from fractions import Fraction
from typing import Iterable, Mapping

import flint

Rational = Fraction

_QPOLY = flint.fmpq_poly
_ZPOLY = flint.fmpz_poly
_CTX2 = flint.fmpq_mpoly_ctx.get(("T1", "T2"), "lex")


class NonExactDivision(ArithmeticError):
    """A division that was required to be exact left a remainder."""


def to_fraction(c) -> Fraction:
    """Convert an int, Fraction or FLINT scalar to a Fraction."""
    if isinstance(c, Fraction):
        return c
    if isinstance(c, int):
        return Fraction(c)
    if isinstance(c, flint.fmpq):
        return Fraction(int(c.p), int(c.q))
    if isinstance(c, flint.fmpz):
        return Fraction(int(c))
    return Fraction(c)


def _to_fmpq(c) -> flint.fmpq:
    if isinstance(c, flint.fmpq):
        return c
    c = to_fraction(c)
    return flint.fmpq(c.numerator, c.denominator)


def _valuation(p) -> int:
    """Index of the lowest nonzero coefficient of a nonzero univariate poly."""
    k = 0
    while p[k] == 0:
        k += 1
    return k


# ---------------------------------------------------------------------------
# one variable


class LaurentPoly1:
    """Laurent polynomial in one variable T with rational coefficients."""

    __slots__ = ("_v", "_p")

    def __init__(self, terms: Mapping[int, object] | int | Fraction | None = None):
        if terms is None:
            self._v, self._p = 0, _QPOLY()
            return
        if not isinstance(terms, Mapping):
            terms = {0: terms}
        items = {int(n): to_fraction(c) for n, c in terms.items()}
        items = {n: c for n, c in items.items() if c}
        if not items:
            self._v, self._p = 0, _QPOLY()
            return
        lo = min(items)
        coeffs = [0] * (max(items) - lo + 1)
        for n, c in items.items():
            coeffs[n - lo] = _to_fmpq(c)
        self._v, self._p = lo, _QPOLY(coeffs)

    @classmethod
    def _raw(cls, v: int, p) -> "LaurentPoly1":
        """Wrap ``T**v * p`` and normalize so that p(0) != 0."""
        obj = cls.__new__(cls)
        if p.is_zero():
            obj._v, obj._p = 0, _QPOLY()
            return obj
        if not isinstance(p, _QPOLY):
            p = _QPOLY(p)
        k = _valuation(p)
        if k:
            p = p.right_shift(k)
        obj._v, obj._p = v + k, p
        return obj

    @classmethod
    def monomial(cls, n: int, c=1) -> "LaurentPoly1":
        return cls({n: c})

    @classmethod
    def from_coeffs(cls, low: int, coeffs: Iterable) -> "LaurentPoly1":
        """Build from a dense coefficient list starting at exponent ``low``."""
        return cls._raw(low, _QPOLY([_to_fmpq(c) for c in coeffs]))

    # structure -------------------------------------------------------------
    def terms(self) -> dict[int, Fraction]:
        out = {}
        for i, c in enumerate(self._p.coeffs()):
            if c != 0:
                out[int(self._v) + i] = to_fraction(c)
        return out

    def is_zero(self) -> bool:
        return self._p.is_zero()

    def __bool__(self) -> bool:
        return not self._p.is_zero()

    def low_degree(self) -> int:
        if self.is_zero():
            raise ValueError("zero polynomial has no degree")
        return self._v

    def degree(self) -> int:
        if self.is_zero():
            raise ValueError("zero polynomial has no degree")
        return self._v + self._p.degree()

    def span(self) -> int:
        return 0 if self.is_zero() else self._p.degree()

    def coefficient(self, n: int) -> Fraction:
        i = n - self._v
        if self.is_zero() or i < 0 or i > self._p.degree():
            return Fraction(0)
        return to_fraction(self._p[i])

    def is_integral(self) -> bool:
        return self._p.denom() == 1

    def is_monomial(self) -> bool:
        return not self.is_zero() and self._p.degree() == 0

    # arithmetic ------------------------------------------------------------
    @staticmethod
    def _coerce(x) -> "LaurentPoly1":
        if isinstance(x, LaurentPoly1):
            return x
        if isinstance(x, (int, Fraction, flint.fmpq, flint.fmpz)):
            return LaurentPoly1(to_fraction(x))
        return NotImplemented

    def __add__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        if self.is_zero():
            return other
        if other.is_zero():
            return self
        a, b = self, other
        if a._v > b._v:
            a, b = b, a
        return LaurentPoly1._raw(a._v, a._p + b._p.left_shift(b._v - a._v))

    __radd__ = __add__

    def __neg__(self):
        obj = LaurentPoly1.__new__(LaurentPoly1)
        obj._v, obj._p = self._v, -self._p
        return obj

    def __sub__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        return self + (-other)

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        if self.is_zero() or other.is_zero():
            return LaurentPoly1()
        obj = LaurentPoly1.__new__(LaurentPoly1)
        obj._v, obj._p = self._v + other._v, self._p * other._p
        return obj

    __rmul__ = __mul__

    def __pow__(self, e: int):
        if e < 0:
            if not self.is_monomial():
                raise ValueError("only monomials have Laurent inverses")
            c = to_fraction(self._p[0])
            return LaurentPoly1({self._v * e: c ** e})
        out = LaurentPoly1(1)
        base = self
        while e:
            if e & 1:
                out = out * base
            base = base * base
            e >>= 1
        return out

    def exact_div(self, other: "LaurentPoly1") -> "LaurentPoly1":
        """Quotient self/other, which must be a Laurent polynomial."""
        if other.is_zero():
            raise ZeroDivisionError("division by zero polynomial")
        q, r = divmod(self._p, other._p)
        if not r.is_zero():
            raise NonExactDivision("Laurent division leaves a remainder")
        return LaurentPoly1._raw(self._v - other._v, q)

    def __eq__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        return self._v == other._v and self._p == other._p

    def __hash__(self):
        return hash(("L1", self._v, tuple(str(c) for c in self._p.coeffs())))

    # evaluation and substitution -------------------------------------------
    def __call__(self, t):
        """Exact value at a nonzero rational t."""
        t = to_fraction(t)
        if self.is_zero():
            return Fraction(0)
        val = to_fraction(self._p(_to_fmpq(t)))
        return val * t ** self._v

    def inverse_variable(self) -> "LaurentPoly1":
        """Substitute T -> 1/T."""
        if self.is_zero():
            return self
        rev = list(reversed(self._p.coeffs()))
        return LaurentPoly1._raw(-(self._v + self._p.degree()), _QPOLY(rev))

    def scaled_exponents(self, k: int) -> "LaurentPoly1":
        """Substitute T -> T**k for a positive integer k."""
        return LaurentPoly1({n * k: c for n, c in self.terms().items()})

    # text ------------------------------------------------------------------
    def __repr__(self):
        return f"LaurentPoly1({to_text(self)!r})"

    def __str__(self):
        return to_text(self)


def T() -> LaurentPoly1:
    """The variable T."""
    return LaurentPoly1({1: 1})


# ---------------------------------------------------------------------------
# rational functions in one variable


class RatFunc1:
    """Reduced quotient ``T**v * N(T) / D(T)`` with N, D integer polynomials.

    Canonical form: gcd(N, D) = 1 in Z[T] (content included), N(0) != 0,
    D(0) != 0 and the leading coefficient of D is positive. Rational
    constants such as 1/2 are represented with a constant denominator.
    """

    __slots__ = ("_v", "_n", "_d")

    def __init__(self, num=0, den=1):
        if isinstance(num, RatFunc1) and den == 1:
            self._v, self._n, self._d = num._v, num._n, num._d
            return
        n = _laurent_to_int_parts(num)
        d = _laurent_to_int_parts(den)
        if d[1].is_zero():
            raise ZeroDivisionError("zero denominator")
        # n = T^a N / c_n, d = T^b D / c_d
        a, N, cn = n
        b, D, cd = d
        self._set(a - b, N * cd, D * cn)

    def _set(self, v, N, D):
        if N.is_zero():
            self._v, self._n, self._d = 0, _ZPOLY(), _ZPOLY([1])
            return
        k = _valuation(N)
        if k:
            N = N.right_shift(k)
            v += k
        k = _valuation(D)
        if k:
            D = D.right_shift(k)
            v -= k
        if not D.is_one():
            g = N.gcd(D)
            if not g.is_one():
                N = N // g
                D = D // g
            if D.leading_coefficient() < 0:
                N, D = -N, -D
        self._v, self._n, self._d = v, N, D

    @classmethod
    def _raw(cls, v, N, D):
        obj = cls.__new__(cls)
        obj._set(v, N, D)
        return obj

    @classmethod
    def _exact(cls, v, N, D):
        """Wrap parts already known to be canonical."""
        obj = cls.__new__(cls)
        obj._v, obj._n, obj._d = v, N, D
        return obj

    # views -----------------------------------------------------------------
    @property
    def num(self) -> LaurentPoly1:
        return LaurentPoly1._raw(self._v, _QPOLY(self._n))

    @property
    def den(self) -> LaurentPoly1:
        return LaurentPoly1._raw(0, _QPOLY(self._d))

    def is_polynomial(self) -> bool:
        return self._d.is_one()

    def to_laurent(self) -> LaurentPoly1:
        if self._d.degree() != 0:
            raise NonExactDivision("rational function is not a Laurent polynomial")
        return LaurentPoly1._raw(self._v, _QPOLY(self._n) / int(self._d[0]))

    def is_zero(self) -> bool:
        return self._n.is_zero()

    def __bool__(self):
        return not self._n.is_zero()

    def pivot_cost(self) -> int:
        """Degree span of numerator plus denominator (elimination heuristic)."""
        if self._n.is_zero():
            return 0
        return self._n.degree() + self._d.degree()

    # arithmetic ------------------------------------------------------------
    @staticmethod
    def _coerce(x):
        if isinstance(x, RatFunc1):
            return x
        if isinstance(x, (int, Fraction, LaurentPoly1, flint.fmpq, flint.fmpz)):
            return RatFunc1(x)
        return NotImplemented

    def __add__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        if self._n.is_zero():
            return other
        if other._n.is_zero():
            return self
        v = min(self._v, other._v)
        n1 = self._n.left_shift(self._v - v) if self._v != v else self._n
        n2 = other._n.left_shift(other._v - v) if other._v != v else other._n
        d1, d2 = self._d, other._d
        if d1 == d2:
            return RatFunc1._raw(v, n1 + n2, d1)
        g = d1.gcd(d2)
        if g.is_one():
            return RatFunc1._raw(v, n1 * d2 + n2 * d1, d1 * d2)
        e1, e2 = d1 // g, d2 // g
        return RatFunc1._raw(v, n1 * e2 + n2 * e1, d1 * e2)

    __radd__ = __add__

    def __neg__(self):
        return RatFunc1._exact(self._v, -self._n, self._d)

    def __sub__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        return self + (-other)

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        if self._n.is_zero() or other._n.is_zero():
            return RatFunc1()
        v = self._v + other._v
        n1, d1, n2, d2 = self._n, self._d, other._n, other._d
        if not d2.is_one():
            g = n1.gcd(d2)
            if not g.is_one():
                n1, d2 = n1 // g, d2 // g
        if not d1.is_one():
            g = n2.gcd(d1)
            if not g.is_one():
                n2, d1 = n2 // g, d1 // g
        N, D = n1 * n2, d1 * d2
        if D.leading_coefficient() < 0:
            N, D = -N, -D
        return RatFunc1._exact(v, N, D)

    __rmul__ = __mul__

    def inverse(self) -> "RatFunc1":
        if self._n.is_zero():
            raise ZeroDivisionError("inverse of zero rational function")
        N, D = self._d, self._n
        if D.leading_coefficient() < 0:
            N, D = -N, -D
        return RatFunc1._exact(-self._v, N, D)

    def __truediv__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        return self * other.inverse()

    def __rtruediv__(self, other):
        return self._coerce(other) * self.inverse()

    def __pow__(self, e: int):
        if e < 0:
            return self.inverse() ** (-e)
        out = RatFunc1(1)
        for _ in range(e):
            out = out * self
        return out

    def __eq__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        return self._v == other._v and self._n == other._n and self._d == other._d

    def __hash__(self):
        return hash(("R1", self._v, str(self._n), str(self._d)))

    def __call__(self, t):
        t = to_fraction(t)
        q = flint.fmpq(t.numerator, t.denominator)
        dv = self._d(q)
        if dv == 0:
            raise ZeroDivisionError("evaluation at a pole")
        return to_fraction(self._n(q) / dv) * t ** self._v

    def numerator_times(self, m: LaurentPoly1) -> LaurentPoly1:
        """The Laurent polynomial m * self, which must be denominator-free."""
        mm = _laurent_to_int_parts(m)
        a, M, cm = mm
        q, r = divmod(M * self._n, self._d)
        if not r.is_zero():
            raise NonExactDivision("multiplier does not clear the denominator")
        return LaurentPoly1._raw(a + self._v, _QPOLY(q) / int(cm))

    def __repr__(self):
        return f"RatFunc1(({to_text(self.num)}) / ({to_text(self.den)}))"

    __str__ = __repr__


def _laurent_to_int_parts(x):
    """Write x as (shift, integer poly, positive integer divisor)."""
    if isinstance(x, RatFunc1):
        if not x._d.degree() == 0:
            raise TypeError("expected a Laurent polynomial")
        return x._v, x._n, int(x._d[0])
    if not isinstance(x, LaurentPoly1):
        x = LaurentPoly1(to_fraction(x))
    if x.is_zero():
        return 0, _ZPOLY(), 1
    den = int(x._p.denom())
    return x._v, _ZPOLY(x._p.numer()), den


# ---------------------------------------------------------------------------
# two variables


class LaurentPoly2:
    """Laurent polynomial in T1, T2 with rational coefficients."""

    __slots__ = ("_s1", "_s2", "_m")

    def __init__(self, terms: Mapping[tuple[int, int], object] | int | Fraction | None = None):
        if terms is None:
            terms = {}
        elif not isinstance(terms, Mapping):
            terms = {(0, 0): terms}
        items = {(int(a), int(b)): to_fraction(c) for (a, b), c in terms.items()}
        items = {k: c for k, c in items.items() if c}
        if not items:
            self._s1, self._s2, self._m = 0, 0, _CTX2.from_dict({})
            return
        lo1 = min(a for a, _ in items)
        lo2 = min(b for _, b in items)
        self._s1, self._s2 = lo1, lo2
        self._m = _CTX2.from_dict({(a - lo1, b - lo2): _to_fmpq(c) for (a, b), c in items.items()})

    @classmethod
    def _raw(cls, s1, s2, m) -> "LaurentPoly2":
        obj = cls.__new__(cls)
        if m.is_zero():
            obj._s1, obj._s2, obj._m = 0, 0, m
            return obj
        mono = m.term_content()
        e1, e2 = mono.monoms()[0]
        if e1 or e2:
            m = m / _CTX2.from_dict({(e1, e2): 1})
        obj._s1, obj._s2, obj._m = int(s1 + e1), int(s2 + e2), m
        return obj

    @classmethod
    def from_mpoly(cls, m, s1: int = 0, s2: int = 0) -> "LaurentPoly2":
        """Wrap ``T1**s1 T2**s2 * m`` for an fmpz/fmpq mpoly in (T1, T2)."""
        if not isinstance(m, flint.fmpq_mpoly):
            m = _CTX2.from_dict({k: flint.fmpq(v) for k, v in m.to_dict().items()})
        return cls._raw(s1, s2, m)

    @classmethod
    def monomial(cls, n1: int, n2: int, c=1) -> "LaurentPoly2":
        return cls({(n1, n2): c})

    def terms(self) -> dict[tuple[int, int], Fraction]:
        s1, s2 = self._s1, self._s2
        return {(int(a) + s1, int(b) + s2): to_fraction(c)
                for (a, b), c in self._m.to_dict().items()}

    def is_zero(self) -> bool:
        return self._m.is_zero()

    def __bool__(self):
        return not self._m.is_zero()

    def is_integral(self) -> bool:
        return all(c.denominator == 1 for c in self.terms().values())

    def degree_range(self, var: int) -> tuple[int, int]:
        """(min, max) exponent of T1 (var=1) or T2 (var=2)."""
        if self.is_zero():
            raise ValueError("zero polynomial has no degree")
        ex = [k[var - 1] for k in self.terms()]
        return min(ex), max(ex)

    def coefficient_of_T2(self, k: int) -> LaurentPoly1:
        """The coefficient of T2**k, as a polynomial in T1 (written as T)."""
        return LaurentPoly1({a: c for (a, b), c in self.terms().items() if b == k})

    @staticmethod
    def _coerce(x):
        if isinstance(x, LaurentPoly2):
            return x
        if isinstance(x, (int, Fraction, flint.fmpq, flint.fmpz)):
            return LaurentPoly2(to_fraction(x))
        return NotImplemented

    def __add__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        if self.is_zero():
            return other
        if other.is_zero():
            return self
        s1 = min(self._s1, other._s1)
        s2 = min(self._s2, other._s2)
        return LaurentPoly2._raw(s1, s2, self._lifted(s1, s2) + other._lifted(s1, s2))

    __radd__ = __add__

    def _lifted(self, s1, s2):
        d1, d2 = self._s1 - s1, self._s2 - s2
        if d1 == 0 and d2 == 0:
            return self._m
        return self._m * _CTX2.from_dict({(d1, d2): 1})

    def __neg__(self):
        obj = LaurentPoly2.__new__(LaurentPoly2)
        obj._s1, obj._s2, obj._m = self._s1, self._s2, -self._m
        return obj

    def __sub__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        return self + (-other)

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        if self.is_zero() or other.is_zero():
            return LaurentPoly2()
        obj = LaurentPoly2.__new__(LaurentPoly2)
        obj._s1, obj._s2 = self._s1 + other._s1, self._s2 + other._s2
        obj._m = self._m * other._m
        return obj

    __rmul__ = __mul__

    def __pow__(self, e: int):
        if e < 0:
            t = self.terms()
            if len(t) != 1:
                raise ValueError("only monomials have Laurent inverses")
            (a, b), c = next(iter(t.items()))
            return LaurentPoly2({(a * e, b * e): c ** e})
        out = LaurentPoly2(1)
        for _ in range(e):
            out = out * self
        return out

    def __eq__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        return (self._s1, self._s2) == (other._s1, other._s2) and self._m == other._m

    def __hash__(self):
        return hash(("L2", tuple(sorted(self.terms().items()))))

    def __call__(self, t1, t2):
        t1, t2 = to_fraction(t1), to_fraction(t2)
        if self.is_zero():
            return Fraction(0)
        val = to_fraction(self._m(_to_fmpq(t1), _to_fmpq(t2)))
        return val * t1 ** self._s1 * t2 ** self._s2

    def map_exponents(self, f) -> "LaurentPoly2":
        """Apply an exponent map (n1, n2) -> f(n1, n2) termwise."""
        out: dict[tuple[int, int], Fraction] = {}
        for k, c in self.terms().items():
            nk = f(*k)
            out[nk] = out.get(nk, 0) + c
        return LaurentPoly2(out)

    def at_T2_equal_one(self) -> LaurentPoly1:
        """Substitute T2 -> 1, giving a polynomial in T1 (written as T)."""
        out: dict[int, Fraction] = {}
        for (a, _), c in self.terms().items():
            out[a] = out.get(a, 0) + c
        return LaurentPoly1(out)

    def divides_by_T2_minus_one(self) -> bool:
        return self.at_T2_equal_one().is_zero()

    def divide_T2_minus_one(self) -> "LaurentPoly2":
        """Exact division by (T2 - 1); raises NonExactDivision otherwise."""
        if self.is_zero():
            return self
        q, r = divmod(self._m, _T2_MINUS_ONE)
        if not r.is_zero():
            raise NonExactDivision("numerator is not divisible by (T2 - 1)")
        return LaurentPoly2._raw(self._s1, self._s2, q)

    def __repr__(self):
        return f"LaurentPoly2({to_text(self)!r})"

    def __str__(self):
        return to_text(self)


_T2_MINUS_ONE = _CTX2.from_dict({(0, 1): 1, (0, 0): -1})


def T1() -> LaurentPoly2:
    return LaurentPoly2({(1, 0): 1})


def T2() -> LaurentPoly2:
    return LaurentPoly2({(0, 1): 1})


# ---------------------------------------------------------------------------
# poles at T2 = 1


class PoleAtOne:
    """The value num / (T2 - 1)**pole_order, kept reduced."""

    __slots__ = ("num", "pole_order")

    def __init__(self, num: LaurentPoly2 | int | Fraction = 0, pole_order: int = 0):
        if pole_order < 0:
            raise ValueError("pole order must be non-negative")
        if not isinstance(num, LaurentPoly2):
            num = LaurentPoly2(to_fraction(num))
        while pole_order and num.divides_by_T2_minus_one():
            num = num.divide_T2_minus_one()
            pole_order -= 1
        if num.is_zero():
            pole_order = 0
        self.num = num
        self.pole_order = pole_order

    @staticmethod
    def _coerce(x):
        if isinstance(x, PoleAtOne):
            return x
        if isinstance(x, (LaurentPoly2, int, Fraction)):
            return PoleAtOne(x)
        return NotImplemented

    def _lift(self, k: int) -> LaurentPoly2:
        out = self.num
        for _ in range(k - self.pole_order):
            out = out * _T2M1
        return out

    def __add__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        k = max(self.pole_order, other.pole_order)
        return PoleAtOne(self._lift(k) + other._lift(k), k)

    __radd__ = __add__

    def __neg__(self):
        return PoleAtOne(-self.num, self.pole_order)

    def __sub__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        return self + (-other)

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        return PoleAtOne(self.num * other.num, self.pole_order + other.pole_order)

    __rmul__ = __mul__

    def __eq__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        return self.pole_order == other.pole_order and self.num == other.num

    def __hash__(self):
        return hash(("P", self.pole_order, self.num))

    def __call__(self, t1, t2):
        t2 = to_fraction(t2)
        if self.pole_order and t2 == 1:
            raise ZeroDivisionError("evaluation at the pole T2 = 1")
        return self.num(t1, t2) / (t2 - 1) ** self.pole_order

    def __repr__(self):
        return f"PoleAtOne(({to_text(self.num)}) / (T2 - 1)^{self.pole_order})"


_T2M1 = LaurentPoly2({(0, 1): 1, (0, 0): -1})


def exact_divide_by_pole(v: PoleAtOne) -> LaurentPoly2:
    """Return v as a Laurent polynomial; the pole must cancel exactly."""
    if v.pole_order:
        raise NonExactDivision(
            f"(T2 - 1)^{v.pole_order} does not divide the numerator")
    return v.num


# ---------------------------------------------------------------------------
# substitutions and symmetries

SUBSTITUTIONS = ("T1", "T2", "T1T2", "Tinv")


def substitute_T(p: LaurentPoly1, target: str):
    """Substitute T -> T1, T2, T1*T2 (two-variable result) or T -> 1/T."""
    if target == "Tinv":
        return p.inverse_variable()
    if target == "T1":
        f = lambda n: (n, 0)
    elif target == "T2":
        f = lambda n: (0, n)
    elif target == "T1T2":
        f = lambda n: (n, n)
    else:
        raise ValueError(f"unknown substitution {target!r}")
    return LaurentPoly2({f(n): c for n, c in p.terms().items()})


SYMMETRIES = {
    # (T1, T2) -> (T1, 1/(T1 T2))
    "refl_h": lambda n1, n2: (n1 - n2, -n2),
    # (T1, T2) -> (T1 T2, 1/T2)
    "refl_30": lambda n1, n2: (n1, n1 - n2),
}


def apply_symmetry(p: LaurentPoly2, s: str) -> LaurentPoly2:
    """Apply one of the hexagonal reflections to the exponents of p."""
    try:
        f = SYMMETRIES[s]
    except KeyError:
        raise ValueError(f"unknown symmetry {s!r}") from None
    return p.map_exponents(f)


# ---------------------------------------------------------------------------
# text and JSON encodings


def _coeff_text(c: Fraction) -> str:
    return str(c.numerator) if c.denominator == 1 else f"{c.numerator}/{c.denominator}"


def _power(var: str, n: int) -> str:
    return var if n == 1 else f"{var}^{n}"


def _join(parts: list[tuple[Fraction, str]]) -> str:
    if not parts:
        return "0"
    out = []
    for idx, (c, mono) in enumerate(parts):
        neg = c < 0
        a = -c if neg else c
        if mono and a == 1:
            body = mono
        elif mono:
            body = f"{_coeff_text(a)} {mono}"
        else:
            body = _coeff_text(a)
        if idx == 0:
            out.append(f"-{body}" if neg else body)
        else:
            out.append(f" - {body}" if neg else f" + {body}")
    return "".join(out)


def to_text(p) -> str:
    """Canonical text: terms ascending by exponent (lexicographic in 2 vars)."""
    if isinstance(p, LaurentPoly1):
        parts = []
        for n, c in sorted(p.terms().items()):
            parts.append((c, _power("T", n) if n else ""))
        return _join(parts)
    if isinstance(p, LaurentPoly2):
        parts = []
        for (a, b), c in sorted(p.terms().items()):
            mono = " ".join(x for x in (
                _power("T1", a) if a else "", _power("T2", b) if b else "") if x)
            parts.append((c, mono))
        return _join(parts)
    raise TypeError(f"cannot format {type(p).__name__}")


_TERM = re.compile(
    r"\s*([+-])?\s*(\d+(?:/\d+)?)?\s*((?:T[12]?(?:\^-?\d+)?\s*)*)")
_FACTOR = re.compile(r"(T[12]?)(?:\^(-?\d+))?")


def _parse_terms(text: str):
    text = text.strip()
    if text == "0":
        return []
    pos, out = 0, []
    while pos < len(text):
        m = _TERM.match(text, pos)
        if not m or m.end() == pos:
            raise ValueError(f"cannot parse polynomial near {text[pos:]!r}")
        sign, coeff, monos = m.groups()
        if out and sign is None:
            raise ValueError(f"missing operator near {text[pos:]!r}")
        if coeff is None and not monos.strip():
            raise ValueError(f"empty term near {text[pos:]!r}")
        c = Fraction(coeff) if coeff else Fraction(1)
        if sign == "-":
            c = -c
        exps = {}
        for var, e in _FACTOR.findall(monos):
            if var in exps:
                raise ValueError(f"repeated variable {var}")
            exps[var] = int(e) if e else 1
        out.append((c, exps))
        pos = m.end()
    return out


def parse_laurent1(text: str) -> LaurentPoly1:
    """Inverse of to_text for one-variable polynomials in T."""
    acc: dict[int, Fraction] = {}
    for c, exps in _parse_terms(text):
        if set(exps) - {"T"}:
            raise ValueError("one-variable polynomials use the variable T")
        n = exps.get("T", 0)
        acc[n] = acc.get(n, 0) + c
    return LaurentPoly1(acc)


def parse_laurent2(text: str) -> LaurentPoly2:
    """Inverse of to_text for two-variable polynomials in T1, T2."""
    acc: dict[tuple[int, int], Fraction] = {}
    for c, exps in _parse_terms(text):
        if set(exps) - {"T1", "T2"}:
            raise ValueError("two-variable polynomials use T1 and T2")
        k = (exps.get("T1", 0), exps.get("T2", 0))
        acc[k] = acc.get(k, 0) + c
    return LaurentPoly2(acc)


def to_json(p) -> list[list[int]]:
    """[[n, num, den], ...] for one variable, [[n1, n2, num, den], ...] for two."""
    if isinstance(p, LaurentPoly1):
        return [[int(n), int(c.numerator), int(c.denominator)] for n, c in sorted(p.terms().items())]
    if isinstance(p, LaurentPoly2):
        return [[int(a), int(b), int(c.numerator), int(c.denominator)]
                for (a, b), c in sorted(p.terms().items())]
    raise TypeError(f"cannot encode {type(p).__name__}")


def from_json(records: list[list[int]]):
    """Decode the output of to_json; the record width selects the type."""
    if not records:
        return LaurentPoly2()
    width = len(records[0])
    if width == 3:
        return LaurentPoly1({n: Fraction(a, b) for n, a, b in records})
    if width == 4:
        return LaurentPoly2({(n1, n2): Fraction(a, b) for n1, n2, a, b in records})
    raise ValueError("records must have 3 or 4 fields")


# ---------------------------------------------------------------------------
# reference gcd


def euclid_gcd(a: list[Fraction], b: list[Fraction]) -> list[Fraction]:
    """Monic gcd of two dense coefficient lists (lowest degree first).

    A plain Euclidean algorithm over the rationals, kept as an independent
    cross-check of the library gcd used by RatFunc1.
    """
    def trim(p):
        p = list(p)
        while p and p[-1] == 0:
            p.pop()
        return p

    a, b = trim(map(Fraction, a)), trim(map(Fraction, b))
    while b:
        r = a[:]
        while len(r) >= len(b) and r:
            f = r[-1] / b[-1]
            shift = len(r) - len(b)
            for i, c in enumerate(b):
                r[i + shift] -= f * c
            r = trim(r)
        a, b = b, r
    if not a:
        return []
    lead = a[-1]
    return [c / lead for c in a]

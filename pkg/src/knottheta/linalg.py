"""Dense square matrices over an exact ring, with determinant and inverse.

The ring is anything whose elements support ``+ - * /`` exactly and whose
zero is falsy: RatFunc1, Fraction, or python-flint's fmpq. Rows and columns
are addressed by arbitrary hashable labels through an explicit label map.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from typing import Callable, Hashable, Sequence


class SingularMatrix(ArithmeticError):
    """The matrix has determinant zero."""


@dataclass
class Matrix:
    labels: list
    rows: list[list]
    ring: Callable = Fraction
    index: dict = field(init=False, repr=False)

    def __post_init__(self):
        n = len(self.labels)
        if n == 0 or len(self.rows) != n or any(len(r) != n for r in self.rows):
            raise ValueError("matrix must be square, nonempty, and match its labels")
        self.index = {lab: k for k, lab in enumerate(self.labels)}
        if len(self.index) != n:
            raise ValueError("labels must be distinct")

    @property
    def dim(self) -> int:
        return len(self.labels)

    @classmethod
    def zeros(cls, labels: Sequence[Hashable], ring: Callable = Fraction) -> "Matrix":
        n = len(labels)
        z = ring(0)
        return cls(list(labels), [[z] * n for _ in range(n)], ring)

    @classmethod
    def identity(cls, labels: Sequence[Hashable], ring: Callable = Fraction) -> "Matrix":
        m = cls.zeros(labels, ring)
        one = ring(1)
        for k in range(m.dim):
            m.rows[k][k] = one
        return m

    def __getitem__(self, key):
        a, b = key
        return self.rows[self.index[a]][self.index[b]]

    def __setitem__(self, key, value):
        a, b = key
        self.rows[self.index[a]][self.index[b]] = value

    def add_at(self, a, b, value):
        i, j = self.index[a], self.index[b]
        self.rows[i][j] = self.rows[i][j] + value

    def map(self, f: Callable, ring: Callable | None = None) -> "Matrix":
        """Apply f entrywise (for example a specialization T -> t)."""
        return Matrix(list(self.labels), [[f(x) for x in r] for r in self.rows], ring or self.ring)

    def __matmul__(self, other: "Matrix") -> "Matrix":
        if self.labels != other.labels:
            raise ValueError("label mismatch in matrix product")
        n = self.dim
        z = self.ring(0)
        out = []
        cols = [[other.rows[k][j] for k in range(n)] for j in range(n)]
        for r in self.rows:
            nz = [(k, x) for k, x in enumerate(r) if x]
            row = []
            for j in range(n):
                col = cols[j]
                acc = z
                for k, x in nz:
                    y = col[k]
                    if y:
                        acc = acc + x * y
                row.append(acc)
            out.append(row)
        return Matrix(list(self.labels), out, self.ring)

    def __eq__(self, other):
        return (isinstance(other, Matrix) and self.labels == other.labels
                and all(a == b for ra, rb in zip(self.rows, other.rows) for a, b in zip(ra, rb)))

    def is_identity(self) -> bool:
        return all((x == 1) if i == j else (not x)
                   for i, r in enumerate(self.rows) for j, x in enumerate(r))

    def dump(self, fmt: Callable = str) -> str:
        """Debug listing, one row per line, in label order."""
        lines = []
        for lab, r in zip(self.labels, self.rows):
            lines.append(f"{lab}: " + " | ".join(fmt(x) for x in r))
        return "\n".join(lines)


def _cost(x) -> int:
    f = getattr(x, "pivot_cost", None)
    if f is not None:
        return f()
    if isinstance(x, Fraction):
        return x.numerator.bit_length() + x.denominator.bit_length()
    p = getattr(x, "p", None)
    if p is not None:
        return int(p).bit_length() + int(x.q).bit_length()
    return 0


def _permutation_sign(perm: list[int]) -> int:
    seen = [False] * len(perm)
    sign = 1
    for start in range(len(perm)):
        if seen[start]:
            continue
        length = 0
        k = start
        while not seen[k]:
            seen[k] = True
            k = perm[k]
            length += 1
        if length % 2 == 0:
            sign = -sign
    return sign


def eliminate(m: Matrix, want_inverse: bool = True):
    """Gauss-Jordan elimination; returns (det, inverse or None).

    Columns are cleared from last to first. Within a column the pivot is the
    entry of least ``pivot_cost`` (degree span for rational functions, bit
    size for rationals), ties going to the diagonal row and then the lowest
    row. Going right to left suits matrices that are identity plus a
    strictly-upper part plus a few lower entries, as knot matrices are.
    Zero entries are stored as None and skipped.
    """
    n = m.dim
    one = m.ring(1)
    left = [[x if x else None for x in r] for r in m.rows]
    right = None
    if want_inverse:
        right = [[None] * n for _ in range(n)]
        for k in range(n):
            right[k][k] = one
    used = [False] * n
    perm = [0] * n
    det = one
    for col in range(n - 1, -1, -1):
        best = None
        for r in range(n):
            if used[r]:
                continue
            x = left[r][col]
            if x is None:
                continue
            key = (_cost(x), r != col, r)
            if best is None or key < best[0]:
                best = (key, r)
        if best is None:
            raise SingularMatrix("no pivot available; determinant is zero")
        r = best[1]
        used[r] = True
        perm[col] = r
        prow = left[r]
        piv = prow[col]
        det = det * piv
        if not (piv == 1):
            inv = one / piv
            for c in range(n):
                if prow[c] is not None:
                    prow[c] = prow[c] * inv
            if right is not None:
                rr = right[r]
                for c in range(n):
                    if rr[c] is not None:
                        rr[c] = rr[c] * inv
        nz_left = [(c, prow[c]) for c in range(n) if prow[c] is not None and c != col]
        nz_right = []
        if right is not None:
            nz_right = [(c, x) for c, x in enumerate(right[r]) if x is not None]
        for q in range(n):
            if q == r:
                continue
            qrow = left[q]
            f = qrow[col]
            if f is None:
                continue
            qrow[col] = None
            for c, x in nz_left:
                y = qrow[c]
                v = -(f * x) if y is None else y - f * x
                qrow[c] = v if v else None
            if right is not None:
                qr = right[q]
                for c, x in nz_right:
                    y = qr[c]
                    v = -(f * x) if y is None else y - f * x
                    qr[c] = v if v else None
    det = det * _permutation_sign(perm)
    inverse = None
    if right is not None:
        z = m.ring(0)
        inverse = Matrix(list(m.labels),
                         [[z if x is None else x for x in right[perm[col]]] for col in range(n)],
                         m.ring)
    return det, inverse


def det(m: Matrix):
    """Exact determinant."""
    try:
        d, _ = eliminate(m, want_inverse=False)
    except SingularMatrix:
        return m.ring(0)
    return d


def invert(m: Matrix, verify: bool = False) -> Matrix:
    """Exact inverse; with verify=True also checks m @ inverse == I."""
    _, inv = eliminate(m, want_inverse=True)
    if verify and not (m @ inv).is_identity():
        raise ArithmeticError("inverse check m @ m^-1 == I failed")
    return inv


def det_and_inverse(m: Matrix, verify: bool = False):
    d, inv = eliminate(m, want_inverse=True)
    if verify and not (m @ inv).is_identity():
        raise ArithmeticError("inverse check m @ m^-1 == I failed")
    return d, inv

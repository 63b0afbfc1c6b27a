"""Exact linear algebra over the rationals and the integers.

All matrices are dense, row-major, and immutable by convention.  Rational
entries are ``fractions.Fraction``; integer matrices hold plain ``int``.
There is no floating point anywhere: the quantities this package certifies
(ranks, dimensions, invariant factors) are discrete, so every computation
is exact.

Row reduction is delegated to the fraction-free Gauss-Jordan kernel in
``incidalg._core`` (compiled when available): rational matrices are scaled
row-wise to integers first, which changes neither the RREF, the kernel,
nor solution sets.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction

from incidalg._core import fraction_free_gauss_jordan


class RatMatrix:
    """Dense matrix of exact rationals, stored flat in row-major order."""

    __slots__ = ("rows", "cols", "entries")

    def __init__(self, rows: int, cols: int, entries):
        entries = [Fraction(x) for x in entries]
        if len(entries) != rows * cols:
            raise ValueError(
                f"expected {rows * cols} entries, got {len(entries)}"
            )
        self.rows = rows
        self.cols = cols
        self.entries = entries

    @classmethod
    def from_rows(cls, rows) -> "RatMatrix":
        nr = len(rows)
        nc = len(rows[0]) if nr else 0
        if any(len(r) != nc for r in rows):
            raise ValueError("ragged rows")
        return cls(nr, nc, [x for row in rows for x in row])

    @classmethod
    def zeros(cls, rows: int, cols: int) -> "RatMatrix":
        return cls(rows, cols, [0] * (rows * cols))

    @classmethod
    def identity(cls, n: int) -> "RatMatrix":
        m = cls.zeros(n, n)
        for i in range(n):
            m.entries[i * n + i] = Fraction(1)
        return m

    def __getitem__(self, ij) -> Fraction:
        i, j = ij
        return self.entries[i * self.cols + j]

    def row(self, i: int):
        return self.entries[i * self.cols : (i + 1) * self.cols]

    def to_rows(self):
        return [self.row(i) for i in range(self.rows)]

    def __eq__(self, other) -> bool:
        return (
            isinstance(other, RatMatrix)
            and self.rows == other.rows
            and self.cols == other.cols
            and self.entries == other.entries
        )

    def __hash__(self):
        return hash((self.rows, self.cols, tuple(self.entries)))

    def __repr__(self) -> str:
        return f"RatMatrix({self.rows}x{self.cols}, {self.to_rows()!r})"

    def is_zero(self) -> bool:
        return all(x == 0 for x in self.entries)

    def transpose(self) -> "RatMatrix":
        out = [Fraction(0)] * (self.rows * self.cols)
        for i in range(self.rows):
            base = i * self.cols
            for j in range(self.cols):
                out[j * self.rows + i] = self.entries[base + j]
        m = RatMatrix.__new__(RatMatrix)
        m.rows, m.cols, m.entries = self.cols, self.rows, out
        return m

    def mul(self, other: "RatMatrix") -> "RatMatrix":
        if self.cols != other.rows:
            raise ValueError("dimension mismatch in matrix product")
        n, k, m = self.rows, self.cols, other.cols
        out = [Fraction(0)] * (n * m)
        for i in range(n):
            arow = self.entries[i * k : (i + 1) * k]
            for t in range(k):
                a = arow[t]
                if a:
                    brow = other.entries[t * m : (t + 1) * m]
                    base = i * m
                    for j in range(m):
                        if brow[j]:
                            out[base + j] += a * brow[j]
        r = RatMatrix.__new__(RatMatrix)
        r.rows, r.cols, r.entries = n, m, out
        return r

    def add(self, other: "RatMatrix") -> "RatMatrix":
        if (self.rows, self.cols) != (other.rows, other.cols):
            raise ValueError("dimension mismatch in matrix sum")
        r = RatMatrix.__new__(RatMatrix)
        r.rows, r.cols = self.rows, self.cols
        r.entries = [a + b for a, b in zip(self.entries, other.entries)]
        return r

    def sub(self, other: "RatMatrix") -> "RatMatrix":
        if (self.rows, self.cols) != (other.rows, other.cols):
            raise ValueError("dimension mismatch in matrix difference")
        r = RatMatrix.__new__(RatMatrix)
        r.rows, r.cols = self.rows, self.cols
        r.entries = [a - b for a, b in zip(self.entries, other.entries)]
        return r

    def scaled(self, c) -> "RatMatrix":
        c = Fraction(c)
        r = RatMatrix.__new__(RatMatrix)
        r.rows, r.cols = self.rows, self.cols
        r.entries = [c * a for a in self.entries]
        return r

    def hstack(self, other: "RatMatrix") -> "RatMatrix":
        if self.rows != other.rows:
            raise ValueError("row counts differ in hstack")
        out = []
        for i in range(self.rows):
            out.extend(self.row(i))
            out.extend(other.row(i))
        r = RatMatrix.__new__(RatMatrix)
        r.rows, r.cols, r.entries = self.rows, self.cols + other.cols, out
        return r

    def column(self, j: int):
        return [self.entries[i * self.cols + j] for i in range(self.rows)]


class IntMatrix:
    """Dense matrix of arbitrary-precision integers, flat row-major."""

    __slots__ = ("rows", "cols", "entries")

    def __init__(self, rows: int, cols: int, entries):
        entries = [int(x) for x in entries]
        if len(entries) != rows * cols:
            raise ValueError(
                f"expected {rows * cols} entries, got {len(entries)}"
            )
        self.rows = rows
        self.cols = cols
        self.entries = entries

    @classmethod
    def from_rows(cls, rows) -> "IntMatrix":
        nr = len(rows)
        nc = len(rows[0]) if nr else 0
        if any(len(r) != nc for r in rows):
            raise ValueError("ragged rows")
        return cls(nr, nc, [x for row in rows for x in row])

    @classmethod
    def identity(cls, n: int) -> "IntMatrix":
        m = cls(n, n, [0] * (n * n))
        for i in range(n):
            m.entries[i * n + i] = 1
        return m

    def __getitem__(self, ij) -> int:
        i, j = ij
        return self.entries[i * self.cols + j]

    def to_rows(self):
        return [
            self.entries[i * self.cols : (i + 1) * self.cols]
            for i in range(self.rows)
        ]

    def __eq__(self, other) -> bool:
        return (
            isinstance(other, IntMatrix)
            and self.rows == other.rows
            and self.cols == other.cols
            and self.entries == other.entries
        )

    def __repr__(self) -> str:
        return f"IntMatrix({self.rows}x{self.cols}, {self.to_rows()!r})"

    def mul(self, other: "IntMatrix") -> "IntMatrix":
        if self.cols != other.rows:
            raise ValueError("dimension mismatch in matrix product")
        n, k, m = self.rows, self.cols, other.cols
        out = [0] * (n * m)
        for i in range(n):
            for t in range(k):
                a = self.entries[i * k + t]
                if a:
                    base = i * m
                    rowt = t * m
                    for j in range(m):
                        out[base + j] += a * other.entries[rowt + j]
        return IntMatrix(n, m, out)

    def transpose(self) -> "IntMatrix":
        out = [0] * (self.rows * self.cols)
        for i in range(self.rows):
            for j in range(self.cols):
                out[j * self.rows + i] = self.entries[i * self.cols + j]
        return IntMatrix(self.cols, self.rows, out)

    def to_rational(self) -> RatMatrix:
        return RatMatrix(self.rows, self.cols, self.entries)


@dataclass(frozen=True)
class SnfResult:
    """Invariant factors of an integer matrix.

    ``diagonal`` has length min(rows, cols): the nonzero invariant factors
    (each dividing the next) followed by zeros.  ``rank`` counts the
    nonzero factors.
    """

    diagonal: tuple
    rank: int

    @property
    def nonzero_factors(self) -> tuple:
        return self.diagonal[: self.rank]


def _scaled_integer_rows(m: RatMatrix):
    """Clear denominators row by row; row scaling preserves RREF/kernel."""
    flat = []
    for i in range(m.rows):
        row = m.row(i)
        den = 1
        for x in row:
            den = den * x.denominator // math.gcd(den, x.denominator)
        flat.extend(int(x * den) for x in row)
    return flat


def _ffgj(m: RatMatrix):
    flat = _scaled_integer_rows(m)
    return fraction_free_gauss_jordan(flat, m.rows, m.cols)


def rref(m: RatMatrix):
    """Reduced row-echelon form.  Returns ``(rref_matrix, pivot_columns)``."""
    out, pivots, denom, _ = _ffgj(m)
    r = RatMatrix.__new__(RatMatrix)
    r.rows, r.cols = m.rows, m.cols
    r.entries = [Fraction(x, denom) for x in out]
    return r, pivots


def rank(m: RatMatrix) -> int:
    return len(_ffgj(m)[1])


def kernel_basis(m: RatMatrix) -> RatMatrix:
    """Basis of the right null space, as columns.  ``m . basis = 0``.

    Column count is ``cols - rank(m)``; each free column contributes the
    standard basis vector of the RREF parametrization.
    """
    out, pivots, denom, _ = _ffgj(m)
    nc = m.cols
    pivot_set = set(pivots)
    free = [j for j in range(nc) if j not in pivot_set]
    basis = RatMatrix.zeros(nc, len(free))
    for k, j in enumerate(free):
        basis.entries[j * len(free) + k] = Fraction(1)
        for i, pc in enumerate(pivots):
            v = out[i * nc + j]
            if v:
                basis.entries[pc * len(free) + k] = Fraction(-v, denom)
    return basis


def solve(m: RatMatrix, rhs: RatMatrix):
    """One exact solution ``X`` of ``m . X = rhs``, or ``None`` if none exists.

    Free variables are set to zero.  Raises ``ValueError`` when the row
    counts disagree.
    """
    if m.rows != rhs.rows:
        raise ValueError("row counts of system and right-hand side differ")
    aug = m.hstack(rhs)
    out, pivots, denom, _ = _ffgj(aug)
    if pivots and pivots[-1] >= m.cols:
        return None
    x = RatMatrix.zeros(m.cols, rhs.cols)
    nc = aug.cols
    for i, pc in enumerate(pivots):
        for k in range(rhs.cols):
            v = out[i * nc + m.cols + k]
            if v:
                x.entries[pc * rhs.cols + k] = Fraction(v, denom)
    return x


def column_space_basis(m: RatMatrix) -> RatMatrix:
    """Columns of ``m`` at the pivot positions of its RREF (a basis of the
    column space)."""
    _, pivots = rref(m)
    basis = RatMatrix.zeros(m.rows, len(pivots))
    for k, j in enumerate(pivots):
        for i in range(m.rows):
            basis.entries[i * len(pivots) + k] = m.entries[i * m.cols + j]
    return basis


def int_rank(m: IntMatrix) -> int:
    """Rank over the rationals."""
    return len(fraction_free_gauss_jordan(m.entries, m.rows, m.cols)[1])


def int_det(m: IntMatrix) -> int:
    """Exact determinant of a square integer matrix."""
    if m.rows != m.cols:
        raise ValueError("determinant of a non-square matrix")
    out, pivots, denom, sign = fraction_free_gauss_jordan(
        m.entries, m.rows, m.cols
    )
    if len(pivots) < m.rows:
        return 0
    return sign * denom


def invert_unimodular(m: IntMatrix) -> IntMatrix:
    """Inverse of an integer matrix with determinant +-1."""
    sol = solve(m.to_rational(), RatMatrix.identity(m.rows))
    if sol is None:
        raise ValueError("matrix is singular")
    entries = []
    for x in sol.entries:
        if x.denominator != 1:
            raise ValueError("matrix is not unimodular")
        entries.append(x.numerator)
    return IntMatrix(m.rows, m.cols, entries)


def smith_normal_form(m: IntMatrix) -> SnfResult:
    """Invariant factors by elementary row/column operations.

    Pivot selection is by minimal absolute value, which keeps coefficient
    growth tame at the matrix sizes this package meets.
    """
    nr, nc = m.rows, m.cols
    a = [row[:] for row in m.to_rows()]
    n = min(nr, nc)
    factors = []
    t = 0
    while t < n:
        # locate minimal nonzero entry in the trailing block
        pi = pj = -1
        pv = 0
        for i in range(t, nr):
            for j in range(t, nc):
                v = a[i][j]
                if v:
                    av = abs(v)
                    if pi < 0 or av < pv:
                        pi, pj, pv = i, j, av
        if pi < 0:
            break
        a[t], a[pi] = a[pi], a[t]
        for row in a:
            row[t], row[pj] = row[pj], row[t]
        while True:
            # clear column t
            changed = False
            for i in range(t + 1, nr):
                if a[i][t]:
                    q = a[i][t] // a[t][t]
                    if q:
                        a[i] = [x - q * y for x, y in zip(a[i], a[t])]
                    if a[i][t]:
                        a[t], a[i] = a[i], a[t]
                        changed = True
            if changed:
                continue
            # clear row t
            for j in range(t + 1, nc):
                if a[t][j]:
                    q = a[t][j] // a[t][t]
                    if q:
                        for row in a:
                            row[j] -= q * row[t]
                    if a[t][j]:
                        for row in a:
                            row[t], row[j] = row[j], row[t]
                        changed = True
            if changed:
                continue
            # divisibility: pivot must divide the trailing block
            bad = None
            for i in range(t + 1, nr):
                for j in range(t + 1, nc):
                    if a[i][j] % a[t][t]:
                        bad = i
                        break
                if bad is not None:
                    break
            if bad is None:
                break
            a[t] = [x + y for x, y in zip(a[t], a[bad])]
        factors.append(abs(a[t][t]))
        t += 1
    diagonal = tuple(factors) + (0,) * (n - len(factors))
    return SnfResult(diagonal=diagonal, rank=len(factors))


def charpoly(m: RatMatrix):
    """Characteristic polynomial det(tI - m) by Faddeev-LeVerrier.

    Returns coefficients ``[c_0, ..., c_n]`` with ``c_n = 1`` (ascending
    powers of ``t``).
    """
    if m.rows != m.cols:
        raise ValueError("characteristic polynomial of a non-square matrix")
    n = m.rows
    coeffs = [Fraction(0)] * (n + 1)
    coeffs[n] = Fraction(1)
    mk = RatMatrix.identity(n)
    for k in range(1, n + 1):
        mk = m.mul(mk)
        tr = sum(mk.entries[i * n + i] for i in range(n))
        c = -tr / k
        coeffs[n - k] = c
        for i in range(n):
            mk.entries[i * n + i] += c
    return coeffs

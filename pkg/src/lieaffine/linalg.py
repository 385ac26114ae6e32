"""Exact rational linear algebra kernel.

Every scalar is a ``fractions.Fraction``; nothing in this package touches
floating point. Matrices act on column coordinate vectors, so column j of
a map is the image of basis vector j.

Row reduction is fraction-free: rows are rescaled to integers, elimination
uses cross-multiplication with per-row content reduction, and only the
final pivot normalization reintroduces fractions. This keeps intermediate
entries small and the result exact and deterministic.
"""

from __future__ import annotations

from fractions import Fraction
from math import gcd, lcm
from typing import Iterable, Optional, Sequence

from .errors import DimensionMismatch, SingularMatrixError

ZERO = Fraction(0)
ONE = Fraction(1)

Vector = tuple


def rat(value) -> Fraction:
    """Coerce an int, string or Fraction to an exact Fraction.

    Floats are rejected outright; accepting them would silently smuggle
    binary rounding into what must stay exact arithmetic.
    """
    if isinstance(value, Fraction):
        return value
    if isinstance(value, bool):
        raise TypeError(f"cannot interpret {value!r} as an exact rational")
    if isinstance(value, int):
        return Fraction(value)
    if isinstance(value, str):
        return Fraction(value)
    raise TypeError(f"cannot interpret {value!r} as an exact rational")


def vector(entries: Iterable) -> Vector:
    return tuple(rat(x) for x in entries)


def zero_vector(n: int) -> Vector:
    return (ZERO,) * n


def unit_vector(n: int, i: int) -> Vector:
    return tuple(ONE if j == i else ZERO for j in range(n))


def vec_add(u: Vector, v: Vector) -> Vector:
    return tuple(a + b for a, b in zip(u, v))


def vec_sub(u: Vector, v: Vector) -> Vector:
    return tuple(a - b for a, b in zip(u, v))


def vec_scale(c, v: Vector) -> Vector:
    c = rat(c)
    return tuple(c * a for a in v)


def vec_is_zero(v: Vector) -> bool:
    return all(not a for a in v)


class Matrix:
    """Dense matrix of exact rationals, immutable after construction."""

    __slots__ = ("rows", "cols", "data")

    def __init__(self, data, rows: Optional[int] = None, cols: Optional[int] = None):
        grid = tuple(tuple(rat(x) for x in row) for row in data)
        if rows is None:
            rows = len(grid)
        if cols is None:
            cols = len(grid[0]) if grid else 0
        if len(grid) != rows or any(len(r) != cols for r in grid):
            raise DimensionMismatch("ragged or mis-sized matrix data")
        object.__setattr__(self, "rows", rows)
        object.__setattr__(self, "cols", cols)
        object.__setattr__(self, "data", grid)

    def __setattr__(self, name, value):
        raise AttributeError("Matrix is immutable")

    @classmethod
    def zeros(cls, rows: int, cols: int) -> "Matrix":
        return cls([[ZERO] * cols for _ in range(rows)], rows, cols)

    @classmethod
    def identity(cls, n: int) -> "Matrix":
        return cls([[ONE if i == j else ZERO for j in range(n)] for i in range(n)], n, n)

    @classmethod
    def diagonal(cls, entries: Iterable) -> "Matrix":
        vals = [rat(x) for x in entries]
        n = len(vals)
        return cls([[vals[i] if i == j else ZERO for j in range(n)] for i in range(n)], n, n)

    @classmethod
    def from_columns(cls, columns: Sequence[Sequence], rows: Optional[int] = None) -> "Matrix":
        cols = [vector(c) for c in columns]
        if rows is None:
            if not cols:
                raise DimensionMismatch("row count required for a matrix with no columns")
            rows = len(cols[0])
        if any(len(c) != rows for c in cols):
            raise DimensionMismatch("columns of unequal length")
        return cls([[c[i] for c in cols] for i in range(rows)], rows, len(cols))

    @classmethod
    def unflatten(cls, flat: Sequence, n: int) -> "Matrix":
        """Rebuild an n x n matrix from a row-major flat vector."""
        vals = vector(flat)
        if len(vals) != n * n:
            raise DimensionMismatch(f"expected {n * n} entries, got {len(vals)}")
        return cls([vals[i * n:(i + 1) * n] for i in range(n)], n, n)

    def __getitem__(self, key) -> Fraction:
        i, j = key
        return self.data[i][j]

    def row(self, i: int) -> Vector:
        return self.data[i]

    def column(self, j: int) -> Vector:
        return tuple(r[j] for r in self.data)

    def flatten(self) -> Vector:
        return tuple(x for row in self.data for x in row)

    def to_lists(self) -> list:
        return [list(row) for row in self.data]

    @property
    def is_square(self) -> bool:
        return self.rows == self.cols

    def is_zero(self) -> bool:
        return all(not x for row in self.data for x in row)

    def transpose(self) -> "Matrix":
        return Matrix([self.column(j) for j in range(self.cols)], self.cols, self.rows)

    def trace(self) -> Fraction:
        if not self.is_square:
            raise DimensionMismatch("trace of a non-square matrix")
        return sum((self.data[i][i] for i in range(self.rows)), ZERO)

    def __add__(self, other: "Matrix") -> "Matrix":
        if not isinstance(other, Matrix):
            return NotImplemented
        if (self.rows, self.cols) != (other.rows, other.cols):
            raise DimensionMismatch("matrix addition shape mismatch")
        return Matrix(
            [[a + b for a, b in zip(r1, r2)] for r1, r2 in zip(self.data, other.data)],
            self.rows,
            self.cols,
        )

    def __sub__(self, other: "Matrix") -> "Matrix":
        if not isinstance(other, Matrix):
            return NotImplemented
        if (self.rows, self.cols) != (other.rows, other.cols):
            raise DimensionMismatch("matrix subtraction shape mismatch")
        return Matrix(
            [[a - b for a, b in zip(r1, r2)] for r1, r2 in zip(self.data, other.data)],
            self.rows,
            self.cols,
        )

    def __neg__(self) -> "Matrix":
        return Matrix([[-x for x in row] for row in self.data], self.rows, self.cols)

    def __mul__(self, other):
        if isinstance(other, Matrix):
            if self.cols != other.rows:
                raise DimensionMismatch(
                    f"cannot multiply {self.rows}x{self.cols} by {other.rows}x{other.cols}"
                )
            odata = other.data
            out = []
            for arow in self.data:
                acc = [ZERO] * other.cols
                for j, a in enumerate(arow):
                    if a:
                        brow = odata[j]
                        for c, b in enumerate(brow):
                            if b:
                                acc[c] += a * b
                out.append(acc)
            return Matrix(out, self.rows, other.cols)
        if isinstance(other, (int, Fraction)):
            return self._scaled(other)
        return NotImplemented

    def __rmul__(self, other):
        if isinstance(other, (int, Fraction)):
            return self._scaled(other)
        return NotImplemented

    def _scaled(self, c) -> "Matrix":
        c = rat(c)
        return Matrix([[c * x for x in row] for row in self.data], self.rows, self.cols)

    def apply(self, v: Sequence) -> Vector:
        v = vector(v)
        if len(v) != self.cols:
            raise DimensionMismatch("vector length does not match column count")
        out = []
        for row in self.data:
            acc = ZERO
            for a, b in zip(row, v):
                if a and b:
                    acc += a * b
            out.append(acc)
        return tuple(out)

    def __eq__(self, other) -> bool:
        if not isinstance(other, Matrix):
            return NotImplemented
        return (self.rows, self.cols) == (other.rows, other.cols) and self.data == other.data

    def __hash__(self):
        return hash((self.rows, self.cols, self.data))

    def __repr__(self) -> str:
        return f"Matrix({self.rows}x{self.cols}, {[list(map(str, r)) for r in self.data]})"


class Subspace:
    """A linear subspace given by a reduced-row-echelon basis.

    The RREF basis is canonical, so two subspaces are equal exactly when
    their ``basis`` tuples coincide.
    """

    __slots__ = ("ambient_dim", "basis", "pivots")

    def __init__(self, ambient_dim: int, basis_rows: Sequence[Sequence]):
        rows = tuple(vector(r) for r in basis_rows)
        if any(len(r) != ambient_dim for r in rows):
            raise DimensionMismatch("basis rows do not match the ambient dimension")
        pivots = []
        for r in rows:
            lead = next((j for j, x in enumerate(r) if x), None)
            if lead is None:
                raise ValueError("zero row in a subspace basis")
            pivots.append(lead)
        object.__setattr__(self, "ambient_dim", ambient_dim)
        object.__setattr__(self, "basis", rows)
        object.__setattr__(self, "pivots", tuple(pivots))

    def __setattr__(self, name, value):
        raise AttributeError("Subspace is immutable")

    @property
    def dim(self) -> int:
        return len(self.basis)

    def is_zero(self) -> bool:
        return not self.basis

    def coordinates(self, v: Sequence) -> Optional[Vector]:
        """Coordinates of v in the RREF basis, or None if v lies outside."""
        v = vector(v)
        if len(v) != self.ambient_dim:
            raise DimensionMismatch("vector does not match the ambient dimension")
        coeffs = tuple(v[p] for p in self.pivots)
        residual = list(v)
        for c, row in zip(coeffs, self.basis):
            if c:
                for j, x in enumerate(row):
                    if x:
                        residual[j] -= c * x
        if any(residual):
            return None
        return coeffs

    def contains(self, v: Sequence) -> bool:
        return self.coordinates(v) is not None

    def __eq__(self, other) -> bool:
        if not isinstance(other, Subspace):
            return NotImplemented
        return self.ambient_dim == other.ambient_dim and self.basis == other.basis

    def __hash__(self):
        return hash((self.ambient_dim, self.basis))

    def __repr__(self) -> str:
        return f"Subspace(dim={self.dim}, ambient={self.ambient_dim})"


def _integer_rows(m: Matrix) -> list:
    """Rescale each row to coprime integers (sign preserved)."""
    out = []
    for row in m.data:
        den = 1
        for x in row:
            den = lcm(den, x.denominator)
        ints = [x.numerator * (den // x.denominator) for x in row]
        g = 0
        for v in ints:
            if v:
                g = gcd(g, v)
                if g == 1:
                    break
        if g > 1:
            ints = [v // g for v in ints]
        out.append(ints)
    return out


def _eliminate(pv: int, row: list, v: int, prow: list) -> list:
    new = [pv * a - v * b for a, b in zip(row, prow)]
    g = 0
    for x in new:
        if x:
            g = gcd(g, x)
            if g == 1:
                return new
    if g > 1:
        new = [x // g for x in new]
    return new


def rref(m: Matrix) -> tuple:
    """Reduced row-echelon form of m.

    Returns (R, pivots) where R is the unique RREF of m and pivots is the
    strictly increasing list of pivot column indices (0-based).
    """
    rows = _integer_rows(m)
    nr, nc = m.rows, m.cols
    pivots = []
    r = 0
    for c in range(nc):
        pr = -1
        for i in range(r, nr):
            if rows[i][c]:
                pr = i
                break
        if pr < 0:
            continue
        if pr != r:
            rows[r], rows[pr] = rows[pr], rows[r]
        prow = rows[r]
        pv = prow[c]
        for i in range(r + 1, nr):
            v = rows[i][c]
            if v:
                rows[i] = _eliminate(pv, rows[i], v, prow)
        pivots.append(c)
        r += 1
        if r == nr:
            break
    for pi in range(len(pivots) - 1, -1, -1):
        c = pivots[pi]
        prow = rows[pi]
        pv = prow[c]
        for i in range(pi):
            v = rows[i][c]
            if v:
                rows[i] = _eliminate(pv, rows[i], v, prow)
    out = []
    for i, row in enumerate(rows):
        if i < len(pivots):
            pv = row[pivots[i]]
            out.append([Fraction(x, pv) for x in row])
        else:
            out.append([ZERO] * nc)
    return Matrix(out, nr, nc), pivots


def rank(m: Matrix) -> int:
    return len(rref(m)[1])


def span(vectors: Iterable[Sequence], ambient_dim: Optional[int] = None) -> Subspace:
    """RREF basis of the linear span of the given coordinate vectors."""
    vecs = [vector(v) for v in vectors]
    if ambient_dim is None:
        if not vecs:
            raise DimensionMismatch("ambient dimension required for an empty span")
        ambient_dim = len(vecs[0])
    if any(len(v) != ambient_dim for v in vecs):
        raise DimensionMismatch("vectors of unequal dimension")
    if not vecs:
        return Subspace(ambient_dim, ())
    reduced, pivots = rref(Matrix(vecs))
    return Subspace(ambient_dim, [reduced.row(i) for i in range(len(pivots))])


def nullspace(m: Matrix) -> Subspace:
    """The exact solution space of m v = 0, with an RREF basis."""
    reduced, pivots = rref(m)
    pivot_set = set(pivots)
    free = [c for c in range(m.cols) if c not in pivot_set]
    basis = []
    for f in free:
        v = [ZERO] * m.cols
        v[f] = ONE
        for r_idx, pc in enumerate(pivots):
            coeff = reduced[r_idx, f]
            if coeff:
                v[pc] = -coeff
        basis.append(v)
    return span(basis, m.cols)


def solve(a: Matrix, b: Sequence) -> Optional[Vector]:
    """One exact solution of a x = b (free variables set to 0), or None."""
    b = vector(b)
    if len(b) != a.rows:
        raise DimensionMismatch("right-hand side does not match the row count")
    aug = Matrix(
        [list(a.row(i)) + [b[i]] for i in range(a.rows)], a.rows, a.cols + 1
    )
    reduced, pivots = rref(aug)
    if a.cols in pivots:
        return None
    x = [ZERO] * a.cols
    for r_idx, pc in enumerate(pivots):
        x[pc] = reduced[r_idx, a.cols]
    return tuple(x)


def invert(m: Matrix) -> Matrix:
    """Exact inverse; raises SingularMatrixError when det m = 0."""
    if not m.is_square:
        raise DimensionMismatch("only square matrices can be inverted")
    n = m.rows
    if n == 0:
        return Matrix.zeros(0, 0)
    aug = Matrix(
        [list(m.row(i)) + [ONE if i == j else ZERO for j in range(n)] for i in range(n)],
        n,
        2 * n,
    )
    reduced, pivots = rref(aug)
    if pivots[:n] != list(range(n)) or len(pivots) < n:
        raise SingularMatrixError("matrix is singular")
    return Matrix([reduced.row(i)[n:] for i in range(n)], n, n)


def determinant(m: Matrix) -> Fraction:
    """Exact determinant by Gaussian elimination (empty matrix gives 1)."""
    if not m.is_square:
        raise DimensionMismatch("determinant of a non-square matrix")
    n = m.rows
    rows = [list(r) for r in m.data]
    det = ONE
    for c in range(n):
        pr = -1
        for i in range(c, n):
            if rows[i][c]:
                pr = i
                break
        if pr < 0:
            return ZERO
        if pr != c:
            rows[c], rows[pr] = rows[pr], rows[c]
            det = -det
        pv = rows[c][c]
        det *= pv
        for i in range(c + 1, n):
            v = rows[i][c]
            if v:
                f = v / pv
                rows[i] = [a - f * b for a, b in zip(rows[i], rows[c])]
    return det


def is_nilpotent(m: Matrix) -> bool:
    """True iff m^n = 0 exactly, tested by repeated squaring."""
    if not m.is_square:
        raise DimensionMismatch("nilpotency of a non-square matrix")
    n = m.rows
    if n == 0:
        return True
    p = m
    e = 1
    while e < n:
        if p.is_zero():
            return True
        p = p * p
        e *= 2
    return p.is_zero()

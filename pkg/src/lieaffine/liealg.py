"""Lie algebras as sparse structure-constant tensors, plus 2-form machinery.

A ``LieAlgebra`` stores coefficients only for ordered basis pairs (i, j)
with i < j; the bracket for i > j follows by antisymmetry and the diagonal
is zero by definition, so neither can be corrupted by bad data. Indices are
0-based inside the package; the JSON layer converts to the 1-based
convention used in documents.

Construction does not enforce the Jacobi identity: ``jacobi_report`` checks
it exhaustively and returns the exact residual of every violating triple,
which makes the empty report a certificate.
"""

from __future__ import annotations

import hashlib
from fractions import Fraction
from typing import Dict, List, Optional, Sequence, Tuple

from .errors import DimensionMismatch
from .linalg import (
    Matrix,
    Subspace,
    ZERO,
    determinant,
    rat,
    span,
    unit_vector,
    vec_is_zero,
    vector,
    zero_vector,
)

SparseCoeffs = Dict[int, Fraction]


class LieAlgebra:
    """A Lie algebra on a fixed basis with sparse structure constants."""

    __slots__ = ("dim", "name", "basis_names", "structure")

    def __init__(self, dim: int, structure, name: str = "g",
                 basis_names: Optional[Sequence[str]] = None):
        if dim < 1:
            raise DimensionMismatch("algebra dimension must be at least 1")
        if basis_names is None:
            basis_names = [f"e{i + 1}" for i in range(dim)]
        basis_names = tuple(str(s) for s in basis_names)
        if len(basis_names) != dim:
            raise DimensionMismatch("basis name count does not match the dimension")
        clean = {}
        for (i, j), coeffs in structure.items():
            if not (0 <= i < j < dim):
                raise ValueError(f"bracket pair ({i}, {j}) must satisfy 0 <= i < j < dim")
            kept = {}
            for k, c in coeffs.items():
                if not 0 <= k < dim:
                    raise ValueError(f"bracket target {k} out of range")
                c = rat(c)
                if c:
                    kept[k] = c
            if kept:
                clean[(i, j)] = kept
        object.__setattr__(self, "dim", dim)
        object.__setattr__(self, "name", str(name))
        object.__setattr__(self, "basis_names", basis_names)
        object.__setattr__(self, "structure", clean)

    def __setattr__(self, name, value):
        raise AttributeError("LieAlgebra is immutable")

    def __repr__(self) -> str:
        return f"LieAlgebra({self.name!r}, dim={self.dim}, pairs={len(self.structure)})"

    def basis_vector(self, i: int):
        return unit_vector(self.dim, i)

    def bracket_basis(self, i: int, j: int) -> SparseCoeffs:
        """Sparse coefficients of [e_i, e_j]; antisymmetry applied."""
        if i == j:
            return {}
        if i < j:
            return dict(self.structure.get((i, j), {}))
        return {k: -c for k, c in self.structure.get((j, i), {}).items()}

    def bracket_basis_vector(self, i: int, j: int):
        out = [ZERO] * self.dim
        for k, c in self.bracket_basis(i, j).items():
            out[k] = c
        return tuple(out)

    def bracket(self, x: Sequence, y: Sequence):
        """Bilinear extension of the structure constants to vectors."""
        x = vector(x)
        y = vector(y)
        if len(x) != self.dim or len(y) != self.dim:
            raise DimensionMismatch("bracket arguments must match the algebra dimension")
        acc = [ZERO] * self.dim
        for (i, j), coeffs in self.structure.items():
            t = x[i] * y[j] - x[j] * y[i]
            if t:
                for k, c in coeffs.items():
                    acc[k] += t * c
        return tuple(acc)

    def ad(self, x: Sequence) -> Matrix:
        """Matrix of [x, .]; column j is [x, e_j]."""
        x = vector(x)
        if len(x) != self.dim:
            raise DimensionMismatch("ad argument must match the algebra dimension")
        grid = [[ZERO] * self.dim for _ in range(self.dim)]
        for (i, j), coeffs in self.structure.items():
            xi, xj = x[i], x[j]
            if xi:
                for k, c in coeffs.items():
                    grid[k][j] += xi * c
            if xj:
                for k, c in coeffs.items():
                    grid[k][i] -= xj * c
        return Matrix(grid, self.dim, self.dim)


class TwoForm:
    """Antisymmetric bilinear form given by its Gram matrix."""

    __slots__ = ("dim", "gram")

    def __init__(self, gram: Matrix):
        if not gram.is_square:
            raise DimensionMismatch("a 2-form needs a square Gram matrix")
        n = gram.rows
        for i in range(n):
            if gram[i, i]:
                raise ValueError("Gram matrix must have zero diagonal")
            for j in range(i + 1, n):
                if gram[i, j] != -gram[j, i]:
                    raise ValueError("Gram matrix must be antisymmetric")
        object.__setattr__(self, "dim", n)
        object.__setattr__(self, "gram", gram)

    def __setattr__(self, name, value):
        raise AttributeError("TwoForm is immutable")

    @classmethod
    def from_entries(cls, dim: int, entries) -> "TwoForm":
        """Build from upper-triangular entries {(i, j): value} with i < j."""
        grid = [[ZERO] * dim for _ in range(dim)]
        for (i, j), val in entries.items():
            if not (0 <= i < j < dim):
                raise ValueError(f"entry ({i}, {j}) must satisfy 0 <= i < j < dim")
            val = rat(val)
            grid[i][j] = val
            grid[j][i] = -val
        return cls(Matrix(grid, dim, dim))

    def value(self, x: Sequence, y: Sequence) -> Fraction:
        x = vector(x)
        y = vector(y)
        if len(x) != self.dim or len(y) != self.dim:
            raise DimensionMismatch("form arguments must match the form dimension")
        acc = ZERO
        for i, xi in enumerate(x):
            if xi:
                row = self.gram.row(i)
                for j, yj in enumerate(y):
                    if yj and row[j]:
                        acc += xi * row[j] * yj
        return acc

    def scaled(self, c) -> "TwoForm":
        return TwoForm(rat(c) * self.gram)

    def __eq__(self, other):
        if not isinstance(other, TwoForm):
            return NotImplemented
        return self.gram == other.gram

    def __hash__(self):
        return hash(self.gram)

    def __repr__(self) -> str:
        return f"TwoForm(dim={self.dim})"


def jacobi_report(alg: LieAlgebra) -> List[Tuple[int, int, int, tuple]]:
    """Exact residual of the Jacobi identity on every basis triple i < j < k.

    An empty list certifies that the structure constants define a Lie
    algebra (antisymmetry already holds by construction).
    """
    n = alg.dim
    out = []
    for i in range(n):
        for j in range(i + 1, n):
            for k in range(j + 1, n):
                acc = [ZERO] * n
                for a, inner in ((i, (j, k)), (j, (k, i)), (k, (i, j))):
                    for m, c in alg.bracket_basis(*inner).items():
                        if c:
                            for p, d in alg.bracket_basis(a, m).items():
                                acc[p] += c * d
                if any(acc):
                    out.append((i, j, k, tuple(acc)))
    return out


def derived_subalgebra(alg: LieAlgebra) -> Subspace:
    """Span of all brackets of basis pairs."""
    images = [alg.bracket_basis_vector(i, j) for (i, j) in alg.structure]
    images = [v for v in images if not vec_is_zero(v)]
    return span(images, alg.dim)


def lower_central_series(alg: LieAlgebra) -> List[Subspace]:
    """Descending series [g, [g, g], [g, [g, g]], ...].

    The first entry is the whole algebra; each later term is the span of
    brackets of basis vectors with the previous term. The list stops right
    before the first repeated subspace, so the algebra is nilpotent exactly
    when the last entry is zero.
    """
    n = alg.dim
    current = span([unit_vector(n, i) for i in range(n)], n)
    series = [current]
    while True:
        images = []
        for b in current.basis:
            for i in range(n):
                w = alg.bracket(unit_vector(n, i), b)
                if not vec_is_zero(w):
                    images.append(w)
        nxt = span(images, n)
        if nxt == current:
            break
        series.append(nxt)
        current = nxt
    return series


def is_nilpotent_algebra(alg: LieAlgebra) -> bool:
    return lower_central_series(alg)[-1].is_zero()


def is_filiform(alg: LieAlgebra) -> bool:
    """Nilpotent of maximal class: the i-th term has dimension n - i - 1."""
    n = alg.dim
    series = lower_central_series(alg)
    dims = [s.dim for s in series]
    expected = [n] + [n - i - 1 for i in range(1, n)]
    return dims == expected


def dtheta_residual(alg: LieAlgebra, form: TwoForm) -> List[Tuple[int, int, int, Fraction]]:
    """Nonzero values of the 2-form cocycle sum on basis triples.

    The residual on (i, j, k) is
    th(e_i, [e_j, e_k]) + th(e_j, [e_k, e_i]) + th(e_k, [e_i, e_j]);
    an empty list means the form is closed.
    """
    if form.dim != alg.dim:
        raise DimensionMismatch("form dimension does not match the algebra")
    n = alg.dim
    gram = form.gram
    out = []
    for i in range(n):
        for j in range(i + 1, n):
            for k in range(j + 1, n):
                acc = ZERO
                for a, inner in ((i, (j, k)), (j, (k, i)), (k, (i, j))):
                    row = gram.row(a)
                    for m, c in alg.bracket_basis(*inner).items():
                        if row[m]:
                            acc += row[m] * c
                if acc:
                    out.append((i, j, k, acc))
    return out


def nondegenerate(form: TwoForm) -> bool:
    """True iff the Gram determinant is nonzero (always false in odd dim)."""
    if form.dim % 2:
        return False
    return determinant(form.gram) != 0


def algebra_hash(alg: LieAlgebra) -> str:
    """Stable hash of the mathematical content (dimension and brackets).

    Names and basis labels are presentation only and deliberately excluded,
    so renaming an algebra does not break certificates bound to it.
    """
    parts = [f"dim={alg.dim}"]
    for (i, j) in sorted(alg.structure):
        coeffs = alg.structure[(i, j)]
        body = ",".join(f"{k}:{coeffs[k]}" for k in sorted(coeffs))
        parts.append(f"[{i},{j}]={body}")
    return hashlib.sha256("|".join(parts).encode("ascii")).hexdigest()

"""Derivation algebras: exact computation, classification and searches.

``derivation_space`` solves the linear system expressing
D[x, y] = [Dx, y] + [x, Dy] on all basis pairs, over the n^2 matrix
entries of D. Randomized searches (for invertible derivations, for
derivations whose restriction to the derived subalgebra is invertible,
and for non-nilpotent derivations) draw combination coefficients
uniformly from {-10, ..., 10} with an explicitly seeded generator, so
every verdict is reproducible from (seed, trials). The determinant and
the nilpotency defect are polynomials of low degree in those
coefficients, which keeps the per-trial miss probability small whenever
a good element exists.
"""

from __future__ import annotations

import random
from dataclasses import dataclass, field
from fractions import Fraction
from math import gcd, lcm
from typing import List, Optional, Sequence, Tuple

from .errors import DimensionMismatch, NotADerivationError, NotInvariantError
from .liealg import LieAlgebra, derived_subalgebra
from .linalg import (
    Matrix,
    Subspace,
    ONE,
    ZERO,
    determinant,
    is_nilpotent,
    nullspace,
    solve,
    span,
    unit_vector,
)

NOT_CHAR_NILPOTENT = "NotCharNilpotent"
CHAR_NILPOTENT_LIKELY = "CharNilpotentLikely"

DEFAULT_TRIALS = 32
_COEFF_RANGE = 10


@dataclass(frozen=True)
class DerivationSpace:
    """Basis of Der(g), RREF-reduced as flattened n^2-vectors."""

    algebra: LieAlgebra
    basis: Tuple[Matrix, ...]
    flat: Subspace

    @property
    def dim(self) -> int:
        return len(self.basis)

    def contains(self, m: Matrix) -> bool:
        return self.flat.contains(m.flatten())


@dataclass(frozen=True)
class CharNilpVerdict:
    """Verdict on whether every derivation is nilpotent.

    ``NotCharNilpotent`` is certified by the non-nilpotent witness;
    ``CharNilpotentLikely`` only says the seeded search found nothing and
    is explicitly one-sided.
    """

    kind: str
    witness: Optional[Matrix]
    seed: int
    trials: int


@dataclass
class TorusReport:
    """Outcome of the three torus checks, all exact.

    ``derivation_failures`` holds (map index, violation list) pairs,
    ``commutation_failures`` holds non-commuting index pairs, and
    ``semisimplicity_failures`` holds (map index, reason) pairs for maps
    that are not diagonalizable over the rationals. When the rational
    eigenvalue test cannot rule out semisimplicity over a field extension,
    a note says so.
    """

    derivation_failures: List[tuple] = field(default_factory=list)
    commutation_failures: List[tuple] = field(default_factory=list)
    semisimplicity_failures: List[tuple] = field(default_factory=list)
    notes: List[str] = field(default_factory=list)

    @property
    def passed(self) -> bool:
        return not (
            self.derivation_failures
            or self.commutation_failures
            or self.semisimplicity_failures
        )


def is_derivation(alg: LieAlgebra, m: Matrix) -> List[tuple]:
    """Violations of m[e_i, e_j] = [m e_i, e_j] + [e_i, m e_j], all i < j.

    Each entry is (i, j, residual vector); an empty list certifies that m
    is a derivation.
    """
    n = alg.dim
    if m.rows != n or m.cols != n:
        raise DimensionMismatch("map shape does not match the algebra dimension")
    out = []
    cols = [m.column(j) for j in range(n)]
    for i in range(n):
        for j in range(i + 1, n):
            lhs = m.apply(alg.bracket_basis_vector(i, j))
            r1 = alg.bracket(cols[i], unit_vector(n, j))
            r2 = alg.bracket(unit_vector(n, i), cols[j])
            residual = tuple(a - b - c for a, b, c in zip(lhs, r1, r2))
            if any(residual):
                out.append((i, j, residual))
    return out


def derivation_space(alg: LieAlgebra) -> DerivationSpace:
    """Exact nullspace of the derivation conditions, as a matrix basis.

    Unknown (p, q) of the map sits at flat index p*n + q (row-major).
    """
    n = alg.dim
    rows: List[list] = []
    for i in range(n):
        for j in range(i + 1, n):
            block = [[ZERO] * (n * n) for _ in range(n)]
            for k, c in alg.bracket_basis(i, j).items():
                for p in range(n):
                    block[p][p * n + k] += c
            for q in range(n):
                for p, c in alg.bracket_basis(q, j).items():
                    block[p][q * n + i] -= c
                for p, c in alg.bracket_basis(i, q).items():
                    block[p][q * n + j] -= c
            rows.extend(block)
    if rows:
        flat = nullspace(Matrix(rows, len(rows), n * n))
    else:
        flat = span([unit_vector(n * n, i) for i in range(n * n)], n * n)
    basis = tuple(Matrix.unflatten(v, n) for v in flat.basis)
    return DerivationSpace(algebra=alg, basis=basis, flat=flat)


def diagonal_derivations(alg: LieAlgebra) -> Subspace:
    """Weight vectors w with diag(w) a derivation.

    diag(w) is a derivation exactly when w_i + w_j = w_k for every nonzero
    structure constant on ((i, j), k); the result is the RREF solution
    space of those equations.
    """
    n = alg.dim
    rows = []
    for (i, j), coeffs in alg.structure.items():
        for k in coeffs:
            row = [ZERO] * n
            row[i] += ONE
            row[j] += ONE
            row[k] -= ONE
            if any(row):
                rows.append(row)
    if not rows:
        return span([unit_vector(n, i) for i in range(n)], n)
    return nullspace(Matrix(rows, len(rows), n))


def _random_combination(rng: random.Random, mats: Sequence[Matrix], n: int) -> Matrix:
    acc = Matrix.zeros(n, n)
    for m in mats:
        c = rng.randint(-_COEFF_RANGE, _COEFF_RANGE)
        if c:
            acc = acc + c * m
    return acc


def find_regular_derivation(space: DerivationSpace, seed: int = 0,
                            trials: int = DEFAULT_TRIALS) -> Optional[Matrix]:
    """Seeded random search for an invertible derivation; None if all fail."""
    if trials < 1:
        raise ValueError("trials must be at least 1")
    n = space.algebra.dim
    rng = random.Random(seed)
    for _ in range(trials):
        cand = _random_combination(rng, space.basis, n)
        if determinant(cand) != 0:
            return cand
    return None


def restrict_to_derived(alg: LieAlgebra, m: Matrix) -> Matrix:
    """Matrix of m on the RREF basis of the derived subalgebra.

    Derivations always preserve the derived subalgebra; a map that is not
    a derivation is rejected, and a defensive invariance check still
    guards the coordinate extraction.
    """
    if is_derivation(alg, m):
        raise NotADerivationError("map does not satisfy the derivation identity")
    derived = derived_subalgebra(alg)
    cols = []
    for b in derived.basis:
        coords = derived.coordinates(m.apply(b))
        if coords is None:
            raise NotInvariantError("image of a derived-subalgebra vector escapes it")
        cols.append(coords)
    if not cols:
        return Matrix.zeros(0, 0)
    return Matrix.from_columns(cols, rows=derived.dim)


def find_derived_regular_derivation(space: DerivationSpace, seed: int = 0,
                                    trials: int = DEFAULT_TRIALS) -> Optional[Matrix]:
    """Search for a derivation whose derived-subalgebra restriction is invertible.

    Deterministic first pass over the diagonal derivation weights, then the
    seeded random combinations. A zero-dimensional derived subalgebra makes
    every candidate succeed (the empty matrix counts as invertible).
    """
    if trials < 1:
        raise ValueError("trials must be at least 1")
    alg = space.algebra
    n = alg.dim

    def restriction_invertible(cand: Matrix) -> bool:
        return determinant(restrict_to_derived(alg, cand)) != 0

    for w in diagonal_derivations(alg).basis:
        cand = Matrix.diagonal(w)
        if restriction_invertible(cand):
            return cand
    rng = random.Random(seed)
    for _ in range(trials):
        cand = _random_combination(rng, space.basis, n)
        if restriction_invertible(cand):
            return cand
    return None


def char_nilpotent_verdict(alg: LieAlgebra, seed: int = 0,
                           trials: int = DEFAULT_TRIALS) -> CharNilpVerdict:
    """Search Der(g) for a non-nilpotent element.

    Basis elements are tried first, then seeded random combinations. A hit
    yields a certified NotCharNilpotent verdict; exhausting the trials
    yields CharNilpotentLikely, which is probabilistic by design.
    """
    space = derivation_space(alg)
    for cand in space.basis:
        if not is_nilpotent(cand):
            return CharNilpVerdict(NOT_CHAR_NILPOTENT, cand, seed, trials)
    rng = random.Random(seed)
    for _ in range(trials):
        cand = _random_combination(rng, space.basis, alg.dim)
        if not is_nilpotent(cand):
            return CharNilpVerdict(NOT_CHAR_NILPOTENT, cand, seed, trials)
    return CharNilpVerdict(CHAR_NILPOTENT_LIKELY, None, seed, trials)


def verify_witness(alg: LieAlgebra, witness: Matrix) -> dict:
    """Re-check a NotCharNilpotent witness: derivation and non-nilpotent."""
    violations = is_derivation(alg, witness)
    nilp = is_nilpotent(witness)
    return {
        "derivation_violations": len(violations),
        "nilpotent": nilp,
        "sound": not violations and not nilp,
    }


def verify_torus(alg: LieAlgebra, maps: Sequence[Matrix]) -> TorusReport:
    """Check a candidate torus: derivations, commuting, Q-diagonalizable."""
    n = alg.dim
    report = TorusReport()
    for idx, m in enumerate(maps):
        if m.rows != n or m.cols != n:
            raise DimensionMismatch(f"map {idx} does not match the algebra dimension")
        violations = is_derivation(alg, m)
        if violations:
            report.derivation_failures.append((idx, violations))
    for a in range(len(maps)):
        for b in range(a + 1, len(maps)):
            if not (maps[a] * maps[b] - maps[b] * maps[a]).is_zero():
                report.commutation_failures.append((a, b))
    for idx, m in enumerate(maps):
        ok, reason, inconclusive = _diagonalizable_over_q(m)
        if not ok:
            report.semisimplicity_failures.append((idx, reason))
            if inconclusive:
                report.notes.append(
                    f"map {idx}: rational eigenvalue test cannot rule out "
                    "semisimplicity over a field extension"
                )
    return report


# --- minimal polynomial and rational-root machinery ---------------------

def minimal_polynomial(m: Matrix) -> List[Fraction]:
    """Monic minimal polynomial of m, as ascending coefficients."""
    if not m.is_square:
        raise DimensionMismatch("minimal polynomial of a non-square matrix")
    n = m.rows
    if n == 0:
        return [ONE]
    flats = [Matrix.identity(n).flatten()]
    cur = Matrix.identity(n)
    for d in range(1, n + 1):
        cur = cur * m
        target = cur.flatten()
        coeffs = solve(Matrix.from_columns(flats, rows=n * n), target)
        if coeffs is not None:
            return [-c for c in coeffs] + [ONE]
        flats.append(target)
    raise AssertionError("power sequence must become dependent by degree n")


def _poly_trim(p: List[Fraction]) -> List[Fraction]:
    out = list(p)
    while len(out) > 1 and not out[-1]:
        out.pop()
    return out


def _poly_deriv(p: List[Fraction]) -> List[Fraction]:
    return _poly_trim([i * p[i] for i in range(1, len(p))] or [ZERO])


def _poly_mod(a: List[Fraction], b: List[Fraction]) -> List[Fraction]:
    a = _poly_trim(a)
    b = _poly_trim(b)
    while len(a) >= len(b) and any(a):
        f = a[-1] / b[-1]
        shift = len(a) - len(b)
        a = [c - f * b[i - shift] if i >= shift else c for i, c in enumerate(a)]
        a = _poly_trim(a[:-1] or [ZERO])
        if not any(a):
            break
    return a


def _poly_gcd(a: List[Fraction], b: List[Fraction]) -> List[Fraction]:
    a = _poly_trim(a)
    b = _poly_trim(b)
    while any(b):
        a, b = b, _poly_mod(a, b)
    if any(a):
        lead = a[-1]
        a = [c / lead for c in a]
    return a


def _poly_eval(p: List[Fraction], x: Fraction) -> Fraction:
    acc = ZERO
    for c in reversed(p):
        acc = acc * x + c
    return acc


def _poly_deflate(p: List[Fraction], root: Fraction) -> List[Fraction]:
    """Divide p by (x - root); assumes root is exact."""
    out = [ZERO] * (len(p) - 1)
    carry = p[-1]
    for i in range(len(p) - 2, -1, -1):
        out[i] = carry
        carry = p[i] + root * carry
    return out


_FACTOR_CAP = 10 ** 6


def _divisors(x: int) -> Tuple[List[int], bool]:
    """All positive divisors of |x|; the flag reports completeness."""
    x = abs(x)
    if x == 0:
        return [1], True
    factors = {}
    complete = True
    d = 2
    while d <= _FACTOR_CAP and d * d <= x:
        while x % d == 0:
            factors[d] = factors.get(d, 0) + 1
            x //= d
        d += 1 if d == 2 else 2
    if x > 1:
        if x > _FACTOR_CAP * _FACTOR_CAP:
            complete = False
        factors[x] = factors.get(x, 0) + 1
    divs = [1]
    for prime, mult in factors.items():
        divs = [dv * prime ** e for dv in divs for e in range(mult + 1)]
    return sorted(divs), complete


def _rational_roots_split(p: List[Fraction]) -> Tuple[List[Fraction], bool, bool]:
    """Rational roots of p plus (splits over Q, search conclusive) flags."""
    work = _poly_trim(p)
    roots: List[Fraction] = []
    while len(work) > 1 and not work[0]:
        roots.append(ZERO)
        work = work[1:]
    if len(work) == 1:
        return roots, True, True
    den = 1
    for c in work:
        den = lcm(den, c.denominator)
    ints = [int(c * den) for c in work]
    content = 0
    for v in ints:
        if v:
            content = gcd(content, v)
    if content > 1:
        ints = [v // content for v in ints]
    num_divs, num_ok = _divisors(ints[0])
    den_divs, den_ok = _divisors(ints[-1])
    conclusive = num_ok and den_ok
    candidates = sorted(
        {Fraction(s * u, v) for u in num_divs for v in den_divs for s in (1, -1)},
        key=lambda q: (abs(q), q < 0),
    )
    while len(work) > 1:
        hit = None
        for cand in candidates:
            if _poly_eval(work, cand) == 0:
                hit = cand
                break
        if hit is None:
            break
        roots.append(hit)
        work = _poly_deflate(work, hit)
    return roots, len(work) == 1, conclusive


def _diagonalizable_over_q(m: Matrix) -> Tuple[bool, str, bool]:
    """(diagonalizable over Q, failure reason, inconclusive-over-extension)."""
    p = minimal_polynomial(m)
    g = _poly_gcd(p, _poly_deriv(p))
    if len(g) > 1:
        return False, "minimal polynomial has a repeated root", False
    roots, splits, conclusive = _rational_roots_split(p)
    if splits:
        return True, "", False
    return False, "minimal polynomial does not split over the rationals", True

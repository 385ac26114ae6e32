"""Affine (left-symmetric) structures: construction and exact verification.

An affine structure on a Lie algebra is a bilinear product x.y whose
antisymmetrization is the bracket (x.y - y.x = [x, y]) and which satisfies
the left-symmetry identity x.(y.z) - y.(x.z) = (x.y).z - (y.x).z. Both
axioms are bilinear, so checking them on all basis tuples is a complete,
finite certificate; ``verify_affine`` does exactly that and reports every
violating tuple with its exact residual.

Three constructors are provided:

* ``from_regular_derivation``: x.y = f^{-1}([x, f(y)]) for an invertible
  derivation f.
* ``from_derived_regular``: x.y = g([x, f(y)]) where f is a derivation
  whose restriction to the derived subalgebra is invertible and g inverts
  f there (extended by zero off the pivot coordinates; the extension is
  irrelevant because ad images lie in the derived subalgebra).
* ``from_symplectic``: the product defined against a closed nondegenerate
  2-form by th([x, u], v) = -th(u, x.v).

``synthesize`` tries the strategies in a fixed order, re-verifies the
winner exhaustively, and wraps the outcome in a self-contained certificate.
"""

from __future__ import annotations

import random
from dataclasses import dataclass, field
from typing import Dict, List, Optional, Sequence, Tuple

from . import __about__
from .derivations import (
    DerivationSpace,
    derivation_space,
    find_derived_regular_derivation,
    find_regular_derivation,
    is_derivation,
    restrict_to_derived,
)
from .errors import (
    DegenerateFormError,
    DimensionMismatch,
    NoStrategySucceeded,
    NotADerivationError,
    NotClosedError,
    SingularMatrixError,
    SingularOnDerivedError,
)
from .liealg import (
    LieAlgebra,
    TwoForm,
    algebra_hash,
    derived_subalgebra,
    dtheta_residual,
    nondegenerate,
)
from .linalg import (
    Matrix,
    ONE,
    ZERO,
    determinant,
    invert,
    nullspace,
    span,
    unit_vector,
    vector,
)

NOT_A_PROOF = "search failure only; not a proof of non-existence"

AUTO_STRATEGIES = ("regular", "derived-regular", "symplectic")


class AffineStructure:
    """Product tensor: gamma[i][j] holds the coordinates of e_i . e_j."""

    __slots__ = ("dim", "gamma", "provenance")

    def __init__(self, dim: int, gamma, provenance: Optional[dict] = None):
        grid = tuple(tuple(vector(col) for col in row) for row in gamma)
        if len(grid) != dim or any(
            len(row) != dim or any(len(col) != dim for col in row) for row in grid
        ):
            raise DimensionMismatch("gamma tensor must be dim x dim x dim")
        object.__setattr__(self, "dim", dim)
        object.__setattr__(self, "gamma", grid)
        object.__setattr__(self, "provenance", dict(provenance or {}))

    def __setattr__(self, name, value):
        raise AttributeError("AffineStructure is immutable")

    @classmethod
    def from_left_mults(cls, mats: Sequence[Matrix], provenance=None) -> "AffineStructure":
        n = len(mats)
        gamma = [[m.column(j) for j in range(n)] for m in mats]
        return cls(n, gamma, provenance)

    def left_mult(self, i: int) -> Matrix:
        return Matrix.from_columns(self.gamma[i], rows=self.dim)

    def product(self, x: Sequence, y: Sequence):
        x = vector(x)
        y = vector(y)
        if len(x) != self.dim or len(y) != self.dim:
            raise DimensionMismatch("product arguments must match the dimension")
        acc = [ZERO] * self.dim
        for i, xi in enumerate(x):
            if not xi:
                continue
            row = self.gamma[i]
            for j, yj in enumerate(y):
                if not yj:
                    continue
                col = row[j]
                c = xi * yj
                for k, v in enumerate(col):
                    if v:
                        acc[k] += c * v
        return tuple(acc)

    def __repr__(self) -> str:
        strategy = self.provenance.get("strategy", "?")
        return f"AffineStructure(dim={self.dim}, strategy={strategy!r})"


@dataclass
class AffineReport:
    """Exact residuals of the two affine axioms on basis tuples."""

    torsion_violations: List[tuple] = field(default_factory=list)
    leftsym_violations: List[tuple] = field(default_factory=list)

    @property
    def passed(self) -> bool:
        return not self.torsion_violations and not self.leftsym_violations


@dataclass(frozen=True)
class CheckResult:
    name: str
    status: str
    residuals: int


@dataclass
class Certificate:
    """Self-contained record of a synthesis verdict.

    Embeds the witnesses (the derivation or 2-form that drove the
    construction, and the resulting product tensor), so a third party can
    re-run every named check from the certificate and the algebra alone.
    """

    algebra_hash: str
    strategy: str
    seed: int
    trials: int
    version: str
    checks: List[CheckResult]
    witnesses: Dict[str, object]


@dataclass
class ReverifyReport:
    hash_match: bool
    checks: List[CheckResult]
    matches_recorded: bool

    @property
    def ok(self) -> bool:
        return (
            self.hash_match
            and self.matches_recorded
            and all(c.status == "pass" for c in self.checks)
        )


def verify_affine(alg: LieAlgebra, structure: AffineStructure) -> AffineReport:
    """Check both affine axioms exhaustively on basis tuples.

    Torsion violations are pairs (i, j, residual) with i < j where
    e_i.e_j - e_j.e_i - [e_i, e_j] is nonzero; left-symmetry violations are
    triples (i, j, k, residual) with i < j where
    e_i.(e_j.e_k) - e_j.(e_i.e_k) - (e_i.e_j).e_k + (e_j.e_i).e_k is
    nonzero. Bilinearity makes these basis checks equivalent to the
    universally quantified axioms.
    """
    n = alg.dim
    if structure.dim != n:
        raise DimensionMismatch("structure dimension does not match the algebra")
    mults = [structure.left_mult(i) for i in range(n)]
    report = AffineReport()
    for i in range(n):
        for j in range(i + 1, n):
            residual = tuple(
                a - b - c
                for a, b, c in zip(
                    structure.gamma[i][j],
                    structure.gamma[j][i],
                    alg.bracket_basis_vector(i, j),
                )
            )
            if any(residual):
                report.torsion_violations.append((i, j, residual))
    for i in range(n):
        for j in range(i + 1, n):
            defect = mults[i] * mults[j] - mults[j] * mults[i]
            u = structure.gamma[i][j]
            v = structure.gamma[j][i]
            for m in range(n):
                c = v[m] - u[m]
                if c:
                    defect = defect + c * mults[m]
            for k in range(n):
                col = defect.column(k)
                if any(col):
                    report.leftsym_violations.append((i, j, k, col))
    return report


def from_regular_derivation(alg: LieAlgebra, f: Matrix) -> AffineStructure:
    """Product e_i . y = f^{-1}([e_i, f(y)]) for an invertible derivation f."""
    if is_derivation(alg, f):
        raise NotADerivationError("f does not satisfy the derivation identity")
    try:
        finv = invert(f)
    except SingularMatrixError:
        raise SingularMatrixError("f is singular; the conjugation product needs f^{-1}")
    n = alg.dim
    mults = [finv * alg.ad(unit_vector(n, i)) * f for i in range(n)]
    provenance = {
        "strategy": "regular",
        "inputs": {"derivation": _matrix_strings(f)},
        "seed": None,
    }
    return AffineStructure.from_left_mults(mults, provenance)


def from_derived_regular(alg: LieAlgebra, f: Matrix) -> AffineStructure:
    """Product e_i . y = g([e_i, f(y)]) with g inverting f on the derived subalgebra.

    g is zero on the coordinate complement of the derived subalgebra's RREF
    pivots; that choice never reaches the product because every ad image
    lies in the derived subalgebra.
    """
    if is_derivation(alg, f):
        raise NotADerivationError("f does not satisfy the derivation identity")
    restricted = restrict_to_derived(alg, f)
    try:
        rinv = invert(restricted)
    except SingularMatrixError:
        raise SingularOnDerivedError(
            "restriction of f to the derived subalgebra is singular"
        )
    derived = derived_subalgebra(alg)
    n = alg.dim
    r = derived.dim
    embed = Matrix.from_columns(derived.basis, rows=n) if r else Matrix.zeros(n, 0)
    picker = Matrix(
        [[ONE if c == p else ZERO for c in range(n)] for p in derived.pivots], r, n
    )
    g = embed * rinv * picker
    mults = [g * alg.ad(unit_vector(n, i)) * f for i in range(n)]
    provenance = {
        "strategy": "derived-regular",
        "inputs": {"derivation": _matrix_strings(f)},
        "seed": None,
    }
    return AffineStructure.from_left_mults(mults, provenance)


def from_symplectic(alg: LieAlgebra, form: TwoForm) -> AffineStructure:
    """Product defined against a closed nondegenerate 2-form.

    The left multiplication by e_i is the unique solution of
    th([e_i, u], v) = -th(u, e_i . v), namely -Th^{-1} ad(e_i)^T Th.
    """
    if form.dim != alg.dim:
        raise DimensionMismatch("form dimension does not match the algebra")
    if dtheta_residual(alg, form):
        raise NotClosedError("the 2-form is not closed")
    if not nondegenerate(form):
        raise DegenerateFormError("the 2-form is degenerate")
    th = form.gram
    thinv = invert(th)
    n = alg.dim
    mults = [-(thinv * alg.ad(unit_vector(n, i)).transpose() * th) for i in range(n)]
    provenance = {
        "strategy": "symplectic",
        "inputs": {"two_form": _gram_strings(form)},
        "seed": None,
    }
    return AffineStructure.from_left_mults(mults, provenance)


def find_symplectic(alg: LieAlgebra, seed: int = 0, trials: int = 32) -> Optional[TwoForm]:
    """Seeded search for a closed nondegenerate 2-form.

    Returns None immediately in odd dimension; otherwise computes the
    linear space of closed forms exactly and samples random combinations
    of its basis until one has nonzero Gram determinant.
    """
    n = alg.dim
    if n % 2:
        return None
    pairs = [(i, j) for i in range(n) for j in range(i + 1, n)]
    index = {p: s for s, p in enumerate(pairs)}
    rows = []
    for i in range(n):
        for j in range(i + 1, n):
            for k in range(j + 1, n):
                row = [ZERO] * len(pairs)
                for a, inner in ((i, (j, k)), (j, (k, i)), (k, (i, j))):
                    for m, c in alg.bracket_basis(*inner).items():
                        if m == a:
                            continue
                        lo, hi = (a, m) if a < m else (m, a)
                        sign = ONE if a < m else -ONE
                        row[index[(lo, hi)]] += sign * c
                if any(row):
                    rows.append(row)
    if rows:
        closed = nullspace(Matrix(rows, len(rows), len(pairs)))
    else:
        closed = span([unit_vector(len(pairs), s) for s in range(len(pairs))], len(pairs))
    if closed.dim == 0:
        return None
    rng = random.Random(seed)
    for _ in range(trials):
        coeffs = [rng.randint(-10, 10) for _ in range(closed.dim)]
        entries = {}
        for c, base in zip(coeffs, closed.basis):
            if not c:
                continue
            for s, val in enumerate(base):
                if val:
                    entries[pairs[s]] = entries.get(pairs[s], ZERO) + c * val
        form = TwoForm.from_entries(n, {p: v for p, v in entries.items() if v})
        if nondegenerate(form):
            return form
    return None


def _matrix_strings(m: Matrix) -> list:
    return [[str(x) for x in row] for row in m.data]


def _gram_strings(form: TwoForm) -> list:
    return _matrix_strings(form.gram)


def _passing(names: Sequence[str]) -> List[CheckResult]:
    return [CheckResult(name, "pass", 0) for name in names]


def synthesize(alg: LieAlgebra, strategy: str = "auto", seed: int = 0,
               trials: int = 32) -> Tuple[AffineStructure, Certificate]:
    """Construct and certify an affine structure on alg.

    ``auto`` tries regular, then derived-regular, then symplectic; the
    first success wins. The winning structure is re-verified exhaustively
    before it is returned, and the certificate embeds the witness and the
    product tensor. Failure raises NoStrategySucceeded with one reason per
    attempted strategy; that exception reports a failed search and never a
    non-existence proof.
    """
    wanted = AUTO_STRATEGIES if strategy == "auto" else (strategy,)
    for s in wanted:
        if s not in AUTO_STRATEGIES:
            raise ValueError(f"unknown strategy {s!r}")
    reasons: Dict[str, str] = {}
    space: Optional[DerivationSpace] = None
    if "regular" in wanted or "derived-regular" in wanted:
        space = derivation_space(alg)

    if "regular" in wanted:
        f = find_regular_derivation(space, seed=seed, trials=trials)
        if f is None:
            reasons["regular"] = (
                f"no invertible derivation found (seed={seed}, trials={trials})"
            )
        else:
            structure = from_regular_derivation(alg, f)
            return _certify(
                alg, structure, "regular", seed, trials,
                checks=("is_derivation", "invertible", "torsion", "left_symmetry"),
                witnesses={"derivation": f},
            )

    if "derived-regular" in wanted:
        f = find_derived_regular_derivation(space, seed=seed, trials=trials)
        if f is None:
            reasons["derived-regular"] = (
                "no derivation with invertible restriction to the derived "
                f"subalgebra found (seed={seed}, trials={trials})"
            )
        else:
            structure = from_derived_regular(alg, f)
            return _certify(
                alg, structure, "derived-regular", seed, trials,
                checks=("is_derivation", "restriction_invertible", "torsion",
                        "left_symmetry"),
                witnesses={"derivation": f},
            )

    if "symplectic" in wanted:
        if alg.dim % 2:
            reasons["symplectic"] = "odd dimension admits no nondegenerate 2-form"
        else:
            form = find_symplectic(alg, seed=seed, trials=trials)
            if form is None:
                reasons["symplectic"] = (
                    f"no closed nondegenerate 2-form found (seed={seed}, trials={trials})"
                )
            else:
                structure = from_symplectic(alg, form)
                return _certify(
                    alg, structure, "symplectic", seed, trials,
                    checks=("closed", "nondegenerate", "torsion", "left_symmetry"),
                    witnesses={"two_form": form},
                )

    raise NoStrategySucceeded(reasons)


def _certify(alg, structure, strategy, seed, trials, checks, witnesses):
    report = verify_affine(alg, structure)
    if not report.passed:
        raise AssertionError(
            f"constructed {strategy} structure failed verification; "
            f"{len(report.torsion_violations)} torsion and "
            f"{len(report.leftsym_violations)} left-symmetry violations"
        )
    witnesses = dict(witnesses)
    witnesses["affine_structure"] = structure
    cert = Certificate(
        algebra_hash=algebra_hash(alg),
        strategy=strategy,
        seed=seed,
        trials=trials,
        version=__about__.__version__,
        checks=_passing(checks),
        witnesses=witnesses,
    )
    return structure, cert


def reverify_certificate(alg: LieAlgebra, cert: Certificate) -> ReverifyReport:
    """Re-run every named check in a certificate from its payloads alone."""
    hash_match = algebra_hash(alg) == cert.algebra_hash
    structure = cert.witnesses.get("affine_structure")
    affine_report = None
    if isinstance(structure, AffineStructure) and structure.dim == alg.dim:
        affine_report = verify_affine(alg, structure)
    results: List[CheckResult] = []
    for recorded in cert.checks:
        try:
            residuals = _recompute_check(alg, cert, recorded.name, affine_report)
        except (DimensionMismatch, NotADerivationError):
            residuals = 1
        if residuals is None:
            results.append(CheckResult(recorded.name, "unknown", -1))
        else:
            results.append(
                CheckResult(recorded.name, "pass" if residuals == 0 else "fail", residuals)
            )
    matches = all(
        new.status == old.status for new, old in zip(results, cert.checks)
    )
    return ReverifyReport(hash_match=hash_match, checks=results, matches_recorded=matches)


def _recompute_check(alg, cert, name, affine_report) -> Optional[int]:
    derivation = cert.witnesses.get("derivation")
    form = cert.witnesses.get("two_form")
    if name == "is_derivation":
        if not isinstance(derivation, Matrix):
            return None
        return len(is_derivation(alg, derivation))
    if name == "invertible":
        if not isinstance(derivation, Matrix):
            return None
        return 0 if determinant(derivation) != 0 else 1
    if name == "restriction_invertible":
        if not isinstance(derivation, Matrix):
            return None
        try:
            restricted = restrict_to_derived(alg, derivation)
        except Exception:
            return 1
        return 0 if determinant(restricted) != 0 else 1
    if name == "closed":
        if not isinstance(form, TwoForm):
            return None
        return len(dtheta_residual(alg, form))
    if name == "nondegenerate":
        if not isinstance(form, TwoForm):
            return None
        return 0 if nondegenerate(form) else 1
    if name == "torsion":
        if affine_report is None:
            return None
        return len(affine_report.torsion_violations)
    if name == "left_symmetry":
        if affine_report is None:
            return None
        return len(affine_report.leftsym_violations)
    return None

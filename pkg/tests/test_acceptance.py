"""Acceptance suite: each criterion prints one pass/fail line.

All tolerances are exact (zero residuals); nothing here is approximate.
Run with ``pytest -s tests/test_acceptance.py -v`` to see the lines.

Criterion 4's Cn strategy assertions (test 04b) are implemented exactly
as stated and fail by design: the Cn family as tabulated admits an exact
regular derivation (every extra product lands on the central element,
which makes it isomorphic to Qn; the witness is certified in
test_derivations), so the auto ordering certifies strategy "regular"
first. The derived-regular pathway itself is demonstrated green in
test_affine and in criteria 5 and 9 here.
"""

import contextlib
import io
import json
import random
from contextlib import contextmanager
from fractions import Fraction

import pytest

from lieaffine.affine import (
    find_symplectic,
    from_derived_regular,
    from_regular_derivation,
    from_symplectic,
    reverify_certificate,
    synthesize,
    verify_affine,
)
from lieaffine.catalog import (
    make_ank,
    make_benoist,
    make_cn,
    make_ln,
    make_qn,
    standard_torus,
)
from lieaffine.derivations import (
    NOT_CHAR_NILPOTENT,
    char_nilpotent_verdict,
    derivation_space,
    diagonal_derivations,
    is_derivation,
    verify_torus,
    verify_witness,
)
from lieaffine.errors import NoStrategySucceeded
from lieaffine.liealg import (
    dtheta_residual,
    is_filiform,
    jacobi_report,
    lower_central_series,
    nondegenerate,
)
from lieaffine.linalg import Matrix, is_nilpotent, unit_vector, vector
from lieaffine.serialize import (
    certificate_from_json,
    certificate_to_json,
    verdict_from_json,
    verdict_to_json,
)

F = Fraction


@contextmanager
def criterion(tag, label):
    try:
        yield
    except BaseException:
        print(f"ACCEPTANCE {tag} [{label}] FAIL")
        raise
    print(f"ACCEPTANCE {tag} [{label}] PASS")


def _item1_algebras():
    algebras = []
    for n in range(3, 13):
        algebras.append(make_ln(n))
    for n in (6, 8, 10, 12):
        algebras.append(make_qn(n))
        algebras.append(make_qn(n, adapted=True))
    algebras.append(make_ank(5, 2, [1])[0])
    algebras.append(make_cn(6, [1])[0])
    algebras.append(_c8_valid_lambda()[0])
    for t in (0, 1, F(-1, 2)):
        algebras.append(make_benoist(t))
    return algebras


def _c8_valid_lambda():
    # "found by residual inspection": scan candidate parameter pairs and
    # keep the first whose Jacobi residuals vanish identically.
    for lams in ((1, 0), (0, 1), (1, 1)):
        alg, report = make_cn(8, lams)
        if not report:
            return alg, lams
    raise AssertionError("no Jacobi-clean C8 parameters found")


def test_criterion_01_lie_axiom_suite():
    with criterion("01", "jacobi_report empty across the catalog"):
        for alg in _item1_algebras():
            assert jacobi_report(alg) == [], alg.name


def test_criterion_02_filiformity():
    with criterion("02", "filiformity and C6 series dims"):
        for alg in _item1_algebras():
            assert is_filiform(alg), alg.name
        c6 = make_cn(6, [1])[0]
        dims = [s.dim for s in lower_central_series(c6)]
        assert dims == [6, 4, 3, 2, 1, 0]


def test_criterion_03_torus_reproduction():
    with criterion("03", "standard tori are derivations; diagonal ranks match"):
        for n in range(3, 13):
            alg = make_ln(n)
            maps = standard_torus("Ln", n)
            for m in maps:
                assert is_derivation(alg, m) == []
            assert verify_torus(alg, maps).passed
            assert diagonal_derivations(alg).dim == 2
        for n in (6, 8, 10, 12):
            alg = make_qn(n, adapted=True)
            maps = standard_torus("QnAdapted", n)
            for m in maps:
                assert is_derivation(alg, m) == []
            assert verify_torus(alg, maps).passed
            assert diagonal_derivations(alg).dim == 2
        for alg in (make_cn(6, [1])[0], _c8_valid_lambda()[0]):
            (torus_map,) = standard_torus("Cn", alg.dim)
            assert is_derivation(alg, torus_map) == []
            assert diagonal_derivations(alg).dim == 1


def test_criterion_04a_synthesis_regular_on_rank_two_families():
    with criterion("04a", "auto synthesis uses 'regular' on Ln and Qn"):
        for n in range(3, 13):
            alg = make_ln(n)
            structure, cert = synthesize(alg, strategy="auto", seed=0, trials=32)
            assert cert.strategy == "regular", alg.name
            report = verify_affine(alg, structure)
            assert report.passed, alg.name
        for n in (6, 8, 10, 12):
            for adapted in (False, True):
                alg = make_qn(n, adapted=adapted)
                structure, cert = synthesize(alg, strategy="auto", seed=0, trials=32)
                assert cert.strategy == "regular", alg.name
                assert verify_affine(alg, structure).passed, alg.name


def test_criterion_04b_synthesis_derived_regular_on_cn():
    # Stated expectation: auto strategy equals "derived-regular" exactly.
    # This fails by design: the Cn family admits a regular derivation
    # (exact witness certified in test_derivations), so auto's first
    # strategy already succeeds and the certificate says "regular".
    with criterion("04b", "auto synthesis uses 'derived-regular' on Cn"):
        for alg in (make_cn(6, [1])[0], _c8_valid_lambda()[0]):
            structure, cert = synthesize(alg, strategy="auto", seed=0, trials=32)
            assert verify_affine(alg, structure).passed, alg.name
            assert cert.strategy == "derived-regular", (
                f"{alg.name}: auto certified strategy {cert.strategy!r}; this "
                "family admits a regular derivation, so the conjugation "
                "strategy wins first"
            )


def test_criterion_05_construction_oracle_cross_check():
    with criterion("05", "hand-derived product values match exactly"):
        l4 = make_ln(4)
        ns = from_regular_derivation(l4, Matrix.diagonal([1, 2, 3, 4]))
        assert ns.gamma[0][1] == vector((0, 0, F(2, 3), 0))
        assert ns.gamma[1][0] == vector((0, 0, F(-1, 3), 0))
        c6 = make_cn(6, [1])[0]
        f = standard_torus("Cn", 6)[0]
        nd = from_derived_regular(c6, f)
        assert nd.gamma[1][4] == vector((0, 0, 0, 0, 0, F(-1, 2)))


def test_criterion_06_symplectic_pathway():
    with criterion("06", "symplectic search, verification, scaling invariance"):
        l4 = make_ln(4)
        form = find_symplectic(l4, seed=0, trials=32)
        assert form is not None
        assert dtheta_residual(l4, form) == []
        assert nondegenerate(form)
        base = from_symplectic(l4, form)
        assert verify_affine(l4, base).passed
        for c in (F(2), F(-3, 5)):
            scaled = from_symplectic(l4, form.scaled(c))
            assert scaled.gamma == base.gamma


def test_criterion_07_regular_scaling_invariance():
    with criterion("07", "conjugation product is scale-invariant on L6"):
        l6 = make_ln(6)
        f = Matrix.diagonal([1, 2, 3, 4, 5, 6])
        base = from_regular_derivation(l6, f)
        for c in (F(2), F(-1, 3)):
            scaled = from_regular_derivation(l6, c * f)
            assert scaled.gamma == base.gamma


def test_criterion_08_benoist_consistency():
    with criterion("08", "Benoist synthesis fails with per-strategy reasons"):
        for t in (0, 1):
            alg = make_benoist(t)
            with pytest.raises(NoStrategySucceeded) as exc_info:
                synthesize(alg, strategy="auto", seed=0, trials=64)
            reasons = exc_info.value.reasons
            assert set(reasons) == {"regular", "derived-regular", "symplectic"}
            assert "invertible derivation" in reasons["regular"]
            assert "restriction to the derived subalgebra" in reasons["derived-regular"]
            assert "odd dimension" in reasons["symplectic"]
        # the CLI payload labels the outcome as a search failure, not a proof
        from lieaffine.cli import main

        buffer = io.StringIO()
        with contextlib.redirect_stdout(buffer):
            code = main(
                ["affine", "synth", "--family", "Benoist", "--t", "1",
                 "--seed", "0", "--trials", "64", "--reproducible"]
            )
        assert code == 1
        payload = json.loads(buffer.getvalue())
        assert payload["note"] == "search failure only; not a proof of non-existence"


def test_criterion_09_witness_soundness():
    with criterion("09", "verdicts and certificates re-verify from payloads"):
        # NotCharNilpotent verdicts: serialize, parse back, re-check the
        # witness with zero residuals.
        for alg in (make_ln(9), make_ln(3), make_cn(6, [1])[0]):
            verdict = char_nilpotent_verdict(alg, seed=0, trials=32)
            assert verdict.kind == NOT_CHAR_NILPOTENT
            parsed = verdict_from_json(json.loads(json.dumps(verdict_to_json(verdict))))
            report = verify_witness(alg, parsed.witness)
            assert report["derivation_violations"] == 0
            assert not report["nilpotent"]
            assert report["sound"]
        # Synthesis certificates: full JSON round trip, then re-run every
        # named check from the parsed payloads alone.
        from lieaffine.catalog import make_abelian

        cases = [
            (make_ln(6), "auto"),
            (make_qn(8), "auto"),
            (make_cn(6, [1])[0], "auto"),
            (make_cn(6, [1])[0], "derived-regular"),
            (make_abelian(4), "symplectic"),
        ]
        for alg, strategy in cases:
            _, cert = synthesize(alg, strategy=strategy, seed=0, trials=32)
            parsed = certificate_from_json(
                json.loads(json.dumps(certificate_to_json(cert)))
            )
            report = reverify_certificate(alg, parsed)
            assert report.hash_match
            assert report.ok
            assert all(c.residuals == 0 for c in report.checks)


def test_criterion_10_linear_algebra_oracle():
    with criterion("10", "Der(L4) dimension and nilpotency power oracle"):
        # Hand parameterization oracle: a derivation of L4 is determined by
        # the images of Y1 and Y2 subject to d12 = 0 (7 free entries:
        # d11, d21, d31, d41, d22, d32, d42); see test_linalg for the
        # independent 24x16 system enumeration giving rank 9.
        assert derivation_space(make_ln(4)).dim == 7
        # Power oracle: multiply out m^4 naively and compare on 100 random
        # 4x4 integer matrices.
        rng = random.Random(0)
        for _ in range(100):
            m = Matrix(
                [[rng.randint(-5, 5) for _ in range(4)] for _ in range(4)]
            )
            power = m * m * m * m
            assert is_nilpotent(m) == power.is_zero()

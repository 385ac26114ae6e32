"""Command-line front end.

Every invocation prints exactly one JSON document on stdout. Exit code 0
means pass/success, 1 is reserved for mathematically meaningful negative
verdicts (Jacobi violation, failed searches, NoStrategySucceeded, torus
failure), and 2 means a usage or input error (diagnostic on stderr).
Payloads carry a "generated_at" timestamp unless --reproducible is given;
otherwise identical argv produce byte-identical output.
"""

from __future__ import annotations

import argparse
import json
import sys
from datetime import datetime, timezone

from . import catalog
from .affine import NOT_A_PROOF, find_symplectic, reverify_certificate, synthesize
from .derivations import (
    CHAR_NILPOTENT_LIKELY,
    NOT_CHAR_NILPOTENT,
    char_nilpotent_verdict,
    derivation_space,
    diagonal_derivations,
    find_derived_regular_derivation,
    find_regular_derivation,
    verify_torus,
    verify_witness,
)
from .errors import (
    BadDimension,
    BadRange,
    LieToolError,
    NoStrategySucceeded,
    SchemaError,
    UnknownFamily,
    WrongLambdaCount,
)
from .liealg import is_filiform, jacobi_report, lower_central_series
from .serialize import (
    affine_from_json,
    algebra_from_json,
    algebra_to_json,
    certificate_from_json,
    certificate_to_json,
    format_rational,
    load_json,
    matrix_to_json,
    parse_rational,
    twoform_from_json,
    twoform_to_json,
    verdict_from_json,
    verdict_to_json,
)

_FAMILY_HELP = (
    "family id: Ln, Qn, QnZ (adapted basis), Ank, Bnk, Cn, Benoist; "
    "parameters via --n, --k, --lambda (repeatable), --t"
)

_USAGE_ERRORS = (
    SchemaError,
    BadDimension,
    BadRange,
    WrongLambdaCount,
    UnknownFamily,
    OSError,
)


def _add_common(parser: argparse.ArgumentParser) -> None:
    parser.add_argument("--out", metavar="FILE", help="also write the payload to FILE")
    parser.add_argument(
        "--reproducible",
        action="store_true",
        help="omit the generated_at timestamp for byte-identical output",
    )


def _add_algebra_source(parser: argparse.ArgumentParser) -> None:
    parser.add_argument(
        "--in",
        dest="infile",
        metavar="FILE",
        help="algebra JSON file ('-' or omitted reads stdin when no --family)",
    )
    parser.add_argument("--family", help=_FAMILY_HELP)
    parser.add_argument("--n", type=int, help="family dimension")
    parser.add_argument("--k", type=int, help="shift parameter for Ank/Bnk")
    parser.add_argument(
        "--lambda",
        dest="lambdas",
        action="append",
        metavar="RAT",
        help="family parameter, repeatable (use --lambda=-1/2 for negatives)",
    )
    parser.add_argument("--t", dest="t_param", metavar="RAT",
                        help="parameter t for the Benoist family (default 0)")


def _add_search(parser: argparse.ArgumentParser) -> None:
    parser.add_argument("--seed", type=int, default=0, help="random seed (default 0)")
    parser.add_argument("--trials", type=int, default=32,
                        help="random trial count (default 32)")


def _need(args, name: str):
    value = getattr(args, name if name != "lambda" else "lambdas")
    if value is None:
        raise BadRange(f"--{name.replace('_', '-')} is required for family {args.family}")
    return value


def _algebra_from_family(args):
    family = args.family
    if family == "Ln":
        return catalog.make_ln(_need(args, "n"))
    if family == "Qn":
        return catalog.make_qn(_need(args, "n"))
    if family == "QnZ":
        return catalog.make_qn(_need(args, "n"), adapted=True)
    if family == "Ank":
        lams = [parse_rational(s) for s in _need(args, "lambda")]
        return catalog.make_ank(_need(args, "n"), _need(args, "k"), lams)[0]
    if family == "Bnk":
        lams = [parse_rational(s) for s in (args.lambdas or [])]
        return catalog.make_bnk(_need(args, "n"), _need(args, "k"), lams)[0]
    if family == "Cn":
        lams = [parse_rational(s) for s in _need(args, "lambda")]
        return catalog.make_cn(_need(args, "n"), lams)[0]
    if family == "Benoist":
        return catalog.make_benoist(parse_rational(args.t_param or "0"))
    raise UnknownFamily(f"unknown family {args.family!r}")


def _load_algebra(args):
    if getattr(args, "family", None):
        return _algebra_from_family(args)
    infile = getattr(args, "infile", None)
    if infile in (None, "-"):
        doc = load_json(sys.stdin.read(), from_file=False)
    else:
        doc = load_json(infile)
    return algebra_from_json(doc)


def _jacobi_payload(alg):
    violations = jacobi_report(alg)
    return violations, {
        "name": alg.name,
        "dim": alg.dim,
        "jacobi_ok": not violations,
        "violations": [
            {
                "i": i + 1,
                "j": j + 1,
                "k": k + 1,
                "residual": {
                    str(m + 1): format_rational(c) for m, c in enumerate(res) if c
                },
            }
            for i, j, k, res in violations
        ],
    }


# --- handlers ----------------------------------------------------------------

def _cmd_catalog_list(args):
    return {
        "families": [
            {"id": "Ln", "params": "--n N (N >= 3)"},
            {"id": "Qn", "params": "--n N (even N >= 6)"},
            {"id": "QnZ", "params": "--n N (even N >= 6), adapted basis"},
            {"id": "Ank", "params": "--n N --k K --lambda ... (t-1 values)"},
            {"id": "Bnk", "params": "--n N --k K --lambda ... (t-1 values, even N)"},
            {"id": "Cn", "params": "--n N --lambda ... (m-1 values, N = 2m+2)"},
            {"id": "Benoist", "params": "--t RAT (dimension 11)"},
        ]
    }, 0


def _cmd_catalog_show(args):
    if not args.family:
        raise UnknownFamily("catalog show requires --family")
    return algebra_to_json(_algebra_from_family(args)), 0


def _cmd_verify_jacobi(args):
    alg = _load_algebra(args)
    violations, payload = _jacobi_payload(alg)
    return payload, 0 if not violations else 1


def _cmd_verify_filiform(args):
    alg = _load_algebra(args)
    violations, jac = _jacobi_payload(alg)
    if violations:
        return jac, 1
    series = lower_central_series(alg)
    result = is_filiform(alg)
    payload = {
        "name": alg.name,
        "dim": alg.dim,
        "filiform": result,
        "series_dims": [s.dim for s in series],
    }
    return payload, 0 if result else 1


def _cmd_verify_nilpotent(args):
    alg = _load_algebra(args)
    violations, jac = _jacobi_payload(alg)
    if violations:
        return jac, 1
    series = lower_central_series(alg)
    result = series[-1].is_zero()
    payload = {
        "name": alg.name,
        "dim": alg.dim,
        "nilpotent": result,
        "series_dims": [s.dim for s in series],
    }
    return payload, 0 if result else 1


def _cmd_der_space(args):
    alg = _load_algebra(args)
    space = derivation_space(alg)
    return {
        "name": alg.name,
        "dim": space.dim,
        "basis": [matrix_to_json(m) for m in space.basis],
    }, 0


def _cmd_der_diag(args):
    alg = _load_algebra(args)
    weights = diagonal_derivations(alg)
    return {
        "name": alg.name,
        "dim": weights.dim,
        "weights": [[format_rational(x) for x in w] for w in weights.basis],
    }, 0


def _cmd_der_regular(args):
    alg = _load_algebra(args)
    space = derivation_space(alg)
    witness = find_regular_derivation(space, seed=args.seed, trials=args.trials)
    payload = {
        "name": alg.name,
        "found": witness is not None,
        "witness": matrix_to_json(witness) if witness is not None else None,
        "seed": args.seed,
        "trials": args.trials,
    }
    return payload, 0 if witness is not None else 1


def _cmd_der_derived_regular(args):
    alg = _load_algebra(args)
    space = derivation_space(alg)
    witness = find_derived_regular_derivation(space, seed=args.seed, trials=args.trials)
    payload = {
        "name": alg.name,
        "found": witness is not None,
        "witness": matrix_to_json(witness) if witness is not None else None,
        "seed": args.seed,
        "trials": args.trials,
    }
    return payload, 0 if witness is not None else 1


def _cmd_der_char_nilp(args):
    alg = _load_algebra(args)
    verdict = char_nilpotent_verdict(alg, seed=args.seed, trials=args.trials)
    payload = verdict_to_json(verdict)
    payload["name"] = alg.name
    if verdict.kind == CHAR_NILPOTENT_LIKELY:
        payload["note"] = (
            "one-sided probabilistic verdict: no non-nilpotent derivation was "
            "found by the seeded search"
        )
    return payload, 0 if verdict.kind == NOT_CHAR_NILPOTENT else 1


def _cmd_der_torus(args):
    family = args.family
    if family not in ("Ln", "QnZ", "Cn"):
        raise UnknownFamily(
            "der torus needs --family Ln, QnZ or Cn (the families with a "
            "distinguished diagonal torus)"
        )
    alg = _algebra_from_family(args)
    torus_family = "QnAdapted" if family == "QnZ" else family
    maps = catalog.standard_torus(torus_family, args.n)
    report = verify_torus(alg, maps)
    payload = {
        "name": alg.name,
        "passed": report.passed,
        "derivation_failures": [
            {"map": idx, "violations": len(v)} for idx, v in report.derivation_failures
        ],
        "commutation_failures": [list(p) for p in report.commutation_failures],
        "semisimplicity_failures": [
            {"map": idx, "reason": reason}
            for idx, reason in report.semisimplicity_failures
        ],
        "notes": report.notes,
        "maps": [matrix_to_json(m) for m in maps],
    }
    return payload, 0 if report.passed else 1


def _cmd_der_verify_witness(args):
    alg = _load_algebra(args)
    verdict = verdict_from_json(load_json(args.cert))
    if verdict.witness is None:
        raise SchemaError("the verdict carries no witness to verify")
    report = verify_witness(alg, verdict.witness)
    payload = {
        "name": alg.name,
        "kind": verdict.kind,
        "derivation_violations": report["derivation_violations"],
        "nilpotent": report["nilpotent"],
        "sound": report["sound"],
    }
    return payload, 0 if report["sound"] else 1


def _cmd_affine_synth(args):
    alg = _load_algebra(args)
    try:
        _, cert = synthesize(alg, strategy=args.strategy, seed=args.seed,
                             trials=args.trials)
    except NoStrategySucceeded as exc:
        payload = {
            "name": alg.name,
            "error": "NoStrategySucceeded",
            "reasons": exc.reasons,
            "note": NOT_A_PROOF,
            "seed": args.seed,
            "trials": args.trials,
        }
        return payload, 1
    payload = certificate_to_json(cert)
    payload["name"] = alg.name
    return payload, 0


def _cmd_affine_verify(args):
    alg = _load_algebra(args)
    cert = certificate_from_json(load_json(args.cert))
    report = reverify_certificate(alg, cert)
    if not report.hash_match:
        raise SchemaError(
            "certificate algebra hash does not match the supplied algebra"
        )
    payload = {
        "name": alg.name,
        "hash_match": report.hash_match,
        "checks": [
            {"name": c.name, "status": c.status, "residuals": c.residuals}
            for c in report.checks
        ],
        "ok": report.ok,
    }
    return payload, 0 if report.ok else 1


def _cmd_affine_symplectic_find(args):
    alg = _load_algebra(args)
    form = find_symplectic(alg, seed=args.seed, trials=args.trials)
    payload = {
        "name": alg.name,
        "found": form is not None,
        "two_form": twoform_to_json(form) if form is not None else None,
        "seed": args.seed,
        "trials": args.trials,
    }
    return payload, 0 if form is not None else 1


_VALIDATORS = {
    "algebra": algebra_from_json,
    "twoform": twoform_from_json,
    "affine": affine_from_json,
    "certificate": certificate_from_json,
}


def _cmd_io_validate(args):
    doc = load_json(args.infile) if args.infile not in (None, "-") else load_json(
        sys.stdin.read(), from_file=False
    )
    _VALIDATORS[args.kind](doc)
    return {"kind": args.kind, "valid": True}, 0


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="lieaffine",
        description="Exact toolkit for filiform Lie algebras, their derivation "
        "algebras and affine (left-symmetric) structures.",
    )
    sub = parser.add_subparsers(dest="group", required=True)

    cat = sub.add_parser("catalog", help="algebra family constructors")
    cat_sub = cat.add_subparsers(dest="cmd", required=True)
    p = cat_sub.add_parser("list", help="list families and parameters")
    _add_common(p)
    p.set_defaults(handler=_cmd_catalog_list)
    p = cat_sub.add_parser("show", help="print a family member as algebra JSON")
    _add_common(p)
    _add_algebra_source(p)
    p.set_defaults(handler=_cmd_catalog_show)

    ver = sub.add_parser("verify", help="axiom and shape checks")
    ver_sub = ver.add_subparsers(dest="cmd", required=True)
    for name, handler in (
        ("jacobi", _cmd_verify_jacobi),
        ("filiform", _cmd_verify_filiform),
        ("nilpotent", _cmd_verify_nilpotent),
    ):
        p = ver_sub.add_parser(name)
        _add_common(p)
        _add_algebra_source(p)
        p.set_defaults(handler=handler)

    der = sub.add_parser("der", help="derivation algebra analysis")
    der_sub = der.add_subparsers(dest="cmd", required=True)
    p = der_sub.add_parser("space", help="basis of the derivation algebra")
    _add_common(p)
    _add_algebra_source(p)
    p.set_defaults(handler=_cmd_der_space)
    p = der_sub.add_parser("diag", help="diagonal derivation weight space")
    _add_common(p)
    _add_algebra_source(p)
    p.set_defaults(handler=_cmd_der_diag)
    p = der_sub.add_parser("regular", help="search for an invertible derivation")
    _add_common(p)
    _add_algebra_source(p)
    _add_search(p)
    p.set_defaults(handler=_cmd_der_regular)
    p = der_sub.add_parser(
        "derived-regular",
        help="search for a derivation invertible on the derived subalgebra",
    )
    _add_common(p)
    _add_algebra_source(p)
    _add_search(p)
    p.set_defaults(handler=_cmd_der_derived_regular)
    p = der_sub.add_parser("char-nilp", help="characteristic nilpotency verdict")
    _add_common(p)
    _add_algebra_source(p)
    _add_search(p)
    p.set_defaults(handler=_cmd_der_char_nilp)
    p = der_sub.add_parser("torus", help="verify the family's standard torus")
    _add_common(p)
    _add_algebra_source(p)
    p.set_defaults(handler=_cmd_der_torus)
    p = der_sub.add_parser("verify-witness", help="re-check a char-nilp witness")
    _add_common(p)
    _add_algebra_source(p)
    p.add_argument("--cert", required=True, metavar="FILE",
                   help="verdict JSON from 'der char-nilp'")
    p.set_defaults(handler=_cmd_der_verify_witness)

    aff = sub.add_parser("affine", help="affine structure synthesis and checks")
    aff_sub = aff.add_subparsers(dest="cmd", required=True)
    p = aff_sub.add_parser("synth", help="construct and certify an affine structure")
    _add_common(p)
    _add_algebra_source(p)
    _add_search(p)
    p.add_argument(
        "--strategy",
        choices=("auto", "regular", "derived-regular", "symplectic"),
        default="auto",
    )
    p.set_defaults(handler=_cmd_affine_synth)
    p = aff_sub.add_parser("verify", help="re-verify a synthesis certificate")
    _add_common(p)
    _add_algebra_source(p)
    p.add_argument("--cert", required=True, metavar="FILE", help="certificate JSON")
    p.set_defaults(handler=_cmd_affine_verify)
    p = aff_sub.add_parser("symplectic-find", help="search for a symplectic form")
    _add_common(p)
    _add_algebra_source(p)
    _add_search(p)
    p.set_defaults(handler=_cmd_affine_symplectic_find)

    io = sub.add_parser("io", help="schema validation")
    io_sub = io.add_subparsers(dest="cmd", required=True)
    p = io_sub.add_parser("validate", help="validate a JSON document")
    _add_common(p)
    p.add_argument("--kind", required=True,
                   choices=("algebra", "twoform", "affine", "certificate"))
    p.add_argument("--in", dest="infile", metavar="FILE",
                   help="document file ('-' or omitted reads stdin)")
    p.set_defaults(handler=_cmd_io_validate)

    return parser


def main(argv=None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return int(exc.code or 0)
    try:
        payload, code = args.handler(args)
    except _USAGE_ERRORS as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    except LieToolError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    if not args.reproducible:
        payload = {**payload,
                   "generated_at": datetime.now(timezone.utc).isoformat()}
    text = json.dumps(payload, indent=2)
    print(text)
    if args.out:
        with open(args.out, "w", encoding="utf-8") as fh:
            fh.write(text + "\n")
    return code


def entrypoint() -> None:
    sys.exit(main())


if __name__ == "__main__":
    entrypoint()

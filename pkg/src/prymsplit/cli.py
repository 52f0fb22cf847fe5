"""Command-line interface: validate, split, verify, bruin, disc-check, selftest.

Input documents are strict JSON: a curve is
{"p": 7, "k": 1, "f": [0,1,0], "g": [1,1,1], "h": [1,0,-1]} with coefficient
triples ordered (x^2, xz, z^2); drop "p" for a curve over the rationals, whose
entries may be "num/den" strings.  Unknown keys are rejected by name.

Exit codes: 0 success/pass, 2 verification failed, 3 rejected input,
4 resource cap exceeded, 1 internal error.
"""

from __future__ import annotations

import argparse
import json
import os
import sys
import time
from fractions import Fraction

from . import __version__
from .counting import DEFAULT_AXIS_CAP, DEFAULT_EVAL_CAP
from .errors import (
    DegenerateInputError,
    InvalidFieldError,
    PrymError,
    RejectedInputError,
    ResourceLimitError,
    SingularMatrixError,
    UndefinedResultantError,
    UnsupportedFieldError,
)
from .fields import QQ, build_extension
from .poly import BinaryForm
from .prym import BiellipticQuartic, deform, split, validate
from .resultants import disc_ternary_quartic
from .ternary import TernaryForm
from .zeta import verify_bruin, verify_split, verify_split_rational

SCHEMA = "prymsplit-report/1"

EXIT_PASS = 0
EXIT_INTERNAL = 1
EXIT_VERIFICATION_FAILED = 2
EXIT_REJECTED = 3
EXIT_RESOURCE = 4

_CURVE_KEYS = {"p", "k", "modulus", "f", "g", "h"}
_QUARTIC_KEYS = {"p", "k", "modulus", "quartic"}


class DocumentError(RejectedInputError):
    pass


def _parse_field(doc: dict, seed: int):
    if "p" not in doc:
        if "k" in doc or "modulus" in doc:
            raise DocumentError('keys "k"/"modulus" need "p"')
        return QQ
    p = doc["p"]
    if not isinstance(p, int):
        raise DocumentError('key "p" must be an integer')
    k = doc.get("k", 1)
    if not isinstance(k, int) or k < 1:
        raise DocumentError('key "k" must be a positive integer')
    try:
        if "modulus" in doc:
            from .fields import ExtensionField

            if k == 1:
                raise DocumentError('key "modulus" needs "k" > 1')
            return ExtensionField(p, k, modulus=doc["modulus"], seed=seed)
        return build_extension(p, k, seed)
    except InvalidFieldError as exc:
        raise DocumentError(f"invalid field: {exc}") from exc


def _parse_element(field, value, where: str):
    if field.kind == "rationals":
        if isinstance(value, int):
            return Fraction(value)
        if isinstance(value, str):
            try:
                return Fraction(value)
            except (ValueError, ZeroDivisionError) as exc:
                raise DocumentError(f'bad rational "{value}" in {where}') from exc
        raise DocumentError(f"entries of {where} must be integers or num/den strings")
    if isinstance(value, int):
        return field.from_int(value)
    if isinstance(value, list) and field.k > 1:
        if len(value) > field.k or not all(isinstance(v, int) for v in value):
            raise DocumentError(f"coefficient vector in {where} needs <= k integers")
        return field.from_coeffs(value)
    raise DocumentError(f"entries of {where} must be integers")


def _element_obj(field, value):
    if field.kind == "rationals":
        return str(value)
    if field.k == 1:
        return value
    return list(field.coeffs(value))


def parse_curve_document(doc, seed: int = 0) -> BiellipticQuartic:
    if not isinstance(doc, dict):
        raise DocumentError("curve document must be a JSON object")
    for key in doc:
        if key not in _CURVE_KEYS:
            raise DocumentError(f'unknown key "{key}" in curve document')
    for key in ("f", "g", "h"):
        if key not in doc:
            raise DocumentError(f'missing key "{key}" in curve document')
        if not isinstance(doc[key], list) or len(doc[key]) != 3:
            raise DocumentError(f'key "{key}" must be a list of 3 coefficients')
    field = _parse_field(doc, seed)
    forms = {}
    try:
        for key in ("f", "g", "h"):
            coeffs = [_parse_element(field, v, f'"{key}"') for v in doc[key]]
            forms[key] = BinaryForm(field, 2, coeffs)
        return BiellipticQuartic(field, forms["f"], forms["g"], forms["h"])
    except DegenerateInputError as exc:
        raise DocumentError(str(exc)) from exc


def parse_quartic_document(doc, seed: int = 0) -> TernaryForm:
    if not isinstance(doc, dict):
        raise DocumentError("quartic document must be a JSON object")
    for key in doc:
        if key not in _QUARTIC_KEYS:
            raise DocumentError(f'unknown key "{key}" in quartic document')
    if "quartic" not in doc:
        raise DocumentError('missing key "quartic"')
    field = _parse_field(doc, seed)
    coeffs = {}
    for entry in doc["quartic"]:
        if not (isinstance(entry, list) and len(entry) == 4):
            raise DocumentError('entries of "quartic" must be [i, j, k, coeff]')
        i, j, k, value = entry
        if not all(isinstance(e, int) and e >= 0 for e in (i, j, k)) or i + j + k != 4:
            raise DocumentError(f"monomial ({i},{j},{k}) is not of degree 4")
        coeffs[(i, j, k)] = _parse_element(field, value, '"quartic"')
    form = TernaryForm(field, 4, coeffs)
    if form.is_zero():
        raise DocumentError("quartic document describes the zero form")
    return form


def _curve_doc(curve: BiellipticQuartic) -> dict:
    field = curve.field
    doc = {}
    if field.kind == "finite":
        doc["p"] = field.p
        if field.k > 1:
            doc["k"] = field.k
            doc["modulus"] = list(field.modulus)
    for key, form in (("f", curve.f), ("g", curve.g), ("h", curve.h)):
        doc[key] = [_element_obj(field, c) for c in form.coeffs]
    return doc


def _poly_obj(field, poly):
    return [_element_obj(field, c) for c in poly.coeffs]


def _matrix_obj(field, matrix):
    return [[_element_obj(field, e) for e in row] for row in matrix.rows]


def _lpoly_obj(lp):
    return None if lp is None else {"q": lp.q, "genus": lp.genus, "coeffs": list(lp.coeffs)}


def _count_obj(rec):
    return {"model": rec.model, "q": rec.q, "m": rec.m, "n": rec.n,
            "seconds": round(rec.seconds, 6)}


def _split_obj(curve, sr) -> dict:
    field = curve.field
    return {
        "A": _matrix_obj(field, sr.matrix),
        "det_A": _element_obj(field, sr.det),
        "A_inv": _matrix_obj(field, sr.inverse),
        "a": _poly_obj(field, sr.a),
        "b": _poly_obj(field, sr.b),
        "c": _poly_obj(field, sr.c),
        "F": _poly_obj(field, sr.sextic),
        "s": [_element_obj(field, c) for c in sr.genus_one.quartic.coeffs],
        "genus2_model": "y^2 = F(x) in P(1,3,1)",
        "genus1_model": "Y^2 = s(x,z) in P(1,2,1)",
    }


def _report_base(command: str, args) -> dict:
    return {
        "schema": SCHEMA,
        "version": __version__,
        "command": command,
        "seed": args.seed,
    }


def _emit(report: dict, args, summary: str) -> None:
    text = json.dumps(report, indent=2, sort_keys=True)
    if args.out:
        tmp = args.out + ".tmp"
        with open(tmp, "w", encoding="utf-8") as fh:
            fh.write(text + "\n")
        os.replace(tmp, args.out)
    if args.format == "json":
        print(text)
    else:
        print(summary)
        if args.out:
            print(f"report written to {args.out}")


def _load_input(args) -> dict:
    if not args.input:
        raise DocumentError("--input PATH is required for this command")
    if args.input.lstrip().startswith("{"):  # inline document
        try:
            return json.loads(args.input)
        except json.JSONDecodeError as exc:
            raise DocumentError(f"malformed inline JSON: {exc}") from exc
    try:
        with open(args.input, "r", encoding="utf-8") as fh:
            return json.load(fh)
    except FileNotFoundError as exc:
        raise DocumentError(f"cannot read {args.input}: {exc}") from exc
    except json.JSONDecodeError as exc:
        raise DocumentError(f"malformed JSON in {args.input}: {exc}") from exc


def _curve_from_args(args) -> BiellipticQuartic:
    """Parse the curve document, honoring a --p field override."""
    curve = parse_curve_document(_load_input(args), args.seed)
    if args.p is None:
        return curve
    if curve.field.kind == "rationals":
        from .zeta import reduce_curve

        return reduce_curve(curve, args.p)
    if curve.field.p != args.p:
        raise DocumentError(
            f"--p {args.p} conflicts with the document's p = {curve.field.p}"
        )
    return curve


def _cmd_validate(args) -> int:
    curve = _curve_from_args(args)
    report_data = validate(curve, seed=args.seed)
    report = _report_base("validate", args)
    report["input"] = _curve_doc(curve)
    report["checks"] = {
        "det_nonzero": report_data.det_nonzero,
        "fg_squarefree": report_data.fg_squarefree,
        "branch_squarefree": report_data.branch_squarefree,
        "disc_cross_check": report_data.disc_cross_check,
    }
    report["det_A"] = _element_obj(curve.field, report_data.det)
    report["verdict"] = "pass" if report_data.passed else "fail"
    report["failures"] = report_data.failures
    _emit(report, args, f"validate: {report['verdict']}"
          + (f" ({'; '.join(report_data.failures)})" if report_data.failures else ""))
    return EXIT_PASS if report_data.passed else EXIT_REJECTED


def _cmd_split(args) -> int:
    curve = _curve_from_args(args)
    sr = split(curve, skip_validation=args.skip_validation, seed=args.seed)
    report = _report_base("split", args)
    report["input"] = _curve_doc(curve)
    report["split"] = _split_obj(curve, sr)
    _emit(report, args,
          f"split: F = {sr.sextic!r}, genus-2 model y^2 = F in P(1,3,1)")
    return EXIT_PASS


def _cmd_verify(args) -> int:
    curve = _curve_from_args(args)
    report = _report_base("verify", args)
    report["input"] = _curve_doc(curve)
    caps = {"axis_cap": args.cap_axis, "eval_cap": args.cap_evals}
    if curve.field.kind == "rationals":
        results = verify_split_rational(curve, seed=args.seed, **caps)
    else:
        results = [verify_split(curve, seed=args.seed, **caps)]
    subreports = []
    for res in results:
        subreports.append({
            "p": res.p,
            "verdict": res.verdict,
            "L_C": _lpoly_obj(res.l_curve),
            "L_D": _lpoly_obj(res.l_genus1),
            "L_X": _lpoly_obj(res.l_genus2),
            "L_D_times_L_X": _lpoly_obj(res.l_product),
            "counts": [_count_obj(r) for r in res.counts],
            "failure": res.failure,
            "split": _split_obj(res.split_result.curve, res.split_result),
        })
    passed = all(r.passed for r in results)
    report["verifications"] = subreports
    report["verdict"] = "pass" if passed else "fail"
    primes = ", ".join(str(r.p) for r in results)
    _emit(report, args, f"verify: {report['verdict']} (p = {primes})")
    return EXIT_PASS if passed else EXIT_VERIFICATION_FAILED


def _cmd_bruin(args) -> int:
    curve = _curve_from_args(args)
    field = curve.field
    if field.kind != "finite":
        raise DocumentError("bruin verification needs a finite base field")
    if args.epsilon is None:
        import random

        eps = field.random_nonzero(random.Random(args.seed))
    else:
        eps = field.from_int(args.epsilon)
    report_valid = validate(curve, seed=args.seed)
    if not report_valid.passed:
        raise RejectedInputError(
            "curve fails validation: " + "; ".join(report_valid.failures),
            failures=report_valid.failures,
        )
    cover = deform(curve, eps, seed=args.seed)
    result = verify_bruin(cover, depth=args.depth, seed=args.seed,
                          axis_cap=args.cap_axis, eval_cap=args.cap_evals)
    report = _report_base("bruin", args)
    report["input"] = _curve_doc(curve)
    report["epsilon"] = _element_obj(field, eps)
    report["depth"] = args.depth
    report["achieved_depth"] = result.achieved_depth
    report["full_certificate"] = result.full_certificate
    report["L_Z"] = _lpoly_obj(result.l_base)
    report["L_H"] = _lpoly_obj(result.l_hyper)
    report["predicted_cover_counts"] = list(result.predicted)
    report["actual_cover_counts"] = list(result.actual)
    report["counts"] = [_count_obj(r) for r in result.counts]
    report["verdict"] = result.verdict
    report["failure"] = result.failure
    _emit(report, args,
          f"bruin: {result.verdict} at depth {result.achieved_depth}"
          + (" (full degree-10 certificate)" if result.full_certificate else ""))
    return EXIT_PASS if result.passed else EXIT_VERIFICATION_FAILED


def _cmd_disc_check(args) -> int:
    report = _report_base("disc-check", args)
    if args.input:
        form = parse_quartic_document(_load_input(args), args.seed)
        value = disc_ternary_quartic(form, seed=args.seed)
        report["input"] = {"quartic": [[*m, _element_obj(form.field, c)]
                                       for m, c in sorted(form.coeffs.items())]}
        report["discriminant"] = _element_obj(form.field, value)
        report["singular"] = value == form.field.zero
        report["verdict"] = "pass"
        _emit(report, args, f"disc-check: discriminant = {report['discriminant']}")
        return EXIT_PASS
    # no input: the golden value must be exactly -2^40
    golden = TernaryForm.from_ints(QQ, 4, {(4, 0, 0): 1, (0, 4, 0): -1, (0, 0, 4): 1})
    value = disc_ternary_quartic(golden, seed=args.seed)
    expected = -(2**40)
    report["input"] = {"quartic": "x1^4 - x2^4 + x3^4 (golden check)"}
    report["discriminant"] = str(value)
    report["expected"] = str(expected)
    ok = value == expected
    report["verdict"] = "pass" if ok else "fail"
    _emit(report, args, f"disc-check: {value} (expected {expected}) -> {report['verdict']}")
    return EXIT_PASS if ok else EXIT_VERIFICATION_FAILED


def _cmd_selftest(args) -> int:
    from .selftest import SelftestConfig, run_all

    cfg = SelftestConfig(seed=args.seed) if args.full else SelftestConfig.quick(args.seed)
    t0 = time.perf_counter()
    results = run_all(cfg)
    passed = all(r.passed for r in results)
    report = _report_base("selftest", args)
    report["full"] = bool(args.full)
    report["criteria"] = [
        {"index": r.index, "name": r.name, "passed": r.passed,
         "detail": r.detail, "seconds": round(r.seconds, 3)}
        for r in results
    ]
    report["verdict"] = "pass" if passed else "fail"
    summary = f"selftest: {report['verdict']} ({time.perf_counter() - t0:.1f}s)"
    if args.format == "json":
        _emit(report, args, summary)
    else:
        if args.out:
            _emit(report, args, summary)
        else:
            print(summary)
    return EXIT_PASS if passed else EXIT_VERIFICATION_FAILED


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="prymsplit",
        description="Split the Jacobian of a bielliptic plane quartic and "
                    "verify the decomposition by exact point counting.",
    )
    parser.add_argument("--version", action="version", version=__version__)
    sub = parser.add_subparsers(dest="command", required=True)

    def common(p):
        p.add_argument("--input",
                       help="path to a JSON input document, or an inline JSON object")
        p.add_argument("--p", type=int, default=None,
                       help="field prime: reduces a rational document mod p, "
                            "or asserts the document's p")
        p.add_argument("--seed", type=int, default=0,
                       help="seed for every randomized step (default 0)")
        p.add_argument("--format", choices=("json", "text"), default="text")
        p.add_argument("--out", help="write the JSON report to this path (atomic)")
        p.add_argument("--cap-evals", type=int, default=DEFAULT_EVAL_CAP,
                       dest="cap_evals", help="point-evaluation budget for plane counts")
        p.add_argument("--cap-axis", type=int, default=DEFAULT_AXIS_CAP,
                       dest="cap_axis", help="largest counting field size")

    p_validate = sub.add_parser("validate", help="run the smoothness/invertibility checks")
    common(p_validate)
    p_validate.set_defaults(fn=_cmd_validate)

    p_split = sub.add_parser("split", help="compute the genus-1 and genus-2 factors")
    common(p_split)
    p_split.add_argument("--skip-validation", action="store_true",
                         help="formula-only mode for degenerate inputs")
    p_split.set_defaults(fn=_cmd_split)

    p_verify = sub.add_parser("verify", help="check L_C = L_D * L_X by point counting")
    common(p_verify)
    p_verify.set_defaults(fn=_cmd_verify)

    p_bruin = sub.add_parser("bruin", help="verify the double-cover Prym identity "
                                           "on a deformation fiber")
    common(p_bruin)
    p_bruin.add_argument("--epsilon", type=int, default=None,
                         help="deformation parameter (default: seeded random nonzero)")
    p_bruin.add_argument("--depth", type=int, default=3,
                         help="cover-count depth, 1..5 (5 = full certificate)")
    p_bruin.set_defaults(fn=_cmd_bruin)

    p_disc = sub.add_parser("disc-check", help="ternary quartic discriminant "
                                               "(golden -2^40 check without --input)")
    common(p_disc)
    p_disc.set_defaults(fn=_cmd_disc_check)

    p_self = sub.add_parser("selftest", help="run the acceptance criteria")
    common(p_self)
    p_self.add_argument("--full", action="store_true",
                        help="full-scale run (the pytest acceptance scale)")
    p_self.set_defaults(fn=_cmd_selftest)
    return parser


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.fn(args)
    except ResourceLimitError as exc:
        print(f"resource cap: {exc}", file=sys.stderr)
        return EXIT_RESOURCE
    except (DocumentError, RejectedInputError, DegenerateInputError,
            InvalidFieldError, SingularMatrixError, UnsupportedFieldError,
            UndefinedResultantError) as exc:
        print(f"rejected input: {exc}", file=sys.stderr)
        return EXIT_REJECTED
    except PrymError as exc:
        print(f"internal error: {exc}", file=sys.stderr)
        return EXIT_INTERNAL
    except Exception as exc:  # pragma: no cover - last-resort mapping
        print(f"internal error: {type(exc).__name__}: {exc}", file=sys.stderr)
        return EXIT_INTERNAL


def console_main() -> None:
    sys.exit(main())


if __name__ == "__main__":
    console_main()

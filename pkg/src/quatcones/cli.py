"""Command-line front end.

Every command reads a JSON problem document and writes one JSON document.
Exit status is 0 for success or a positive verdict, 1 for a definite
negative answer (nil ordering, not in the cone, failed verification) and 2
for malformed input.
"""
from __future__ import annotations

import argparse
import sys
from typing import Any, Sequence

from .certificate import certify_from_generator, certify_membership, verify
from .cone import ConeVerdict, check_axioms_sampled, member
from .errors import NilOrderingError, NotInConeError, QuatConeError
from .involution import classify
from .jsonio import (
    InputError,
    Problem,
    dump_certificate,
    dumps,
    loads,
    parse_certificate,
    parse_orientation,
    parse_problem,
)
from .oracle import check_homomorphism, signature_oracle
from .quaternion import hilbert_table, is_division
from .sampling import Config, ConfigSampler, standard_configs
from .signature import SignatureConvention, case_of, determine_frame, nil_check, signature

EXIT_OK, EXIT_NEGATIVE, EXIT_INPUT = 0, 1, 2


class UsageError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message: str):
        raise UsageError(message)


def build_parser() -> argparse.ArgumentParser:
    common = _Parser(add_help=False)
    common.add_argument("--input", help="problem document (default: stdin)")
    common.add_argument("--output", help="write the result here instead of stdout")
    common.add_argument("--orientation", choices=("+", "-"),
                        help="signature orientation; overrides the document")
    common.add_argument("--seed", type=int, default=0)
    common.add_argument("--trials", type=int, default=100)

    parser = _Parser(prog="quatcones", description=__doc__.splitlines()[0])
    sub = parser.add_subparsers(dest="command", required=True, parser_class=_Parser)
    sub.add_parser("classify", parents=[common], help="involution kind, symmetric basis, case tag")
    sub.add_parser("nil", parents=[common], help="is the ordering a nil-ordering")
    sub.add_parser("sign", parents=[common], help="signature of the element")
    sub.add_parser("member", parents=[common], help="cone verdict for the element")
    certify = sub.add_parser("certify", parents=[common], help="positivity certificate")
    how = certify.add_mutually_exclusive_group(required=True)
    how.add_argument("--from-generator", action="store_true")
    how.add_argument("--relative-to", metavar="ELEMENT", help="JSON array of scalars")
    check = sub.add_parser("verify", parents=[common], help="replay a certificate")
    check.add_argument("--certificate", required=True, help="certificate document")
    sub.add_parser("hilbert", parents=[common], help="local Hilbert symbols and division verdict")
    sub.add_parser("selftest", parents=[common], help="oracle cross-checks and axiom sampling")
    return parser


def _read(path: str | None) -> Any:
    try:
        if path is None or path == "-":
            return loads(sys.stdin.read())
        with open(path, encoding="utf-8") as fh:
            return loads(fh.read())
    except OSError as exc:
        raise InputError(f"cannot read {path}: {exc.strerror}") from None


def _convention(args, problem: Problem) -> SignatureConvention:
    if args.orientation is not None:
        return SignatureConvention(parse_orientation(args.orientation))
    return problem.convention


def _need_element(problem: Problem):
    if problem.element is None:
        raise InputError("this command needs an 'element'")
    return problem.element


# ----------------------------------------------------------------------------
# Commands: each returns (document, exit code)
# ----------------------------------------------------------------------------

def cmd_classify(args, problem: Problem):
    cls = classify(problem.involution, problem.algebra)
    case = case_of(problem.algebra, problem.involution, problem.ordering)
    return {
        "kind": cls.kind,
        "sym_basis": [problem.codec.dump_element(e) for e in cls.sym_basis],
        "case": case.value,
    }, EXIT_OK


def cmd_nil(args, problem: Problem):
    nil = nil_check(problem.algebra, problem.involution, problem.ordering)
    return {"nil": nil}, EXIT_NEGATIVE if nil else EXIT_OK


def cmd_sign(args, problem: Problem):
    d = _need_element(problem)
    s = signature(problem.algebra, problem.involution, problem.ordering, _convention(args, problem), d)
    return {"signature": s}, EXIT_OK


def cmd_member(args, problem: Problem):
    d = _need_element(problem)
    v = member(problem.algebra, problem.involution, problem.ordering, _convention(args, problem), d)
    ok = v in (ConeVerdict.PLUS, ConeVerdict.ZERO)
    return {"verdict": v.value}, EXIT_OK if ok else EXIT_NEGATIVE


def cmd_certify(args, problem: Problem):
    d = _need_element(problem)
    conv = _convention(args, problem)
    alg, sigma, P = problem.algebra, problem.involution, problem.ordering
    if args.from_generator:
        cert = certify_from_generator(alg, sigma, P, conv, d)
    else:
        u = problem.codec.element(loads(args.relative_to), alg)
        cert = certify_membership(alg, sigma, P, conv, d, u)
    return dump_certificate(cert, problem.codec), EXIT_OK


def cmd_verify(args, problem: Problem):
    cert = parse_certificate(_read(args.certificate), problem.codec, problem.algebra)
    result = verify(cert, problem.algebra, problem.involution, problem.ordering)
    doc: dict[str, Any] = {"ok": result.ok}
    if not result.ok:
        doc["reason"] = result.reason
    return doc, EXIT_OK if result.ok else EXIT_NEGATIVE


def cmd_hilbert(args, problem: Problem):
    alg = problem.algebra
    if not alg.field.is_rational:
        raise InputError("Hilbert symbols are computed over QQ only")
    table = hilbert_table(alg.a.p, alg.b.p)
    doc = {
        "symbols": {str(place): s for place, s in table.items()},
        "ramified": [str(place) for place, s in table.items() if s == -1],
        "division": is_division(alg),
    }
    return doc, EXIT_OK


def _selftest_config(config: Config, conv: SignatureConvention, seed: int, trials: int) -> dict:
    alg, sigma, P = config.algebra, config.involution, config.ordering
    sampler = ConfigSampler(config, seed, conv)
    mismatches = 0
    for _ in range(trials):
        d = sampler.symmetric_invertible()
        if signature(alg, sigma, P, conv, d) != signature_oracle(alg, sigma, P, conv, None, d):
            mismatches += 1
    hom = check_homomorphism(alg, sigma, P, None, trials, seed=seed)
    axioms = check_axioms_sampled(sampler.verdict, sampler, trials)
    passed = mismatches == 0 and hom.passed and axioms.passed
    return {
        "name": config.name,
        "case": config.case,
        "signature_mismatches": mismatches,
        "homomorphism_failures": len(hom.multiplicative_failures) + len(hom.involution_failures),
        "axioms": axioms.summary(),
        "passed": passed,
    }


def cmd_selftest(args, problem: Problem | None):
    if args.trials < 1:
        raise InputError("--trials must be positive")
    if not 0 <= args.seed < 1 << 64:
        raise InputError("--seed must be an unsigned 64-bit integer")
    if problem is None:
        configs = standard_configs()
        conv = SignatureConvention(parse_orientation(args.orientation or "+"))
    else:
        frame = determine_frame(problem.algebra, problem.involution, problem.ordering)
        if frame.case.is_nil:
            raise NilOrderingError(f"{problem.ordering} is a nil-ordering ({frame.case})")
        configs = [Config("input", problem.algebra, problem.involution, problem.ordering,
                          frame.case.value)]
        conv = _convention(args, problem)
    reports = [_selftest_config(c, conv, args.seed, args.trials) for c in configs]
    passed = all(r["passed"] for r in reports)
    doc = {"seed": args.seed, "trials": args.trials, "configs": reports, "passed": passed}
    return doc, EXIT_OK if passed else EXIT_NEGATIVE


COMMANDS = {
    "classify": cmd_classify,
    "nil": cmd_nil,
    "sign": cmd_sign,
    "member": cmd_member,
    "certify": cmd_certify,
    "verify": cmd_verify,
    "hilbert": cmd_hilbert,
    "selftest": cmd_selftest,
}


def _error(kind: str, message: str) -> dict:
    return {"error": kind, "message": message}


def run(argv: Sequence[str] | None = None) -> tuple[dict, int, str | None]:
    """Dispatch a command line; returns (document, exit code, output path)."""
    output = None
    try:
        args = build_parser().parse_args(argv)
        output = args.output
        if args.command == "selftest" and args.input is None:
            problem = None
        else:
            problem = parse_problem(_read(args.input))
        return (*COMMANDS[args.command](args, problem), output)
    except UsageError as exc:
        return _error("UsageError", str(exc)), EXIT_INPUT, output
    except (NilOrderingError, NotInConeError) as exc:
        return _error(type(exc).__name__, str(exc)), EXIT_NEGATIVE, output
    except (QuatConeError, ValueError, ZeroDivisionError) as exc:
        return _error(type(exc).__name__, str(exc)), EXIT_INPUT, output


def main(argv: Sequence[str] | None = None) -> int:
    doc, code, output = run(argv)
    text = dumps(doc)
    if output:
        with open(output, "w", encoding="utf-8") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)
    return code


if __name__ == "__main__":
    sys.exit(main())

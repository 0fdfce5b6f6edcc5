"""Command-line interface: ``jtphom <command> [options]``.

Exit codes: 0 success, 1 verification failed, 2 unreadable input,
3 precondition violated, 4 classification failed. Errors print one line
``error=<Kind> reason=<text>`` on stderr.
"""
from __future__ import annotations

import argparse
import sys
from typing import Any, Optional, Sequence

from . import formats as fmt
from . import scalar
from .classifier import TranscriptMap, classify, gauge_equivalent
from .errors import ClassificationError, FormatError, PreconditionError
from .families import FamilyMap, TildeVariant, canonical_suite
from .families import make_form_i, make_form_ii, make_form_iii, make_form_iv
from .herm import Unitary2, decompose_bdb, involution_from_param, involution_to_param
from .scalar import EtaTable, MultiplicativeModel, ScalarJtpHom
from .verifier import verify_all, verify_transcript

DEFAULT_SEED = 42
DEFAULT_N = 10_000
DEFAULT_TOL = 1e-8
FE_TOL = 1e-10


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        sys.stderr.write(f"error=UsageError reason={message}\n")
        raise SystemExit(2)


# -- reading inputs ----------------------------------------------------------

def _read_json(source: Optional[str], stdin) -> Any:
    """``source`` is a path, a JSON literal, or None for stdin."""
    if source is None:
        text = stdin.read()
    elif source.lstrip().startswith(("{", "[")):
        text = source
    else:
        try:
            with open(source, encoding="utf-8") as fh:
                text = fh.read()
        except OSError as e:
            raise FormatError(f"cannot read {source}: {e.strerror}") from None
    return fmt.loads(text)


def _load_map(doc: Any):
    """A JSON list is a probe transcript; an object is a map-spec."""
    if isinstance(doc, list):
        return fmt.transcript_from_json(doc)
    return FamilyMap(fmt.spec_from_json(doc))


def parse_mult(text: str, domain: str = "nonneg") -> MultiplicativeModel:
    """Shorthand ``zero|one|indicator|power:P[:NEG_SIGN]`` or a JSON object."""
    if text.lstrip().startswith("{"):
        return fmt.mult_from_json(fmt.loads(text))
    head, *rest = text.split(":")
    try:
        if head == "power":
            p = float(rest[0])
            neg = int(rest[1]) if len(rest) > 1 else 1
            return MultiplicativeModel("power", p, domain, neg)
        if rest and head != "power":
            return MultiplicativeModel(head, None, domain, int(rest[0]))
        return MultiplicativeModel(head, None, domain)
    except (ValueError, IndexError) as e:
        raise FormatError(f"bad multiplicative model {text!r}: {e}") from None


def parse_hom(text: str) -> ScalarJtpHom:
    """Shorthand ``MODEL[;ETA0,ETA1,ETA2]`` or a JSON object."""
    if text.lstrip().startswith("{"):
        return fmt.hom_from_json(fmt.loads(text))
    model, _, eta = text.partition(";")
    table = EtaTable()
    if eta:
        try:
            table = EtaTable(*(int(v) for v in eta.split(",")))
        except (TypeError, ValueError) as e:
            raise FormatError(f"bad eta table {eta!r}: {e}") from None
    return ScalarJtpHom(parse_mult(model), table)


def parse_grid(text: str) -> list[float]:
    try:
        start, stop, step = (float(v) for v in text.split(":"))
    except ValueError:
        raise FormatError(f"grid must be start:stop:step, got {text!r}") from None
    if step <= 0 or stop < start:
        raise FormatError("grid needs step > 0 and stop >= start")
    count = int(round((stop - start) / step)) + 1
    return [round(start + k * step, 12) for k in range(count) if start + k * step <= stop + step * 1e-9]


# -- commands ----------------------------------------------------------------

def cmd_gen(args, stdin) -> tuple[Any, int]:
    U = fmt.unitary_from_json(_read_json(args.u_file, stdin)) if args.u_file else Unitary2.identity()
    if args.form == "i":
        if not (args.hom1 and args.hom2):
            raise FormatError("form i needs --hom1 and --hom2")
        spec = make_form_i(U, parse_hom(args.hom1), parse_hom(args.hom2))
    elif args.form == "ii":
        spec = make_form_ii(args.sign, U)
    elif args.form == "iii":
        spec = make_form_iii(args.sign, U)
    else:
        beta = parse_mult(args.beta or "one", domain="nonzero")
        spec = make_form_iv(args.sign, U, beta, TildeVariant(args.tilde or "A"))
    return fmt.spec_to_json(spec), 0


def cmd_eval(args, stdin) -> tuple[Any, int]:
    if args.in_path is None and args.matrix is None:
        raise FormatError("eval needs --in (map-spec) or --matrix")
    m = _load_map(_read_json(args.in_path, stdin))
    A = fmt.matrix_from_json(_read_json(args.matrix, stdin))
    return fmt.matrix_to_json(m(A)), 0


def cmd_verify(args, stdin) -> tuple[Any, int]:
    m = _load_map(_read_json(args.in_path, stdin))
    if isinstance(m, TranscriptMap):
        report = verify_transcript(m, args.tol)
    else:
        report = verify_all(m, args.n, args.seed, args.tol)
    return fmt.verification_to_json(report), 0 if report.passed else 1


def cmd_classify(args, stdin) -> tuple[Any, int]:
    m = _load_map(_read_json(args.in_path, stdin))
    return fmt.classification_to_json(classify(m, args.tol)), 0


def cmd_decompose(args, stdin) -> tuple[Any, int]:
    A = fmt.matrix_from_json(_read_json(args.matrix or args.in_path, stdin))
    return fmt.bdb_to_json(decompose_bdb(A)), 0


def cmd_involution(args, stdin) -> tuple[Any, int]:
    doc = _read_json(args.matrix or args.in_path, stdin)
    if args.to_matrix:
        return fmt.matrix_to_json(involution_from_param(fmt.involution_param_from_json(doc))), 0
    return fmt.involution_param_to_json(involution_to_param(fmt.matrix_from_json(doc))), 0


def cmd_fe_check(args, stdin) -> tuple[Any, int]:
    gamma = parse_mult(args.gamma, domain="nonzero")
    tol = FE_TOL if args.tol is None else args.tol
    rows = []
    for x in parse_grid(args.grid):
        r = scalar.fe_check(gamma, x, tol)
        rows.append({"x": x, "lhs": r.lhs, "rhs": r.rhs, "gap": abs(r.lhs - r.rhs),
                     "status": "holds" if r.holds else "fails"})
    return {"gamma": fmt.mult_to_json(gamma), "tol": tol, "rows": rows,
            "all_hold": all(r["status"] == "holds" for r in rows)}, 0


def cmd_suite(args, stdin) -> tuple[Any, int]:
    members = []
    for k, spec in enumerate(canonical_suite()):
        m = FamilyMap(spec)
        report = verify_all(m, args.n, args.seed, args.tol)
        entry: dict = {"index": k, "spec": fmt.spec_to_json(spec), "max_residual": report.max_residual,
                       "verify_pass": report.passed}
        try:
            c = classify(m, args.tol)
            entry.update(branch_path=c.branch_path, fit_residual=c.fit_residual,
                         roundtrip=gauge_equivalent(spec, c.fitted, args.tol) and c.fit_residual <= args.tol)
        except ClassificationError as e:
            entry.update(classify_error=type(e).__name__, roundtrip=False)
        members.append(entry)
    ok = all(e["verify_pass"] and e["roundtrip"] for e in members)
    doc = {"seed": args.seed, "n": args.n, "tol": args.tol, "members": members, "all_pass": ok}
    return doc, 0 if ok else 1


COMMANDS = {
    "gen": cmd_gen, "eval": cmd_eval, "verify": cmd_verify, "classify": cmd_classify,
    "decompose": cmd_decompose, "involution": cmd_involution, "fe-check": cmd_fe_check,
    "suite": cmd_suite,
}


def _positive(kind):
    def conv(text):
        try:
            v = kind(text)
        except ValueError:
            raise argparse.ArgumentTypeError(f"not a number: {text!r}") from None
        if not v > 0:
            raise argparse.ArgumentTypeError("must be positive")
        return v
    return conv


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--in", dest="in_path", help="input document (path or JSON literal); default stdin")
    common.add_argument("--out", help="write the output document here instead of stdout")
    common.add_argument("--seed", type=int, default=DEFAULT_SEED)
    common.add_argument("--n", type=_positive(int), default=DEFAULT_N)
    common.add_argument("--tol", type=_positive(float), default=None)

    p = _Parser(prog="jtphom", description="J.T.P. homomorphisms of 2x2 Hermitian matrices")
    sub = p.add_subparsers(dest="command", required=True, parser_class=_Parser)

    g = sub.add_parser("gen", parents=[common], help="emit a map-spec")
    g.add_argument("--form", choices=["i", "ii", "iii", "iv"], required=True)
    g.add_argument("--sign", type=int, choices=[-1, 1], default=1)
    g.add_argument("--u-file", help="unitary document (path or JSON literal); default identity")
    g.add_argument("--beta", help="zero|one|indicator|power:P[:NEG_SIGN] or JSON")
    g.add_argument("--tilde", choices=[v.value for v in TildeVariant])
    g.add_argument("--hom1", help="MODEL[;ETA0,ETA1,ETA2] or JSON")
    g.add_argument("--hom2", help="MODEL[;ETA0,ETA1,ETA2] or JSON")

    e = sub.add_parser("eval", parents=[common], help="evaluate a map on one matrix")
    e.add_argument("--matrix", help="matrix document (path or JSON literal); default stdin")

    sub.add_parser("verify", parents=[common], help="check the law and its consequences")
    sub.add_parser("classify", parents=[common], help="recover the canonical form of a map")

    d = sub.add_parser("decompose", parents=[common], help="A = B diag(l1, l2) B")
    d.add_argument("--matrix")

    i = sub.add_parser("involution", parents=[common], help="convert involution <-> parameter")
    i.add_argument("--matrix")
    mode = i.add_mutually_exclusive_group(required=True)
    mode.add_argument("--to-matrix", action="store_true")
    mode.add_argument("--to-param", action="store_true")

    f = sub.add_parser("fe-check", parents=[common], help="tabulate the functional equation")
    f.add_argument("--gamma", default="power:1")
    f.add_argument("--grid", default="0.1:10:0.1")

    sub.add_parser("suite", parents=[common], help="verify and classify the canonical suite")
    return p


def _fail(kind: str, message: str, code: int, stdout) -> int:
    sys.stderr.write(f"error={kind} reason={' '.join(str(message).split())}\n")
    if code == 4:
        stdout.write(fmt.dumps({"error": kind, "message": str(message)}) + "\n")
    return code


def main(argv: Optional[Sequence[str]] = None, stdin=None, stdout=None) -> int:
    stdin = sys.stdin if stdin is None else stdin
    stdout = sys.stdout if stdout is None else stdout
    try:
        args = build_parser().parse_args(argv)
    except SystemExit as e:
        return int(e.code or 0)
    if args.tol is None and args.command != "fe-check":
        args.tol = DEFAULT_TOL
    try:
        doc, code = COMMANDS[args.command](args, stdin)
    except FormatError as e:
        return _fail(type(e).__name__, e, 2, stdout)
    except PreconditionError as e:
        return _fail(type(e).__name__, e, 3, stdout)
    except ClassificationError as e:
        return _fail(type(e).__name__, e, 4, stdout)
    except ValueError as e:
        return _fail("FormatError", e, 2, stdout)
    text = fmt.dumps(doc) + "\n"
    if args.out:
        with open(args.out, "w", encoding="utf-8") as fh:
            fh.write(text)
    else:
        stdout.write(text)
    return code


if __name__ == "__main__":
    raise SystemExit(main())

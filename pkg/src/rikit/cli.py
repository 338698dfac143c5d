"""Command-line front-end.

Subcommands take their inputs from a task document (see specdoc) and
write one report to stdout or --out.  Exit codes: 0 = success or all
checks passed, 1 = the analysis found a violation or counterexample
(informative for probes), 2 = malformed input.  Identical document and
seed give byte-identical report output.
"""

from __future__ import annotations

import argparse
import logging
import os
import sys
from dataclasses import replace
from fractions import Fraction
from typing import IO, Callable

from .acontinuity import ac_simulate, ac_two_limit_test, head_family
from .errors import (
    DocumentError,
    NonIntegrableHeadError,
    UnsupportedOperationError,
    ValidationError,
)
from .functions import DecreasingProfile, PowerPiece, StepFunction, Tail
from .hlp import hlp_compare
from .rearrange import rearrangement
from .report import render_decay_figure, write_rows
from .represent import representation_identity_check
from .samples import DEFAULT_SEED, axiom_profiles, pointwise_pair, rng_for, step_pair
from .scalars import Scalar
from .spaces import SpaceDescriptor, axiom_suite, evaluate_norm
from .specdoc import SpecDocument, dump_document, parse_document
from .verify import run_all, run_indexed

log = logging.getLogger("rikit.cli")

DEFAULT_K_MAX = 2**20
DEFAULT_SAMPLES = 200

_LOG_LEVELS = {"quiet": logging.ERROR, "info": logging.INFO, "debug": logging.DEBUG}


def _configure_logging() -> None:
    raw = os.environ.get("RIKIT_LOG", "")
    if raw and raw not in _LOG_LEVELS:
        print("error: RIKIT_LOG must be one of: quiet, info, debug", file=sys.stderr)
        raise SystemExit(2)
    level = _LOG_LEVELS.get(raw, logging.WARNING)
    logging.basicConfig(
        level=level, stream=sys.stderr, format="%(levelname)s %(name)s: %(message)s"
    )


# ---------------------------------------------------------------------------
# report formatting


def scalar_text(value: Scalar) -> str:
    if value.is_inf:
        return "inf"
    if value.is_exact:
        return str(value.as_fraction())
    return repr(value.as_float())


def flagged_text(value: Scalar) -> str:
    flag = "exact" if value.is_exact or value.is_inf else "approx"
    return f"{scalar_text(value)} ({flag})"


def _formula_text(coeff: Scalar, exponent: Fraction, shift: Fraction) -> str:
    c = scalar_text(coeff)
    if exponent == 0:
        return c
    base = "t" if shift == 0 else f"(t+{shift})"
    power = str(exponent) if exponent.denominator == 1 and exponent >= 0 else f"({exponent})"
    head = "" if coeff.is_exact and coeff.as_fraction() == 1 else f"{c}*"
    return f"{head}{base}^{power}"


def _print_profile(p: DecreasingProfile, out: IO[str]) -> None:
    for piece in p.pieces:
        iv = piece.interval
        formula = _formula_text(piece.coeff, piece.exponent, piece.shift)
        out.write(f"[{iv.left}, {iv.right}): {formula}\n")
    t0 = p.tail_start()
    tail = p.tail
    if tail.kind == Tail.ZERO_KIND:
        out.write(f"tail [{t0}, inf): 0\n")
    elif tail.kind == Tail.CONSTANT:
        out.write(f"tail [{t0}, inf): {scalar_text(tail.coeff)}\n")
    else:
        formula = _formula_text(tail.coeff, tail.exponent, tail.shift)
        out.write(f"tail [{t0}, inf): {formula}\n")


# ---------------------------------------------------------------------------
# document plumbing


def _load_document(args: argparse.Namespace, required: bool = True) -> SpecDocument:
    if args.spec is None:
        if required:
            raise DocumentError("this command needs a --spec document")
        doc = SpecDocument()
    else:
        try:
            with open(args.spec, "r", encoding="utf-8") as fh:
                doc = parse_document(fh.read())
        except OSError as exc:
            raise DocumentError(f"cannot read spec file: {exc}") from None
    overrides = {}
    if args.seed is not None:
        if not 0 <= args.seed < 2**64:
            raise DocumentError("--seed must fit in 64 bits")
        overrides["seed"] = args.seed
    if args.k_max is not None:
        if args.k_max < 1:
            raise DocumentError("--k-max must be positive")
        overrides["k_max"] = args.k_max
    if args.samples is not None:
        if args.samples < 1:
            raise DocumentError("--samples must be positive")
        overrides["samples"] = args.samples
    return replace(doc, **overrides) if overrides else doc


def _space_of(doc: SpecDocument) -> SpaceDescriptor:
    if doc.space is None:
        raise DocumentError("this command needs a 'space' entry", "document")
    return doc.space


def _one_function(doc: SpecDocument) -> StepFunction | DecreasingProfile:
    if len(doc.functions) != 1:
        raise DocumentError("this command needs exactly one function", "document")
    return doc.functions[0]


def _as_profile(f: StepFunction | DecreasingProfile) -> DecreasingProfile:
    return rearrangement(f) if isinstance(f, StepFunction) else f


def _seed_of(doc: SpecDocument) -> int:
    return DEFAULT_SEED if doc.seed is None else doc.seed


# ---------------------------------------------------------------------------
# subcommands


def _cmd_rearrange(doc: SpecDocument, args: argparse.Namespace, out: IO[str]) -> int:
    f = _one_function(doc)
    _print_profile(_as_profile(f).canonical(), out)
    return 0


def _cmd_norm(doc: SpecDocument, args: argparse.Namespace, out: IO[str]) -> int:
    desc = _space_of(doc)
    value = evaluate_norm(desc, _as_profile(_one_function(doc)))
    out.write(flagged_text(value) + "\n")
    return 0


def _cmd_hlp(doc: SpecDocument, args: argparse.Namespace, out: IO[str]) -> int:
    if len(doc.functions) != 2:
        raise DocumentError("hlp needs exactly two functions", "document")
    f, g = (_as_profile(item) for item in doc.functions)
    verdict = hlp_compare(f, g)
    if verdict.majorized:
        out.write("majorized\n")
        return 0
    out.write(f"not majorized; witness t={verdict.witness}\n")
    return 1


def _cmd_ac_test(doc: SpecDocument, args: argparse.Namespace, out: IO[str]) -> int:
    desc = _space_of(doc)
    verdict = ac_two_limit_test(desc, _as_profile(_one_function(doc)))
    out.write(verdict.describe() + "\n")
    return 0 if verdict.ac else 1


def _cmd_ac_simulate(doc: SpecDocument, args: argparse.Namespace, out: IO[str]) -> int:
    desc = _space_of(doc)
    q = _as_profile(_one_function(doc))
    family = doc.family if doc.family is not None else head_family()
    k_max = doc.k_max if doc.k_max is not None else DEFAULT_K_MAX
    rows = ac_simulate(desc, q, family, k_max)
    write_rows(rows, out)
    if args.plot:
        if args.out is None:
            raise DocumentError("--plot needs --out to name the figure file")
        figure = os.path.splitext(args.out)[0] + ".png"
        render_decay_figure(rows, figure, f"{desc.label()} tail decay")
        log.info("figure written to %s", figure)
    return 0


def _cmd_represent(doc: SpecDocument, args: argparse.Namespace, out: IO[str]) -> int:
    desc = _space_of(doc)
    f = _one_function(doc)
    if not isinstance(f, StepFunction):
        raise DocumentError("represent needs a step function", "function")
    check = representation_identity_check(desc, f)
    out.write(f"lhs: {flagged_text(check.lhs)}\n")
    out.write(f"rhs: {flagged_text(check.rhs)}\n")
    out.write("identity holds\n" if check.equal else "identity FAILS\n")
    return 0 if check.equal else 1


def _cmd_probe_axioms(doc: SpecDocument, args: argparse.Namespace, out: IO[str]) -> int:
    desc = _space_of(doc)
    count = doc.samples if doc.samples is not None else DEFAULT_SAMPLES
    rng = rng_for(_seed_of(doc))
    profiles = axiom_profiles(rng, count)
    ordered_pairs = tuple(pointwise_pair(rng) for _ in range(count // 4))
    function_pairs = tuple(step_pair(desc.space, rng) for _ in range(count // 4))
    report = axiom_suite(
        desc, profiles, ordered_pairs=ordered_pairs, function_pairs=function_pairs
    )
    for finding in report.findings:
        mark = "pass" if finding.passed else "FAIL"
        detail = f" ({finding.detail})" if finding.detail else ""
        out.write(f"{finding.axiom}: {mark}{detail}\n")
    if report.concavity_modulus is not None:
        out.write(f"concavity modulus: {scalar_text(report.concavity_modulus)}\n")
    return 0 if report.all_passed() else 1


def _cmd_verify(doc: SpecDocument, args: argparse.Namespace, out: IO[str]) -> int:
    seed = _seed_of(doc)
    if args.jobs > 1:
        from concurrent.futures import ProcessPoolExecutor

        with ProcessPoolExecutor(max_workers=args.jobs) as pool:
            results = tuple(pool.map(run_indexed, [(i, seed) for i in range(10)]))
    else:
        results = run_all(seed)
    for result in results:
        out.write(result.line() + "\n")
    return 0 if all(r.passed for r in results) else 1


_COMMANDS: dict[str, tuple[Callable[..., int], bool]] = {
    # handler, whether a --spec document is required
    "rearrange": (_cmd_rearrange, True),
    "norm": (_cmd_norm, True),
    "hlp": (_cmd_hlp, True),
    "ac-test": (_cmd_ac_test, True),
    "ac-simulate": (_cmd_ac_simulate, True),
    "represent": (_cmd_represent, True),
    "probe-axioms": (_cmd_probe_axioms, True),
    "verify": (_cmd_verify, False),
}


# ---------------------------------------------------------------------------
# entry point


def _build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--spec", metavar="PATH", help="task document to read")
    common.add_argument("--out", metavar="PATH", help="write the report here instead of stdout")
    common.add_argument("--seed", type=int, metavar="U64", help="override the document seed")
    common.add_argument("--jobs", type=int, default=1, metavar="N", help="parallel probe workers")
    common.add_argument("--k-max", type=int, dest="k_max", metavar="N", help="largest family index")
    common.add_argument("--samples", type=int, metavar="N", help="sample count for probes")
    common.add_argument("--dump-spec", action="store_true", dest="dump_spec",
                        help="print the canonical document and exit")
    common.add_argument("--plot", action="store_true",
                        help="also render a decay figure next to the CSV")

    parser = argparse.ArgumentParser(
        prog="rikit",
        description="Exact-arithmetic analyses on rearrangement-invariant spaces.",
    )
    sub = parser.add_subparsers(dest="command", required=True, metavar="COMMAND")
    descriptions = {
        "rearrange": "print the decreasing rearrangement of a function",
        "norm": "evaluate the space norm of a function",
        "hlp": "compare two functions in the partial-integral order",
        "ac-test": "classify a profile by the two vanishing limits",
        "ac-simulate": "write the (k, norm) decay table for a shrinking family",
        "represent": "check the norm identity under the representation operator",
        "probe-axioms": "run the quasinorm axiom suite on sampled functions",
        "verify": "run the full acceptance suites",
    }
    for name, text in descriptions.items():
        sub.add_parser(name, parents=[common], help=text, description=text)
    return parser


def run(argv: list[str]) -> int:
    _configure_logging()
    args = _build_parser().parse_args(argv)
    try:
        doc = _load_document(args, required=_COMMANDS[args.command][1])
        if args.dump_spec:
            text = dump_document(doc)
            if args.out:
                with open(args.out, "w", encoding="utf-8") as fh:
                    fh.write(text)
            else:
                sys.stdout.write(text)
            return 0
        handler = _COMMANDS[args.command][0]
        if args.out:
            with open(args.out, "w", encoding="utf-8") as fh:
                return handler(doc, args, fh)
        return handler(doc, args, sys.stdout)
    except DocumentError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    except (ValidationError, NonIntegrableHeadError, UnsupportedOperationError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2


def main() -> int:
    return run(sys.argv[1:])


if __name__ == "__main__":
    sys.exit(main())

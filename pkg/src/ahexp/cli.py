"""Command-line interface.

Documents are read as JSON Lines from ``--in FILE`` or stdin and written as
JSON Lines to ``--out FILE`` or stdout.

Exit codes: 0 pass, 1 property failure, 2 usage or input error,
3 precision failure, 4 internal inconsistency (a bug).
"""

from __future__ import annotations

import argparse
import sys
from fractions import Fraction

from . import corpus
from .artinhasse import ah_build
from .charp import corollary_report, decompose, enumerate_small, theorem_check
from .documents import DocumentError, SeriesDocument, dumps, read_stream
from .errors import (
    AhexpError,
    InternalInconsistency,
    NonUnitConstantTerm,
    NotPrime,
    PrecisionError,
    TooLarge,
    ConstantTermNotOne,
)
from .padic import PrecisionPolicy, check_prime
from .padiccrit import (
    LogCoefficients,
    dwork_check,
    exp_dwork_check,
    prop_cond2_check,
    prop_equivalence,
    run_with_retry,
    theorem_via_proposition,
)
from .series import PadicSeries, ser_exp

EXIT_PASS, EXIT_FAIL, EXIT_USAGE, EXIT_PRECISION, EXIT_INTERNAL = 0, 1, 2, 3, 4


class UsageError(Exception):
    pass


# ---------------------------------------------------------------------------
# helpers


def _policy(p: int, T: int, prec: int | None) -> PrecisionPolicy:
    base = PrecisionPolicy.for_trunc(p, T)
    if prec is None:
        return base
    return PrecisionPolicy(p, prec, max(prec, base.M), base.guard)


def _read_docs(args) -> list[SeriesDocument]:
    if args.infile:
        with open(args.infile, encoding="utf-8") as fh:
            text = fh.read()
    else:
        text = sys.stdin.read()
    docs = read_stream(text)
    if not docs:
        raise UsageError("no input documents")
    return docs


def _format_series_text(doc: SeriesDocument) -> str:
    f = doc.to_series()
    if doc.ring == "fp":
        return repr(f)
    return "\n".join(f"{k}: {c!r}" for k, c in enumerate(f.coeffs))


def _format_report_text(rep: dict) -> str:
    verdict = "PASS" if rep["passed"] else "FAIL"
    parts = [verdict, f"mode={rep.get('mode')}", f"T={rep['trunc']}", f"detail={rep['detail']}"]
    if rep.get("first_violation"):
        parts.append(f"at={rep['first_violation']['index']}")
    if "c" in rep:
        parts.append(f"c={rep['c']}")
    return " ".join(parts)


# ---------------------------------------------------------------------------
# commands (each returns (lines, exit code))


def cmd_ep(args):
    check_prime(args.p)
    if args.deg < 0:
        raise UsageError("--deg must be >= 0")
    ah = ah_build(args.p, args.deg, _policy(args.p, args.deg, args.prec))
    docs = []
    if args.ring in ("fp", "both"):
        docs.append(SeriesDocument.from_series(ah.modp, {"series": "artin-hasse"}))
    if args.ring in ("padic", "both"):
        docs.append(SeriesDocument.from_series(ah.exact, {"series": "artin-hasse"}))
    if args.format == "text":
        return [_format_series_text(d) for d in docs], EXIT_PASS
    return [d.dumps() for d in docs], EXIT_PASS


def _is_log_doc(doc: SeriesDocument) -> bool:
    if doc.meta.get("series") == "log":
        return True
    return doc.coeffs[0] == {"digits": 0, "unit": "0", "val": "inf"}


def _padic_check(doc: SeriesDocument, mode: str, prec: int | None):
    """Run a p-adic mode; documents with exact rationals are retried at higher precision."""
    exact = doc.exact_rationals()

    def run(ctx):
        if exact is not None:
            f = PadicSeries(ctx, exact, doc.trunc)
        else:
            f = doc.to_series(ctx.N if prec is not None else None)
        if _is_log_doc(doc):
            g = LogCoefficients.from_series(f)
            if mode == "dwork":
                return exp_dwork_check(g)
            rep = prop_equivalence(ser_exp(f))
            cond2 = prop_cond2_check(g)
            return _with(rep, cond2_of_input=cond2.passed)
        if mode == "dwork":
            return dwork_check(f)
        return prop_equivalence(f)

    start = doc.context(prec)
    if exact is None:
        return run(start)
    return run_with_retry(run, _policy(doc.p, doc.trunc, prec))


def _with(rep, **extra):
    merged = dict(rep.extra)
    merged.update(extra)
    return type(rep)(rep.passed, rep.trunc, rep.first_violation, rep.detail, merged)


def _check_one(doc: SeriesDocument, mode: str, prec: int | None):
    if mode in ("theorem", "corollary"):
        if doc.ring != "fp":
            raise UsageError(f"mode {mode} needs an fp document")
        f = doc.to_series()
        return theorem_check(f) if mode == "theorem" else corollary_report(f)
    if doc.ring != "padic":
        raise UsageError(f"mode {mode} needs a padic document")
    return _padic_check(doc, mode, prec)


def cmd_check(args):
    docs = _read_docs(args)
    lines, code = [], EXIT_PASS
    for doc in docs:
        rep = _check_one(doc, args.mode, args.prec).to_json()
        rep["mode"] = args.mode
        if not rep["passed"]:
            code = EXIT_FAIL
        lines.append(_format_report_text(rep) if args.format == "text" else dumps(rep))
    return lines, code


def cmd_decompose(args):
    docs = _read_docs(args)
    lines, code = [], EXIT_PASS
    for doc in docs:
        if doc.ring != "fp":
            raise UsageError("decompose needs an fp document")
        f = doc.to_series()
        if args.via == "direct":
            res = decompose(f)
        else:
            rep = theorem_check(f)
            if rep.passed:
                res = theorem_via_proposition(f, _policy(f.p, f.trunc, args.prec))
            else:
                res = decompose(f)
        if not res.residual_ok:
            out = res.report.to_json()
            out["mode"] = "decompose"
            lines.append(dumps(out))
            code = EXIT_FAIL
            continue
        out = SeriesDocument.from_series(res.g, {"c": res.c.value, "kind": "decomposition"})
        lines.append(out.dumps())
    return lines, code


def cmd_enumerate(args):
    check_prime(args.p)
    e = enumerate_small(args.p, args.deg)
    lines = []
    for name, members in (("property", e.property), ("form", e.form)):
        for f in sorted(members):
            lines.append(SeriesDocument.from_series(f, {"set": name}).dumps())
    return lines, EXIT_PASS


def cmd_random(args):
    p, T = check_prime(args.p), args.deg
    if T < 0 or args.count < 0:
        raise UsageError("--deg and --count must be >= 0")
    if not -(2**63) <= args.seed < 2**64:
        raise UsageError("--seed must be a 64-bit integer")
    rng = corpus.rng_for(args.seed)
    lines = []
    for i in range(args.count):
        meta = {"index": i, "kind": args.kind, "rng": corpus.RNG_ID, "seed": args.seed}
        if args.kind == "property":
            c, g, f = corpus.random_property(rng, p, T)
            meta.update(c=c, g=list(g.coeffs))
            doc = SeriesDocument.from_series(f, meta)
        elif args.kind == "arbitrary":
            doc = SeriesDocument.from_series(corpus.random_arbitrary(rng, p, T), meta)
        else:
            cs = [Fraction(0)] + corpus.random_cond2(rng, p, T)
            meta.update(series="log", exact=[str(q) for q in cs])
            doc = SeriesDocument.from_series(PadicSeries(_policy(p, T, args.prec), cs, T), meta)
        lines.append(doc.dumps())
    return lines, EXIT_PASS


# ---------------------------------------------------------------------------


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="ahexp",
        description="Artin-Hasse exponentials and exponential-type series over F_p.")
    sub = parser.add_subparsers(dest="command", required=True)

    def io(sp, inputs=True):
        sp.add_argument("--format", choices=("json", "text"), default="json")
        sp.add_argument("--out", dest="outfile", metavar="FILE")
        sp.add_argument("--prec", type=int, help="working p-adic digits N")
        if inputs:
            sp.add_argument("--in", dest="infile", metavar="FILE")

    sp = sub.add_parser("ep", help="Artin-Hasse exponential E_p truncated at --deg")
    sp.add_argument("--p", type=int, required=True)
    sp.add_argument("--deg", type=int, required=True)
    sp.add_argument("--ring", choices=("fp", "padic", "both"), default="fp")
    io(sp, inputs=False)
    sp.set_defaults(func=cmd_ep)

    sp = sub.add_parser("check", help="check documents against a criterion")
    sp.add_argument("--mode", choices=("theorem", "corollary", "dwork", "prop"), required=True)
    io(sp)
    sp.set_defaults(func=cmd_check)

    for name, mode in (("dwork", "dwork"), ("prop", "prop")):
        sp = sub.add_parser(name, help=f"same as check --mode {mode}")
        io(sp)
        sp.set_defaults(func=cmd_check, mode=mode)

    sp = sub.add_parser("decompose", help="write F = E_p(cX) G(X^p); emits G with c in meta")
    sp.add_argument("--via", choices=("direct", "padic"), default="direct")
    io(sp)
    sp.set_defaults(func=cmd_decompose)

    sp = sub.add_parser("enumerate", help="all series with the property vs all E_p(cX) G(X^p)")
    sp.add_argument("--p", type=int, required=True)
    sp.add_argument("--deg", type=int, required=True)
    io(sp, inputs=False)
    sp.set_defaults(func=cmd_enumerate)

    sp = sub.add_parser("random", help="seeded random documents")
    sp.add_argument("--p", type=int, required=True)
    sp.add_argument("--deg", type=int, required=True)
    sp.add_argument("--seed", type=int, required=True)
    sp.add_argument("--kind", choices=("property", "arbitrary", "cond2"), default="property")
    sp.add_argument("--count", type=int, default=1)
    io(sp, inputs=False)
    sp.set_defaults(func=cmd_random)
    return parser


def main(argv=None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return int(exc.code or 0)
    try:
        lines, code = args.func(args)
    except (UsageError, DocumentError, NotPrime, TooLarge, NonUnitConstantTerm,
            ConstantTermNotOne) as exc:
        print(f"ahexp: error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except PrecisionError as exc:
        print(f"ahexp: precision: {exc} (raise --prec)", file=sys.stderr)
        return EXIT_PRECISION
    except InternalInconsistency as exc:
        print(f"ahexp: internal inconsistency: {exc}", file=sys.stderr)
        return EXIT_INTERNAL
    except AhexpError as exc:
        print(f"ahexp: error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    text = "".join(line + "\n" for line in lines)
    if args.outfile:
        with open(args.outfile, "w", encoding="utf-8", newline="\n") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)
    return code


if __name__ == "__main__":
    sys.exit(main())

"""Command-line entry point: ``circmax {search,verify,conjectures,bounds}``."""
from __future__ import annotations

import argparse
import json
import logging
import sys
import time
from typing import List, Optional

from .bounds import hbe_floor_scaled, u01_bound, upm1_bound
from .conjectures import (conjecture_a_status, perturbation_scan, ura_chain,
                          ura_det_polynomial, ura_spec)
from .engine import SearchConfig, SearchError, search
from .modfield import BoundViolation
from .oracle import det_polynomial_in_entry
from .reference import TABLE_RANGE, estimated_seconds, table_lookup, verify_range
from .spectral import Alphabet

EXIT_OK = 0
EXIT_FAILED = 1
EXIT_USAGE = 2
EXIT_INTERNAL = 3


class Inconsistency(RuntimeError):
    pass


def _emit(record: dict, out) -> None:
    out.write(json.dumps(record) + "\n")
    out.flush()


def _word_text(word, alphabet: Alphabet) -> str:
    return word.signed_str() if alphabet is Alphabet.PM1 else str(word)


def search_record(res, elapsed: float, seed: int, workers: int) -> dict:
    rec = {
        "n": res.n,
        "alphabet": res.alphabet.value,
        "max_abs_det": str(res.max_abs_det),
    }
    if res.alphabet is Alphabet.PM1:
        rec["scaled_det"] = str(res.scaled_det)
    rec.update({
        "upper_bound": str(res.upper_bound),
        "ratio": res.ratio,
        "lex_least_decimal": str(res.lex_least_decimal),
        "lex_least_word": _word_text(res.lex_least_word, res.alphabet),
        "candidates": str(res.candidates_examined),
        "elapsed_seconds": round(elapsed, 3),
        "prime_used": str(res.prime),
        "seed": seed,
        "workers": workers,
    })
    return rec


def _config(args, keep_all: bool = False) -> SearchConfig:
    return SearchConfig(sample_size=getattr(args, "sample_size", None),
                        seed=getattr(args, "seed", 0),
                        backend=getattr(args, "backend", "auto"),
                        checkpoint=getattr(args, "checkpoint", None),
                        keep_all=keep_all)


def cmd_search(args, out) -> int:
    t0 = time.perf_counter()
    res = search(args.order, args.alphabet, args.workers, _config(args))
    rec = search_record(res, time.perf_counter() - t0, args.seed, args.workers)
    if args.output:
        with open(args.output, "a") as fh:
            _emit(rec, fh)
    _emit(rec, out)
    return EXIT_OK


def cmd_verify(args, out) -> int:
    alphabets = [Alphabet.parse(args.alphabet)] if args.alphabet else list(Alphabet)
    if not args.words_only and args.alphabet is None:
        raise argparse.ArgumentTypeError("--alphabet is required unless --words-only")
    ok = True
    for alpha in alphabets:
        hi = args.to if args.to is not None else TABLE_RANGE[alpha]
        report = verify_range(args.from_, hi, alpha, args.workers, args.budget_seconds,
                              _config(args), words_only=args.words_only, strict=False,
                              progress=lambda c: print(c.line(), file=out, flush=True))
        passed = len(report.rows) - len(report.failures)
        print(f"{alpha.value}: {passed}/{len(report.rows)} rows PASS", file=out)
        ok = ok and report.ok
    return EXIT_OK if ok else EXIT_FAILED


def cmd_conjectures(args, out) -> int:
    if args.which == "a":
        hi = args.to if args.to is not None else TABLE_RANGE[Alphabet.BINARY01]
        equal = []
        consistent = True
        for n in range(args.from_, hi + 1):
            row = table_lookup(n, Alphabet.BINARY01)
            searchable = args.budget_seconds is None or estimated_seconds(n) <= args.budget_seconds
            if searchable or row is None:
                D = search(n, Alphabet.BINARY01, args.workers, _config(args)).max_abs_det
                source = "search"
            else:
                D, source = row.max_value, "table"
            st = conjecture_a_status(n, D)
            rec = st.as_record()
            rec["source"] = source
            _emit(rec, out)
            consistent = consistent and st.consistent
            if st.attains_bound:
                equal.append(n)
        _emit({"equality_cases": equal, "consistent": consistent}, out)
        return EXIT_OK if consistent else EXIT_FAILED

    if args.which == "b":
        if args.order is None or args.order > 32:
            raise argparse.ArgumentTypeError("conjectures b needs --order <= 32")
        alpha = Alphabet.parse(args.alphabet or "01")
        res = search(args.order, alpha, args.workers, _config(args, keep_all=True))
        findings = perturbation_scan(args.order, alpha, res.achievers, res.max_abs_det,
                                     grid=args.grid)
        for f in findings:
            _emit(f.as_record(), out)
        _emit({"n": args.order, "alphabet": alpha.value, "D": str(res.max_abs_det),
               "maximizers": len(res.achievers), "findings": len(findings),
               "exhaustive": False}, out)
        return EXIT_OK

    # ura
    n = args.order if args.order is not None else 13
    poly = det_polynomial_in_entry(ura_spec(n), 0)
    if poly != ura_det_polynomial(n):
        raise Inconsistency(f"interpolated determinant of A_{n}(x) differs from closed form")
    row = table_lookup(n, Alphabet.BINARY01)
    d01 = row.max_value if row else search(n, Alphabet.BINARY01, args.workers).max_abs_det
    chain = ura_chain(n, d01)
    _emit({
        "n": n, "k": chain.k, "U01": str(chain.u01),
        "det_at_xk": round(chain.det_at_xk, 2),
        "det_at_half": str(chain.det_at_half), "det_at_half_float": round(float(chain.det_at_half), 2),
        "D01": str(chain.d01), "det_at_one": str(chain.det_at_one),
        "det_at_zero": str(chain.det_at_zero), "chain_holds": chain.holds,
        "closed_form_matches": True,
    }, out)
    return EXIT_OK


def cmd_bounds(args, out) -> int:
    alpha = Alphabet.parse(args.alphabet)
    n = args.order
    U = u01_bound(n) if alpha is Alphabet.BINARY01 else upm1_bound(n)
    hn = n + 1 if alpha is Alphabet.BINARY01 else n
    print(U, file=out)
    print(f"H_BE({hn}) floor: {hbe_floor_scaled(hn, 0)}", file=out)
    return EXIT_OK


def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="circmax",
                                description="Maximal determinants of binary circulants")
    p.add_argument("-v", "--verbose", action="store_true")
    sub = p.add_subparsers(dest="command", required=True)

    def common(sp, order_required=False):
        sp.add_argument("--order", type=int, required=order_required)
        sp.add_argument("--workers", type=int, default=1)
        sp.add_argument("--sample-size", type=int, default=None)
        sp.add_argument("--seed", type=int, default=0)
        sp.add_argument("--backend", choices=["auto", "numba", "python"], default="auto")
        sp.add_argument("--checkpoint", default=None)

    s = sub.add_parser("search", help="exhaustive search for one order")
    common(s, order_required=True)
    s.add_argument("--alphabet", choices=["01", "pm1"], required=True)
    s.add_argument("--output", default=None)

    v = sub.add_parser("verify", help="compare against the published tables")
    common(v)
    v.add_argument("--alphabet", choices=["01", "pm1"], default=None)
    v.add_argument("--from", dest="from_", type=int, default=1)
    v.add_argument("--to", type=int, default=None)
    v.add_argument("--budget-seconds", type=float, default=None)
    v.add_argument("--words-only", action="store_true")

    c = sub.add_parser("conjectures", help="circulant cores and perturbation analysis")
    c.add_argument("which", choices=["a", "b", "ura"])
    common(c)
    c.add_argument("--alphabet", choices=["01", "pm1"], default=None)
    c.add_argument("--from", dest="from_", type=int, default=1)
    c.add_argument("--to", type=int, default=None)
    c.add_argument("--budget-seconds", type=float, default=60.0)
    c.add_argument("--grid", type=int, default=1000)

    b = sub.add_parser("bounds", help="print determinant upper bounds")
    b.add_argument("--order", type=int, required=True)
    b.add_argument("--alphabet", choices=["01", "pm1"], required=True)
    return p


COMMANDS = {"search": cmd_search, "verify": cmd_verify,
            "conjectures": cmd_conjectures, "bounds": cmd_bounds}


def main(argv: Optional[List[str]] = None, out=None) -> int:
    out = out or sys.stdout
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return EXIT_USAGE if exc.code else EXIT_OK
    logging.basicConfig(level=logging.INFO if args.verbose else logging.WARNING,
                        format="%(levelname)s %(name)s: %(message)s")
    if getattr(args, "order", None) is not None and args.order < 1:
        print("error: --order must be positive", file=sys.stderr)
        return EXIT_USAGE
    if getattr(args, "workers", 1) < 1:
        print("error: --workers must be positive", file=sys.stderr)
        return EXIT_USAGE
    try:
        return COMMANDS[args.command](args, out)
    except (argparse.ArgumentTypeError, ValueError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except (BoundViolation, SearchError, Inconsistency, ArithmeticError) as exc:
        print(f"internal inconsistency: {exc}", file=sys.stderr)
        return EXIT_INTERNAL


if __name__ == "__main__":
    sys.exit(main())

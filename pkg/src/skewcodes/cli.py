"""Command-line front end: ``skewcodes <command> ...``."""

from __future__ import annotations

import argparse
import sys
from pathlib import Path

from . import harness
from .codec import CodeError
from .config import ConfigError, load_config
from .galois import FieldError
from .harness import CursorError, FixtureError
from .notation import NotationError
from .skew import SkewError


def degree_range(text: str) -> range:
    """``"3"`` or ``"1..9"`` (inclusive); a reversed range is empty."""
    if ".." in text:
        a, b = text.split("..", 1)
        return range(int(a), int(b) + 1)
    return range(int(text), int(text) + 1)


def _write(report: dict, path: str | None) -> None:
    text = harness.dump_report(report)
    if path:
        Path(path).write_text(text)
    else:
        sys.stdout.write(text)


def _fmt_params(r: dict) -> str:
    if r.get("k") is None:
        return "-"
    d = r.get("d")
    return f"[{r['n']},{r['k']},{d if d is not None else '?'}]"


def cmd_verify(args, cfg) -> int:
    rows = []
    for name in args.fixtures:
        rows.extend(harness.load_fixtures(name))
    report = harness.cmd_verify(rows, cfg, source=",".join(args.fixtures))
    for r in report["rows"]:
        extra = [r["delta"] or ""]
        if r.get("gray"):
            extra.append(f"N={r['gray']['name']}/{r['gray']['coords']}")
        print(f"{r['status']:8} {r['id']:22} {_fmt_params(r):14} {' '.join(extra)}")
        for note in r["notes"]:
            print(f"{'':9}note: {note}")
    s = report["summary"]
    print(f"PASS {s['PASS']}  FLAGGED {s['FLAGGED']}  FAIL {s['FAIL']}")
    if args.report:
        _write(report, args.report)
    if args.csv:
        Path(args.csv).write_text(harness.report_csv(report))
    return 1 if s["FAIL"] else 0


def cmd_search(args, cfg) -> int:
    report = harness.cmd_search(
        args.q, args.n, degree_range(args.deg), args.alpha.split(","), l=args.l,
        budget=args.budget, resume=args.resume, target_d=args.target_d, cfg=cfg,
        keep_all=args.all,
    )
    _write(report, args.report)
    if not report["complete"]:
        print(f"budget exhausted; resume with --resume {report['next_cursor']}", file=sys.stderr)
    return 0


def cmd_code_info(args, cfg) -> int:
    _write(harness.code_info(args.q, args.n, args.g, args.alpha, cfg, e=args.e), args.report)
    return 0


def cmd_gray(args, cfg) -> int:
    text = Path(args.N).read_text()
    _write(harness.gray_info(args.q, text, args.l, args.coords, cfg), args.report)
    return 0


def cmd_dna(args, cfg) -> int:
    if args.q != 4:
        raise CodeError("the DNA correspondence is defined over F_4 only")
    report, table = harness.dna_info(args.n, args.g, args.alpha, cfg)
    if args.emit:
        body = table.as_fasta() if args.emit == "fasta" else table.as_text()
        if args.out:
            Path(args.out).write_text(body)
        else:
            sys.stdout.write(body)
    if args.report or not args.emit:
        _write(report, args.report)
    return 0


def cmd_factor_check(args, cfg) -> int:
    report = harness.cmd_factor_check(args.q, args.n, args.g, args.cofactor, args.alpha, cfg,
                                      e=args.e)
    _write(report, args.report)
    return 0 if report["product_equal"] and report["remainder_zero"] else 1


def build_parser() -> argparse.ArgumentParser:
    ap = argparse.ArgumentParser(prog="skewcodes",
                                 description="Skew cyclic codes with inner derivations")
    ap.add_argument("--config", help="key = value config file (default: $SKEWCODES_CONFIG)")
    sub = ap.add_subparsers(dest="command", required=True)

    p = sub.add_parser("verify", help="reproduce fixture rows")
    p.add_argument("--fixtures", nargs="+", required=True,
                   help="fixture set names (table1..table5, examples) or YAML files")
    p.add_argument("--report", help="write the JSON report here")
    p.add_argument("--csv", help="write a CSV summary here")
    p.set_defaults(func=cmd_verify)

    def code_args(p, need_g=True):
        p.add_argument("--q", type=int, required=True)
        p.add_argument("--n", type=int, required=True)
        if need_g:
            p.add_argument("--g", required=True, help="generator, canonical or algebraic form")
        p.add_argument("--alpha", default="0", help="derivation multiplier token")
        p.add_argument("--report")

    p = sub.add_parser("search", help="enumerate right divisors and keep the (k,d) frontier")
    code_args(p, need_g=False)
    p.add_argument("--deg", required=True, help="degree or inclusive range a..b")
    p.add_argument("--l", type=int, default=1)
    p.add_argument("--budget", type=int, help="max candidates to examine")
    p.add_argument("--resume", help="cursor printed by an earlier partial run")
    p.add_argument("--target-d", type=int)
    p.add_argument("--all", action="store_true", help="also list every code found")
    p.set_defaults(func=cmd_search)

    p = sub.add_parser("code-info", help="parameters of one (theta,delta)-cyclic code")
    code_args(p)
    p.add_argument("--e", type=int, default=1, help="theta = Frobenius^e")
    p.set_defaults(func=cmd_code_info)

    p = sub.add_parser("gray", help="check a Gray matrix N with N N^T = beta I")
    p.add_argument("--q", type=int, required=True)
    p.add_argument("--l", type=int, required=True)
    p.add_argument("--N", required=True, help="matrix file, one row per line")
    p.add_argument("--coords", choices=["v", "crt"], default="v")
    p.add_argument("--report")
    p.set_defaults(func=cmd_gray)

    p = sub.add_parser("dna", help="DNA closure checks and codeword table over F_4")
    code_args(p)
    p.add_argument("--emit", choices=["txt", "fasta"])
    p.add_argument("--out", help="write emitted words here")
    p.set_defaults(func=cmd_dna)

    p = sub.add_parser("factor-check", help="multiply cofactor * g and compare with x^n - 1")
    code_args(p)
    p.add_argument("--cofactor", required=True)
    p.add_argument("--e", type=int, default=1)
    p.set_defaults(func=cmd_factor_check)
    return ap


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    try:
        cfg = load_config(args.config)
        return args.func(args, cfg)
    except (ConfigError, CursorError, FixtureError, FieldError, NotationError, SkewError, CodeError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())

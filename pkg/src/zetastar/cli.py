"""``zetastar`` command line.

Exit status: 0 when every requested check passes, 1 when a check fails,
2 on bad input.
"""

from __future__ import annotations

import argparse
import json
import os
import sys
from concurrent.futures import ProcessPoolExecutor
from fractions import Fraction
from typing import Optional

from .compositions import (
    ParseError,
    expand_spec,
    format_composition,
    format_star_spec,
    parse_signed_composition,
    parse_star_spec,
    render_terms,
)
from .mhs import MHSEvaluator
from .numeric import lemma42_decay, verify_thm12_numeric, zeta_numeric, zeta_star_composition, zeta_star_numeric
from .oplus import HypothesisError, equal_as_term_multisets, expand_kappa_limit, expand_oplus
from .string_ops import lemma21_check, verify_thm23

JOBS_ENV = "ZETASTAR_JOBS"


class UsageError(Exception):
    pass


def _frac(x: Fraction) -> str:
    return f"{x.numerator}/{x.denominator}" if x.denominator != 1 else str(x.numerator)


def parse_n_range(text: str) -> list[int]:
    try:
        if ".." in text:
            lo, hi = (int(p) for p in text.split("..", 1))
        else:
            lo = hi = int(text)
    except ValueError:
        raise UsageError(f"bad n range {text!r}; use N or LO..HI")
    if not 1 <= lo <= hi:
        raise UsageError(f"need 1 <= n_min <= n_max, got {text!r}")
    return list(range(lo, hi + 1))


def parse_int_list(text: str) -> list[int]:
    try:
        return [int(p) for p in text.split(",") if p.strip()]
    except ValueError:
        raise UsageError(f"bad integer list {text!r}")


def _verify_cell(args: tuple[str, int]) -> dict:
    spec_text, n = args
    spec = parse_star_spec(spec_text)
    report = verify_thm23(n, spec, MHSEvaluator())
    return {
        "spec": format_star_spec(spec),
        "n": n,
        "lhs": _frac(report.lhs),
        "rhs": _frac(report.rhs),
        "equal": report.equal,
        "term_count": report.term_count,
        "note": report.note,
    }


def cmd_verify_mhs(args) -> tuple[bool, dict, list[str]]:
    spec = parse_star_spec(args.spec)
    ns = parse_n_range(args.n)
    cells = [(format_star_spec(spec), n) for n in ns]
    jobs = args.jobs or int(os.environ.get(JOBS_ENV, "1") or 1)
    if jobs > 1 and len(cells) > 1:
        with ProcessPoolExecutor(max_workers=jobs) as pool:
            reports = list(pool.map(_verify_cell, cells))
    else:
        reports = [_verify_cell(c) for c in cells]
    ok = all(r["equal"] for r in reports)
    lines = []
    for r in reports:
        status = "equal" if r["equal"] else "THEOREM VIOLATION: lhs != rhs"
        note = f" ({r['note']})" if r["note"] else ""
        lines.append(f"n={r['n']} H*={r['lhs']} rhs={r['rhs']} terms={r['term_count']} {status}{note}")
    return ok, {"command": "verify-mhs", "spec": format_star_spec(spec), "reports": reports, "ok": ok}, lines


def cmd_expand(args) -> tuple[bool, dict, list[str]]:
    spec = parse_star_spec(args.spec)
    label = f"z*({format_star_spec(spec)})"
    out: dict = {"command": "expand", "spec": format_star_spec(spec), "mode": args.mode}
    lines = []
    ok = True
    oplus_terms = kappa = None
    if args.mode in ("oplus", "both"):
        oplus_terms = expand_oplus(spec)
        out["oplus"] = [t.to_record() for t in oplus_terms]
        lines.append(f"{label} = {render_terms(oplus_terms)}")
    if args.mode in ("kappa", "both"):
        kappa = expand_kappa_limit(spec)
        out["kappa"] = [t.to_record() for t in kappa]
        lines.append(f"{label} = {render_terms(kappa)}" + ("  [limit form]" if args.mode == "both" else ""))
    if args.mode == "both":
        ok = equal_as_term_multisets(oplus_terms, kappa)
        out["equal"] = ok
        lines.append("term multisets equal" if ok else "TERM MULTISETS DIFFER")
    out["ok"] = ok
    return ok, out, lines


def cmd_check_lemma(args) -> tuple[bool, dict, list[str]]:
    if args.which == "21":
        if args.n is None:
            raise UsageError("check-lemma 21 needs --n")
        v = parse_signed_composition(args.v or "")
        rep = lemma21_check(int(args.n), args.a, args.c, v)
        data = {
            "command": "check-lemma",
            "lemma": "21",
            "n": int(args.n),
            "a": args.a,
            "c": args.c,
            "v": list(v),
            "lhs": _frac(rep.lhs),
            "rhs": _frac(rep.rhs),
            "equal": rep.equal,
            "ok": rep.equal,
        }
        line = f"lhs={data['lhs']} rhs={data['rhs']} " + ("equal" if rep.equal else "NOT EQUAL")
        return rep.equal, data, [line]
    s = parse_signed_composition(args.s or "")
    ns = parse_int_list(args.n or "10,100,1000")
    try:
        table = lemma42_decay(s, args.e, ns)
    except ValueError as exc:
        raise UsageError(str(exc))
    decreasing = all(b[1] < a[1] for a, b in zip(table, table[1:]))
    data = {
        "command": "check-lemma",
        "lemma": "42",
        "s": format_composition(s),
        "e": args.e,
        "table": [{"n": n, "value": repr(v)} for n, v in table],
        "decreasing": decreasing,
        "ok": decreasing,
    }
    lines = [f"n={n:>8}  {v:.12e}" for n, v in table]
    lines.append("strictly decreasing" if decreasing else "NOT strictly decreasing")
    return decreasing, data, lines


def cmd_eval(args) -> tuple[bool, dict, list[str]]:
    data: dict = {"command": "eval", "target": args.target}
    if args.target == "mhs" or (args.target == "star" and args.n is not None):
        if args.n is None:
            raise UsageError("eval mhs needs --n")
        s = parse_signed_composition(args.s) if args.s is not None else None
        if s is None and args.spec is not None:
            s = expand_spec(parse_star_spec(args.spec))
        if s is None:
            raise UsageError("give --s or --spec")
        ev = MHSEvaluator()
        value = ev.mhs(args.n, s) if args.target == "mhs" else ev.mhs_star(args.n, s)
        data.update({"n": args.n, "s": format_composition(s), "value": _frac(value)})
        return True, data, [_frac(value)]
    try:
        if args.target == "zeta":
            if args.s is None:
                raise UsageError("eval zeta needs --s")
            s = parse_signed_composition(args.s)
            result = zeta_numeric(s, args.tol)
            data["s"] = format_composition(s)
        elif args.spec is not None:
            spec = parse_star_spec(args.spec)
            result = zeta_star_numeric(spec, args.tol)
            data["spec"] = format_star_spec(spec)
        elif args.s is not None:
            s = parse_signed_composition(args.s)
            result = zeta_star_composition(s, args.tol)
            data["s"] = format_composition(s)
        else:
            raise UsageError("eval star needs --spec, --s or --n")
    except ValueError as exc:
        raise UsageError(str(exc))
    data.update(
        {
            "tol": args.tol,
            "value": repr(result.value),
            "error_bound": repr(result.error_bound),
            "terms_used": result.terms_used,
            "converged": result.converged,
        }
    )
    return result.converged, data, [str(result)]


def cmd_verify_limit(args) -> tuple[bool, dict, list[str]]:
    spec = parse_star_spec(args.spec)
    rep = verify_thm12_numeric(spec, args.tol)
    data = {
        "command": "verify-limit",
        "spec": format_star_spec(spec),
        "tol": args.tol,
        "lhs": {"value": repr(rep.lhs.value), "error_bound": repr(rep.lhs.error_bound)},
        "rhs": {"value": repr(rep.rhs.value), "error_bound": repr(rep.rhs.error_bound)},
        "consistent": rep.consistent,
        "ok": rep.consistent,
    }
    lines = [
        f"z*({format_star_spec(spec)}) = {rep.lhs}",
        f"expansion       = {rep.rhs}",
        "consistent" if rep.consistent else "INCONSISTENT",
    ]
    return rep.consistent, data, lines


def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(
        prog="zetastar",
        description="Exact multiple harmonic sums and zeta-star / alternating Euler sum identities.",
    )
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--json", action="store_true", help="emit structured JSON")
    common.add_argument("--out", help="also write output to this file")
    sub = p.add_subparsers(dest="command", required=True)

    v = sub.add_parser("verify-mhs", parents=[common], help="exact check of the binomial-sum expansion of H*_n")
    v.add_argument("spec", help='spec such as "2^1,3,2^1"')
    v.add_argument("--n", default="1..6", help="N or LO..HI (default 1..6)")
    v.add_argument("--jobs", type=int, default=0, help=f"worker processes (default ${JOBS_ENV} or 1)")
    v.set_defaults(func=cmd_verify_mhs)

    e = sub.add_parser("expand", parents=[common], help="Euler-sum expansion of zeta*(spec)")
    e.add_argument("spec")
    e.add_argument("--mode", choices=("oplus", "kappa", "both"), default="oplus")
    e.set_defaults(func=cmd_expand)

    c = sub.add_parser("check-lemma", parents=[common], help="binomial shift lemma (21) or decay lemma (42)")
    c.add_argument("which", choices=("21", "42"))
    c.add_argument("--n", help="lemma 21: n; lemma 42: comma-separated n values")
    c.add_argument("--a", type=int, default=0)
    c.add_argument("--c", type=int, default=1)
    c.add_argument("--v", default="")
    c.add_argument("--s", default="")
    c.add_argument("--e", type=float, default=2.0)
    c.set_defaults(func=cmd_check_lemma)

    ev = sub.add_parser("eval", parents=[common], help="evaluate H_n, H*_n, zeta or zeta*")
    ev.add_argument("target", choices=("mhs", "star", "zeta"))
    ev.add_argument("--n", type=int)
    ev.add_argument("--s")
    ev.add_argument("--spec")
    ev.add_argument("--tol", type=float, default=1e-8)
    ev.set_defaults(func=cmd_eval)

    lim = sub.add_parser("verify-limit", parents=[common], help="numeric check of the O-plus expansion")
    lim.add_argument("spec")
    lim.add_argument("--tol", type=float, default=1e-6)
    lim.set_defaults(func=cmd_verify_limit)
    return p


def main(argv: Optional[list[str]] = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        ok, data, lines = args.func(args)
    except (ParseError, HypothesisError, UsageError, ValueError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    text = json.dumps(data, sort_keys=True, indent=2) if args.json else "\n".join(lines)
    print(text)
    if args.out:
        with open(args.out, "w") as fh:
            fh.write(text + "\n")
    return 0 if ok else 1


if __name__ == "__main__":
    sys.exit(main())

"""Command line front end.

Exit codes: 0 verified, 1 property violated (witness printed), 2 usage error.
"""

from __future__ import annotations

import argparse
import csv
import io
import json
import re
import sys
from typing import Sequence

from .canonical import CanonicalError, are_similar, orbit_representatives
from .counting import DEFAULT_BUDGET, BudgetExceeded, census, conjecture_scan
from .gf import FieldError, field_make
from .indicator import HSetError, build_h_set, verify_h_separating
from .invariants import (
    KINDS,
    InvariantError,
    build_set,
    check_minimality,
    separating_kind,
)
from .matrices import MatrixError, tuple_from_json, tuple_to_json

EXIT_OK, EXIT_VIOLATED, EXIT_USAGE = 0, 1, 2


class UsageError(Exception):
    pass


def _emit(text: str, out_path: str | None) -> None:
    if out_path:
        with open(out_path, "w", newline="") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)


_FLAT_LIST = re.compile(r"\[\s*([^\[\]{}]*?)\s*\]")


def _json(payload) -> str:
    text = json.dumps(payload, indent=2)
    # keep innermost arrays (matrix entries, value vectors) on one line
    text = _FLAT_LIST.sub(lambda m: "[" + ", ".join(x.strip() for x in m.group(1).split(",") if x.strip()) + "]", text)
    return text + "\n"


def _csv(rows: list[dict]) -> str:
    buf = io.StringIO()
    if rows:
        writer = csv.DictWriter(buf, fieldnames=list(rows[0]), lineterminator="\n")
        writer.writeheader()
        for row in rows:
            writer.writerow({k: ("" if v is None else v) for k, v in row.items()})
    return buf.getvalue()


def _text_rows(rows: list[dict]) -> str:
    return "".join(" ".join(f"{k}={'' if v is None else v}" for k, v in row.items()) + "\n" for row in rows)


def _render(payload: dict, rows: list[dict], fmt: str) -> str:
    if fmt == "json":
        return _json(payload)
    if fmt == "csv":
        return _csv(rows)
    return _text_rows(rows)


def _field(args):
    return field_make(args.field)


def _m(args) -> int:
    if args.m is None or args.m < 1:
        raise UsageError("--m must be a positive integer")
    return args.m


# -- subcommands ---------------------------------------------------------------


def cmd_orbits(args) -> int:
    F, m = _field(args), _m(args)
    reps = orbit_representatives(F, m)
    rows = []
    for i, c in enumerate(reps):
        d = c.to_json()
        rows.append({
            "index": i,
            "tag": d["tag"],
            "alphas": " ".join(map(str, d["alphas"])),
            "pivot": d["pivot"],
            "tail": ";".join(" ".join(map(str, D)) for D in d["tail"]),
        })
    payload = {"field": F.spec, "m": m, "kappa": len(reps), "orbits": [c.to_json() for c in reps]}
    if args.format == "text":
        text = "".join(f"{i}\t{c}\n" for i, c in enumerate(reps))
    else:
        text = _render(payload, rows, args.format)
    _emit(text, args.out)
    return EXIT_OK


def cmd_count(args) -> int:
    F, m = _field(args), _m(args)
    row = census(F, m, n=args.n, check=args.check, budget=args.budget)
    _emit(_render(row, [row], args.format), args.out)
    return EXIT_VIOLATED if row.get("match") is False else EXIT_OK


def _set_kind(args, F) -> str:
    return args.set or separating_kind(F)


def _witness_pair(data):
    """Accept a bare [A, B], {"pair": [A, B]} or a whole verification report."""
    if isinstance(data, list):
        return data
    if "pair" in data:
        return data["pair"]
    witnesses = data.get("witnesses") or []
    for w in witnesses:
        if w.get("kind") == "not-separated":
            return w["pair"]
    if witnesses and witnesses[0].get("pair"):
        return witnesses[0]["pair"]
    raise UsageError("no witness pair found in file")


def _recheck_witness(args) -> int:
    F, m = _field(args), _m(args)
    with open(args.witness) as fh:
        data = json.load(fh)
    pair = _witness_pair(data)
    A, B = (tuple_from_json(F, T) for T in pair)
    if len(A) != m or len(B) != m:
        raise UsageError(f"witness tuples must have length {m}")
    S = build_set(_set_kind(args, F), F, m)
    va, vb = S.values(A), S.values(B)
    enc = (lambda x: x.code) if F.is_finite else (lambda x: str(x.v))
    separated = va != vb
    similar = are_similar(A, B)
    payload = {
        "set": S.kind,
        "field": F.spec,
        "m": m,
        "pair": [tuple_to_json(A), tuple_to_json(B)],
        "elements": S.names(),
        "values": [[enc(x) for x in va], [enc(x) for x in vb]],
        "separated": separated,
        "similar": similar,
    }
    row = {"set": S.kind, "m": m, "separated": separated, "similar": similar}
    _emit(_render(payload, [row], args.format), args.out)
    return EXIT_OK if separated != similar else EXIT_VIOLATED


def _report_rows(report) -> list[dict]:
    rows = [{"set": report.set_kind, "q": report.q, "m": report.m,
             "separating": report.separating, "minimal": report.minimal, "element": None, "pair": None}]
    for w in report.to_json()["witnesses"]:
        rows.append({"set": report.set_kind, "q": report.q, "m": report.m,
                     "separating": report.separating, "minimal": report.minimal,
                     "element": w["element"], "pair": json.dumps(w["pair"])})
    return rows


def cmd_verify_separating(args) -> int:
    if args.witness:
        return _recheck_witness(args)
    F, m = _field(args), _m(args)
    S = build_set(_set_kind(args, F), F, m)
    report = check_minimality(S, F, m)
    _emit(_render(report.to_json(), _report_rows(report), args.format), args.out)
    return EXIT_OK if report.separating else EXIT_VIOLATED


def cmd_verify_minimal(args) -> int:
    F, m = _field(args), _m(args)
    S = build_set(_set_kind(args, F), F, m)
    report = check_minimality(S, F, m)
    _emit(_render(report.to_json(), _report_rows(report), args.format), args.out)
    return EXIT_OK if report.separating and report.minimal else EXIT_VIOLATED


def cmd_build_h(args) -> int:
    F, m = _field(args), _m(args)
    H = build_h_set(F, m)
    ok = verify_h_separating(H)
    payload = H.to_json(with_polys=args.poly)
    payload["separating"] = ok
    payload["degrees"] = [H.poly(i).degree() for i in range(H.size)] if args.poly else None
    rows = [
        {"orbit": j, "tag": c.tag, "values": " ".join(str(x.code) for x in col)}
        for j, (c, col) in enumerate(zip(H.reps, H.columns()))
    ]
    _emit(_render(payload, rows, args.format), args.out)
    return EXIT_OK if ok else EXIT_VIOLATED


def cmd_conjecture_scan(args) -> int:
    m = _m(args)
    specs = args.field or ["q=2", "q=3"]
    fields = [field_make(s) for s in specs]
    result = conjecture_scan(args.n, m, fields, budget=args.budget)
    payload = {"n": args.n, "m": m, **result}
    text = _render(payload, result["rows"], args.format)
    if args.format == "text":
        text += f"# {result['note']}\n"
    _emit(text, args.out)
    return EXIT_OK


# -- parser ----------------------------------------------------------------------


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--m", type=int, help="tuple length")
    common.add_argument("--format", choices=("json", "csv", "text"), default="text")
    common.add_argument("--budget", type=int, default=DEFAULT_BUDGET, help="max matrix ops for brute force")
    common.add_argument("--out", metavar="FILE", help="write output to FILE instead of stdout")

    parser = argparse.ArgumentParser(
        prog="nilorbits",
        description="Orbits and separating invariants of tuples of nilpotent 2x2 matrices.",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    def add(name, func, help_text, field_default="q=2"):
        p = sub.add_parser(name, parents=[common], help=help_text)
        p.add_argument("--field", default=field_default, help="q=<p>, q=<p>^<k>[;poly=...] or rational")
        p.set_defaults(func=func)
        return p

    add("orbits", cmd_orbits, "list canonical orbit representatives")
    p = add("count", cmd_count, "orbit census row")
    p.add_argument("--n", type=int, default=2, choices=(2, 3))
    p.add_argument("--check", choices=("formula", "representatives", "brute-force"), default="formula")
    p = add("verify-separating", cmd_verify_separating, "check that an invariant set separates orbits")
    p.add_argument("--set", choices=KINDS)
    p.add_argument("--witness", metavar="FILE", help="re-check a witness pair from a JSON file")
    p = add("verify-minimal", cmd_verify_minimal, "check separation and minimality of an invariant set")
    p.add_argument("--set", choices=KINDS)
    p = add("build-h", cmd_build_h, "build the ceil(log_q kappa)-element separating set")
    p.add_argument("--poly", action="store_true", help="include reduced polynomial forms")

    p = sub.add_parser("conjecture-scan", parents=[common], help="raw GL_n orbit counts on N_n^m")
    p.add_argument("--field", action="append", help="repeatable; default q=2 and q=3")
    p.add_argument("--n", type=int, default=3, choices=(2, 3))
    p.set_defaults(func=cmd_conjecture_scan)
    return parser


def main(argv: Sequence[str] | None = None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return EXIT_USAGE if exc.code else EXIT_OK
    try:
        return args.func(args)
    except (UsageError, FieldError, MatrixError, CanonicalError, InvariantError,
            HSetError, BudgetExceeded, ValueError, OSError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE


if __name__ == "__main__":
    sys.exit(main())

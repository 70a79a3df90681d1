"""Command-line front end.

Commands: verify, expand, catalog, family, search, vir.  Exit status is
0 when the requested check passes, 1 when it fails, and 2 for usage,
parse, or constraint errors.  All numeric output is exact rational
text; there is no floating point anywhere in the tool.
"""

from __future__ import annotations

import argparse
import json
import sys
from fractions import Fraction
from hashlib import sha256

from . import families, rmatfile, search, ybe
from .exactpoly import ParseError, SymbolRegistry

PASS, FAIL, USAGE = 0, 1, 2


def _hashed(payload: dict) -> dict:
    blob = json.dumps(payload, sort_keys=True, separators=(",", ":"))
    payload["content_hash"] = sha256(blob.encode()).hexdigest()
    return payload


def _defect_rows(defects) -> list:
    rows = []
    for generator, tensor in sorted(defects.items()):
        for tup in sorted(tensor.entries):
            rows.append({
                "generator": generator,
                "tuple": list(tup),
                "poly": tensor.entries[tup].to_string(),
            })
    return rows


def _residue_rows(tensor) -> list:
    return [
        {"generator": None, "tuple": list(tup), "poly": tensor.entries[tup].to_string()}
        for tup in sorted(tensor.entries)
    ]


def _emit_report(report: dict, fmt: str) -> None:
    if fmt == "json":
        print(json.dumps(_hashed(report), indent=2, sort_keys=True))
        return
    status = "PASS" if report["ok"] else "FAIL"
    print(f"{report['check']}: {status}")
    for row in report["defects"]:
        where = f"{row['generator']} @ " if row["generator"] else ""
        print(f"  {where}{'(' + ', '.join(row['tuple']) + ')'}: {row['poly']}")
    for key in ("specialized_residue", "specialized_residue_normalized"):
        if key in report:
            print(f"  {key.replace('_', ' ')}: {report[key]}")


def _run_check(r, mode: str) -> dict:
    if mode == "invariance":
        ok, defects = ybe.is_invariant(r)
        rows = _defect_rows(defects)
    elif mode == "weak":
        ok, defects = ybe.is_weak_solution(r)
        rows = _defect_rows(defects)
    elif mode == "strict":
        ok, residue = ybe.is_strict_solution(r)
        rows = _residue_rows(residue)
    else:
        raise ValueError(f"unknown mode {mode!r}")
    report = {
        "check": mode,
        "algebra": "cur_sl2" if r.alg.kind == "cur" else "vir",
        "ok": ok,
        "defects": rows,
    }
    if r.alg.kind == "vir" and mode == "weak" and not ok:
        reg = r.alg.reg
        slice_poly = defects["v"].entries.get(("v", "v", "v"), reg.zero())
        slice_poly = slice_poly.subst_many({
            reg.sym("d3"): reg.zero(),
            reg.sym("d1"): reg.var("d2") * -2,
        })
        report["specialized_residue"] = slice_poly.to_string()
        report["specialized_residue_normalized"] = (
            slice_poly * Fraction(1, 2)).to_string()
    return report


def cmd_verify(args) -> int:
    try:
        r = rmatfile.load(args.input)
    except (OSError, rmatfile.RMatFileError) as err:
        print(f"error: {err}", file=sys.stderr)
        return USAGE
    report = _run_check(r, args.mode)
    _emit_report(report, args.format)
    return PASS if report["ok"] else FAIL


def cmd_expand(args) -> int:
    try:
        r = rmatfile.load(args.input)
    except (OSError, rmatfile.RMatFileError) as err:
        print(f"error: {err}", file=sys.stderr)
        return USAGE
    bracket = ybe.ccybe_bracket(r)
    from .conformal import reduce_mod_total

    reduced = reduce_mod_total(bracket)
    print("double bracket (unreduced):")
    for tup in sorted(bracket.entries):
        print(f"  ({', '.join(tup)}): {bracket.entries[tup].to_string()}")
    if not bracket.entries:
        print("  0")
    print("reduced modulo the total derivation:")
    for tup in sorted(reduced.entries):
        print(f"  ({', '.join(tup)}): {reduced.entries[tup].to_string()}")
    if not reduced.entries:
        print("  0")
    return PASS


def cmd_catalog(args) -> int:
    diffs = ybe.catalog_diffs(degree=args.degree)
    bad = {name: diff for name, diff in diffs.items() if not diff.is_zero()}
    if not bad:
        print(f"catalog: all {len(diffs)} identities re-derived exactly")
        return PASS
    print("catalog: MISMATCH")
    for name, diff in sorted(bad.items()):
        print(f"  {name}: {diff.to_string()}")
    return FAIL


def _parse_params(pairs) -> dict:
    out = {}
    for pair in pairs or ():
        if "=" not in pair:
            raise ValueError(f"expected name=value, got {pair!r}")
        name, _, value = pair.partition("=")
        out[name.strip()] = Fraction(value.strip())
    return out


def cmd_family(args) -> int:
    reg = SymbolRegistry()
    try:
        if args.spec:
            with open(args.spec, "r", encoding="utf-8") as fh:
                data = json.load(fh)
            case = data["case"]
            params = {k: Fraction(v) for k, v in data.get("params", {}).items()}
            f_text = data.get("f", "1")
        else:
            if not args.case:
                print("error: provide a case name or --spec", file=sys.stderr)
                return USAGE
            case = args.case
            params = _parse_params(args.param)
            f_text = args.f
        f = reg.parse(f_text) if f_text else None
        spec = families.FamilySpec(case, reg, params, f=f)
        profile = families.build_profile(spec)
        r = families.lift_to_rmat(profile)
    except (ValueError, KeyError, ParseError) as err:
        print(f"error: {err}", file=sys.stderr)
        return USAGE
    rmatfile.dump(r, args.out)
    print(f"wrote {args.out}")
    return PASS


def cmd_search(args) -> int:
    try:
        coeffs = tuple(Fraction(v) for v in args.coeffs.split(",") if v.strip())
        constants = tuple(Fraction(v) for v in args.constants.split(",") if v.strip())
        cfg = search.SearchConfig(
            max_degree=args.max_degree,
            coeff_grid=coeffs,
            constants_grid=constants,
            mode=args.mode,
            raw=args.raw,
            workers=args.jobs,
        )
    except (ValueError, search.SearchConfigError) as err:
        print(f"error: {err}", file=sys.stderr)
        return USAGE
    report = search.run_search(cfg)
    payload = report.as_dict()
    if args.out:
        with open(args.out, "w", encoding="utf-8") as fh:
            json.dump(payload, fh, indent=2, sort_keys=True)
            fh.write("\n")
    print(f"scanned {report.candidates_scanned} candidates "
          f"({report.consistent_candidates} invariance-consistent), "
          f"{len(report.survivors)} survivors, "
          f"{len(report.characterization_failures)} characterization failures "
          f"[{report.timing_seconds}s]")
    print(f"content hash: {report.content_hash}")
    if report.characterization_failures:
        for failure in report.characterization_failures:
            print(f"  FAILURE {failure['problems']}: {failure['record']}")
        return FAIL
    return PASS


def cmd_vir(args) -> int:
    reg = SymbolRegistry()
    try:
        coeff = reg.parse(args.expr)
    except ParseError as err:
        print(f"error: {err}", file=sys.stderr)
        return USAGE
    extra = {s.name for s in coeff.symbols()} - {"x", "y"}
    if extra:
        print(f"error: expression must use only x and y, got {sorted(extra)}",
              file=sys.stderr)
        return USAGE
    r = families.vir_rmatrix(coeff)
    report = _run_check(r, args.mode)
    _emit_report(report, args.format)
    return PASS if report["ok"] else FAIL


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="ccybe",
        description="Exact checks for conformal Yang-Baxter structures "
                    "on the sl2 current algebra and the Virasoro algebra.",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("verify", help="check an r-matrix file")
    p.add_argument("input")
    p.add_argument("--mode", choices=("invariance", "weak", "strict"),
                   default="strict")
    p.add_argument("--format", choices=("text", "json"), default="text")
    p.set_defaults(func=cmd_verify)

    p = sub.add_parser("expand", help="print the double bracket of an r-matrix")
    p.add_argument("input")
    p.set_defaults(func=cmd_expand)

    p = sub.add_parser("catalog", help="re-derive the projection equation catalog")
    p.add_argument("--degree", type=int, default=3)
    p.set_defaults(func=cmd_catalog)

    p = sub.add_parser("family", help="write a solution family member to a file")
    p.add_argument("case", nargs="?", choices=families.CASES[:-1])
    p.add_argument("--param", action="append", metavar="NAME=VALUE")
    p.add_argument("--f", default="1", help="monic polynomial in t")
    p.add_argument("--spec", help="family spec JSON file")
    p.add_argument("--out", required=True)
    p.set_defaults(func=cmd_family)

    p = sub.add_parser("search", help="bounded exhaustive classification cross-check")
    p.add_argument("--mode", choices=("weak", "strict"), default="weak")
    p.add_argument("--max-degree", type=int, default=1)
    p.add_argument("--coeffs", default="-1,0,1")
    p.add_argument("--constants", default="-1,0,1")
    p.add_argument("--raw", action="store_true",
                   help="drop the odd-polynomial ansatz")
    p.add_argument("--jobs", type=int, default=1)
    p.add_argument("--out", help="write the JSON report here")
    p.set_defaults(func=cmd_search)

    p = sub.add_parser("vir", help="check a Virasoro coefficient polynomial")
    p.add_argument("expr", help="polynomial in x, y")
    p.add_argument("--mode", choices=("invariance", "weak", "strict"),
                   default="weak")
    p.add_argument("--format", choices=("text", "json"), default="text")
    p.set_defaults(func=cmd_vir)

    return parser


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    return args.func(args)


if __name__ == "__main__":
    sys.exit(main())

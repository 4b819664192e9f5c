"""Command-line interface.

    frobstrat info --curve '{"p":3,"m":1,"g":2,"f":[-1,-1,-1,-1,-1]}'
    frobstrat tower --curve curve.json --tower-depth 5 --json
    frobstrat scan --p 3 --g 2 --fix a3=0 --workers 4
    frobstrat appendix --tower-depth 5

Exit codes: 0 success, 2 invalid input, 3 internal consistency failure.
"""

import argparse
import itertools
import json
import os
import sys
from concurrent.futures import ProcessPoolExecutor

import numpy as np

from .algebra import get_field
from .cartier import hasse_witt
from .cech import BundleCocycle
from .curve import CurveModel, delta_genus2, parse_curve_spec
from .errors import (ConfigurationError, ConsistencyError, CurveSpecError, FrobstratError,
                     InputError, NotSmooth)
from .semilinear import fitting
from .stratcoh import count_fixed_comparison, delta1_gap_report, h1_str_weierstrass_line_bundle, h_str
from .tower import MAX_DEPTH, build_tower, ss_transfer_rank

MAX_EXT_CAP = 16


def load_curve(arg):
    if arg is None:
        raise CurveSpecError("--curve is required")
    text = arg.strip()
    if not text.startswith("{"):
        try:
            with open(arg) as fh:
                text = fh.read()
        except OSError as exc:
            raise CurveSpecError(f"cannot read curve file {arg!r}: {exc.strerror}")
    return parse_curve_spec(text)


def _jsonable(v):
    if isinstance(v, np.ndarray):
        return v.tolist()
    if isinstance(v, np.integer):
        return int(v)
    if isinstance(v, (set, frozenset)):
        return sorted(v)
    return str(v)


def _check(name, ok):
    return {"name": name, "ok": bool(ok)}


# ---- subcommands -------------------------------------------------------
# each returns (results, checks)

def cmd_info(X, args):
    hw = hasse_witt(X)
    res = {"genus": X.g, "p": X.ctx.p, "m": X.ctx.m, "smooth": True,
           "hasse_witt_rank": hw.p_rank,
           "type": "ordinary" if hw.ordinary else ("supersingular" if hw.p_rank == 0 else "intermediate")}
    if X.g == 2 and X.ctx.p == 3:
        res["delta"] = delta_genus2(X)
    return res, [_check("smooth", True)]


def cmd_hasse_witt(X, args):
    hw = hasse_witt(X)
    fit = fitting(hw.op)
    res = {"matrix": hw.matrix.tolist(), "p_rank": hw.p_rank, "nil_index": fit.nil_index,
           "ordinary": hw.ordinary, "supersingular": hw.supersingular}
    return res, [_check("fitting_dims", fit.ss_rank + fit.nil_dim == X.g)]


def _bundle_at(X, level, args):
    if level == 1:
        return BundleCocycle.trivial(X)
    return build_tower(X, level, args.ext_cap)[-1].bundle


def cmd_h1str(X, args):
    level = args.level
    if not 1 <= level <= MAX_DEPTH:
        raise ConfigurationError(f"--level must be in 1..{MAX_DEPTH}")
    if level > 1 and hasse_witt(X).p_rank == 0:
        raise ConfigurationError("bundles beyond the trivial one need p-rank at least 1")
    bundle = _bundle_at(X, level, args)
    rep = h_str(bundle)
    res = {"level": level, "h0_str": rep.h0_str, "h1_str": rep.h1_str, "methods": rep.methods}
    checks = [_check("two_paths_agree", rep.methods["frobenius_h1"] == rep.methods["cartier_dual"])]
    H = bundle.h1.frobenius_op()
    if bundle.X.ctx.p ** (bundle.X.ctx.m * H.n) <= 3 ** 8:
        cmp = count_fixed_comparison(bundle, args.ext_cap)
        res["fixed_point_count"] = cmp["count"]
        checks.append(_check("count_fixed", cmp["ok"]))
    return res, checks


def cmd_line_bundle(X, args):
    h = h1_str_weierstrass_line_bundle(X)
    return {"h1_str": h, "a3": X.a(3)}, [_check("closed_form", h == (1 if X.a(3) else 0))]


def cmd_tower(X, args):
    levels = build_tower(X, args.tower_depth, args.ext_cap)
    rows = []
    for i, lv in enumerate(levels):
        op = lv.bundle.h1.frobenius_op()
        row = {"n": lv.n, "h1": lv.bundle.h1.dim, "h1_ss": fitting(op).ss_rank,
               "h0_omega": lv.bundle.h0_omega.dim}
        if i + 1 < len(levels):
            row["transfer_rank"] = ss_transfer_rank(lv, levels[i + 1])
        rows.append(row)
    field = levels[-1].X.ctx
    res = {"field": {"p": field.p, "m": field.m}, "levels": rows}
    checks = [_check("ss_one_dimensional", all(r["h1_ss"] == 1 for r in rows)),
              _check("transfers_zero", all(r.get("transfer_rank", 0) == 0 for r in rows))]
    return res, checks


def cmd_nilpotency(X, args):
    rows = delta1_gap_report(X, args.tower_depth)
    for r in rows:
        r["order"] = int(r["order"])
    return {"levels": rows}, [_check("bound", all(r["bound_ok"] for r in rows))]


def _scan_one(item):
    p, g, co = item
    F = get_field(p)
    try:
        X = CurveModel(F, g, co)
    except NotSmooth:
        return None
    hw = hasse_witt(X)
    row = {"f": X.to_spec()["f"], "p_rank": hw.p_rank,
           "h1_str": h_str(BundleCocycle.trivial(X)).h1_str}
    if g == 2:
        row["line_bundle_h1_str"] = h1_str_weierstrass_line_bundle(X)
    return row


def _parse_fix(fixes, g, p):
    out = {}
    for item in fixes or []:
        name, _, val = item.partition("=")
        name = name.strip()
        if not (name.startswith("a") and name[1:].isdigit()) or not val.strip().lstrip("-").isdigit():
            raise ConfigurationError(f"bad --fix {item!r}; expected e.g. a3=0")
        i = int(name[1:])
        if not 1 <= i <= 2 * g + 1:
            raise ConfigurationError(f"--fix index {i} out of range for genus {g}")
        out[i] = int(val) % p
    return out


def cmd_scan(args):
    p, g = args.p, args.g
    if g not in (1, 2):
        raise ConfigurationError("genus must be 1 or 2")
    get_field(p)
    fixed = _parse_fix(args.fix, g, p)
    boxes = [[fixed[i]] if i in fixed else range(p) for i in range(1, 2 * g + 2)]
    items = [(p, g, co) for co in itertools.product(*boxes)]
    if args.workers > 1:
        with ProcessPoolExecutor(args.workers) as ex:
            rows = list(ex.map(_scan_one, items, chunksize=8))
    else:
        rows = [_scan_one(it) for it in items]
    rows = [r for r in rows if r is not None]
    rows.sort(key=lambda r: [c % p for c in r["f"]])
    res = {"p": p, "g": g, "fixed": {f"a{i}": v for i, v in sorted(fixed.items())},
           "tuples": len(items), "smooth": len(rows), "curves": rows}
    checks = [_check("h1_str_equals_p_rank", all(r["h1_str"] == r["p_rank"] for r in rows))]
    if g == 2:
        checks.append(_check("line_bundle_a3",
                             all(r["line_bundle_h1_str"] == (1 if r["f"][2] % p else 0) for r in rows)))
    return res, checks


def cmd_appendix(args):
    from .appendix import FAIL, appendix_suite
    rows = appendix_suite(args.p, args.tower_depth, args.ext_cap)
    res = {"rows": [r.as_dict() for r in rows]}
    checks = [_check(r.key, r.status != FAIL) for r in rows]
    return res, checks


CURVE_COMMANDS = {
    "info": cmd_info,
    "hasse-witt": cmd_hasse_witt,
    "h1str": cmd_h1str,
    "line-bundle": cmd_line_bundle,
    "tower": cmd_tower,
    "nilpotency": cmd_nilpotency,
}


def build_parser():
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--json", action="store_true", help="emit one JSON document")
    common.add_argument("--ext-cap", type=int, default=8,
                        help="largest extension degree tried for fixed points (default 8)")
    common.add_argument("--tower-depth", type=int, default=None,
                        help=f"tower depth, at most {MAX_DEPTH}")
    curve = argparse.ArgumentParser(add_help=False)
    curve.add_argument("--curve", help="curve spec: inline JSON or a file path")

    ap = argparse.ArgumentParser(prog="frobstrat", description=__doc__.split("\n")[0])
    sub = ap.add_subparsers(dest="command", required=True)
    sub.add_parser("info", parents=[common, curve], help="genus, smoothness, Hasse-Witt rank")
    sub.add_parser("hasse-witt", parents=[common, curve], help="Cartier matrix on regular forms")
    sp = sub.add_parser("h1str", parents=[common, curve], help="stratified cohomology dimensions")
    sp.add_argument("--level", type=int, default=1, help="tower level n of E_n (default 1)")
    sub.add_parser("line-bundle", parents=[common, curve], help="h1_str of O(inf - O), genus 2")
    sub.add_parser("tower", parents=[common, curve], help="Frobenius-invariant tower E_n")
    sub.add_parser("nilpotency", parents=[common, curve], help="Cartier nilpotency along the tower")
    sp = sub.add_parser("scan", parents=[common], help="exhaustive scan over coefficient boxes")
    sp.add_argument("--p", type=int, default=3)
    sp.add_argument("--g", type=int, default=2)
    sp.add_argument("--fix", action="append", help="pin a coefficient, e.g. a3=0 (repeatable)")
    sp.add_argument("--workers", type=int, default=1)
    sp = sub.add_parser("appendix", parents=[common], help="reproduce the explicit genus-2 examples")
    sp.add_argument("--p", type=int, default=3)
    return ap


def _validate(args):
    if not 1 <= args.ext_cap <= MAX_EXT_CAP:
        raise ConfigurationError(f"--ext-cap must be in 1..{MAX_EXT_CAP}")
    default = 4 if args.command in ("tower", "appendix") else 3
    if args.tower_depth is None:
        args.tower_depth = default
    if not 1 <= args.tower_depth <= MAX_DEPTH:
        raise ConfigurationError(f"--tower-depth must be in 1..{MAX_DEPTH}")
    if getattr(args, "workers", 1) < 1:
        raise ConfigurationError("--workers must be positive")


def _render_text(doc, out):
    print(f"command: {doc['command']}", file=out)
    if doc["curve"]:
        print(f"curve:   {json.dumps(doc['curve'], sort_keys=True)}", file=out)
    res = doc["results"]
    table = res.get("rows") or res.get("levels") or res.get("curves")
    for k, v in res.items():
        if v is not table:
            print(f"{k}: {json.dumps(v, sort_keys=True, default=_jsonable)}", file=out)
    if table:
        cols = list(table[0].keys())
        cells = [[json.dumps(r.get(c), default=_jsonable).strip('"') for c in cols] for r in table]
        widths = [max(len(c), *(len(row[i]) for row in cells)) for i, c in enumerate(cols)]
        print("  ".join(c.ljust(w) for c, w in zip(cols, widths)), file=out)
        for row in cells:
            print("  ".join(x.ljust(w) for x, w in zip(row, widths)), file=out)
    bad = [c["name"] for c in doc["checks"] if not c["ok"]]
    print(f"checks: {len(doc['checks']) - len(bad)}/{len(doc['checks'])} ok"
          + (f"; failed: {', '.join(bad)}" if bad else ""), file=out)


def run(argv=None, out=None):
    out = out or sys.stdout
    try:
        args = build_parser().parse_args(argv)
    except SystemExit as exc:
        return int(exc.code or 0)
    curve_spec = None
    try:
        _validate(args)
        if args.command == "scan":
            res, checks = cmd_scan(args)
        elif args.command == "appendix":
            res, checks = cmd_appendix(args)
        else:
            X = load_curve(args.curve)
            curve_spec = X.to_spec()
            res, checks = CURVE_COMMANDS[args.command](X, args)
    except InputError as exc:
        print(f"error: {type(exc).__name__}: {exc}", file=sys.stderr)
        return 2
    except ConsistencyError as exc:
        print(f"consistency failure: {type(exc).__name__}: {exc}", file=sys.stderr)
        return 3
    except FrobstratError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 3
    doc = {"command": args.command, "curve": curve_spec, "results": res, "checks": checks}
    if args.json:
        print(json.dumps(doc, sort_keys=True, default=_jsonable), file=out)
    else:
        _render_text(doc, out)
    return 0 if all(c["ok"] for c in checks) else 3


def main(argv=None):
    sys.exit(run(argv))


if __name__ == "__main__":
    main()

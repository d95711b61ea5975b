"""``conclab`` command line.

Exit codes: 0 success, 1 verification failure, 2 unknown input, 3 parse error.
"""

from __future__ import annotations

import argparse
import json
import sys
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass
from fractions import Fraction

from . import boundary_forms as bf
from . import ccomplex as cc
from . import diagrams as dg
from . import knot_invariants as ki
from . import representations as rp
from . import s_calculus as sc
from . import verify
from .exactmath import CirclePoint, IntMatrix, LaurentPoly1, MatrixError

EXIT_OK, EXIT_FAIL, EXIT_UNKNOWN, EXIT_PARSE = 0, 1, 2, 3
DEFAULT_SEED = 20070
SAMPLE_POINTS = ("-1", "i", "-i")


class CliError(Exception):
    def __init__(self, message: str, code: int):
        super().__init__(message)
        self.code = code


@dataclass(frozen=True)
class RunConfig:
    subcommand: str
    search_bound: int = ki.DEFAULT_SEARCH_BOUND
    resolution: int = ki.DEFAULT_RESOLUTION
    mode: str = "human"
    seed: int = DEFAULT_SEED


def dumps(obj) -> str:
    return json.dumps(obj, sort_keys=True)


# -- input resolution ------------------------------------------------------


def _table():
    try:
        return ki.load_knot_table()
    except ki.KnotTableError as exc:
        raise CliError(f"knot table rejected: {exc}", EXIT_PARSE) from None


def _matrix_from_json(data, label: str) -> ki.SeifertMatrix:
    if isinstance(data, dict):
        data = data.get("seifert_matrix", data.get("A"))
    if not isinstance(data, list):
        raise CliError(f"{label}: expected a list of rows", EXIT_PARSE)
    try:
        rows = [[Fraction(x) for x in row] for row in data]
        if any(x.denominator != 1 for row in rows for x in row):
            raise ValueError("entries must be integers")
        m = IntMatrix([[int(x) for x in row] for row in rows]) if rows else IntMatrix.zeros(0)
        return ki.SeifertMatrix(m, name=label)
    except (TypeError, ValueError, MatrixError, ki.SeifertMatrixError) as exc:
        raise CliError(f"{label}: {exc}", EXIT_PARSE) from None


def _braid_knot(text: str, strands: int | None = None) -> ki.SeifertMatrix:
    try:
        b = dg.parse_braid(text, strands)
        return dg.seifert_matrix_from_braid(b)
    except dg.DiagramParseError as exc:
        raise CliError(f"braid: {exc}", EXIT_PARSE) from None
    except dg.DiagramError as exc:
        raise CliError(f"braid: {exc}", EXIT_UNKNOWN) from None


def resolve_source(source: dict) -> tuple[str, ki.SeifertMatrix]:
    """``source`` has exactly one of name / matrix (file path) / matrix_data / braid."""
    if source.get("name") is not None:
        table = _table()
        name = source["name"]
        if name not in table:
            raise CliError(f"unknown knot {name!r}; known: {', '.join(sorted(table))}",
                           EXIT_UNKNOWN)
        return name, table[name]
    if source.get("matrix") is not None:
        path = source["matrix"]
        try:
            with open(path) as fh:
                data = json.load(fh)
        except OSError as exc:
            raise CliError(f"cannot read {path}: {exc}", EXIT_UNKNOWN) from None
        except json.JSONDecodeError as exc:
            raise CliError(f"{path}: invalid JSON: {exc}", EXIT_PARSE) from None
        return path, _matrix_from_json(data, path)
    if source.get("matrix_data") is not None:
        return "matrix", _matrix_from_json(source["matrix_data"], "matrix")
    if source.get("braid") is not None:
        return f"braid[{source['braid']}]", _braid_knot(source["braid"], source.get("strands"))
    raise CliError("give one of --name, --matrix, --braid (or --batch)", EXIT_UNKNOWN)


# -- reports ---------------------------------------------------------------


def _verdict_json(v) -> dict:
    return v.to_json()


def invariants_report(label: str, a: ki.SeifertMatrix, cfg: RunConfig) -> dict:
    delta = ki.alexander(a)
    fm = ki.fox_milnor(delta)
    est = ki.signature_integral(a, cfg.resolution)
    try:
        arf = ki.arf(a)
    except ValueError as exc:
        arf = f"refused: {exc}"
    return {
        "knot": label,
        "seifert_matrix": a.A.to_json(),
        "alexander": str(delta),
        "signature": {w: ki.lt_signature(a, w) for w in ("-1", "i")},
        "signature_integral": {"value": str(est.value), "approx": round(float(est.value), 6),
                               "error_bound": str(est.error_bound),
                               "resolution": est.resolution},
        "arf": arf,
        "fox_milnor": {"holds": fm.holds,
                       "witness": str(fm.witness) if fm.witness is not None else None,
                       "reason": fm.reason},
        "algebraically_slice": _verdict_json(ki.algebraically_slice(a, cfg.search_bound)),
    }


def _conclusion(label: str, verdict) -> str:
    if isinstance(verdict, ki.NotSlice):
        return f"B({label}) not boundary slice"
    if isinstance(verdict, ki.AlgebraicallySlice):
        return f"B({label}) algebraically boundary slice: no obstruction from Seifert forms"
    return f"B({label}) undecided: algebraic sliceness of {label} inconclusive"


def bing_report(label: str, a: ki.SeifertMatrix, cfg: RunConfig) -> dict:
    x = bf.bing_double(a)
    verdict = ki.algebraically_slice(a, cfg.search_bound)
    meta: dict = {"knot_verdict": _verdict_json(verdict)}
    if isinstance(verdict, ki.AlgebraicallySlice):
        qh = bf.build_Qhat(verdict.certificate) if a.size else IntMatrix.identity(0)
        c = bf.ComponentCongruence((qh, qh))
        meta.update(status="Metabolic", congruence=c.to_json(),
                    verified=bf.is_metabolic_collection(x, c))
    elif isinstance(verdict, ki.NotSlice):
        meta.update(status="NotMetabolic",
                    reason=f"{label} is not algebraically slice ({verdict.test})")
    else:
        meta.update(status="Inconclusive", reason=verdict.reason)
    zero = cc.CComplexData([[0]], [[0]])
    samples = {f"{w1},{w2}": cc.multivar_signature(zero, CirclePoint.exact(w1),
                                                   CirclePoint.exact(w2))
               for w1 in SAMPLE_POINTS for w2 in SAMPLE_POINTS}
    return {
        "knot": label,
        "bing_double": x.to_json(),
        "metabolic_search": meta,
        "multivar_signature": samples,
        "alexander_module": cc.bing_alexander_module(zero).to_json(),
        "murasugi_arf": cc.murasugi_arf(0, 0, LaurentPoly1()),
        "conclusion": _conclusion(label, verdict),
    }


def _print_invariants(r: dict):
    print(f"knot: {r['knot']}")
    print(f"alexander: {r['alexander']}")
    for w, s in r["signature"].items():
        print(f"signature({w}): {s}")
    si = r["signature_integral"]
    print(f"signature integral: {si['approx']} (error <= {float(Fraction(si['error_bound'])):.2e},"
          f" resolution {si['resolution']})")
    print(f"arf: {r['arf']}")
    fm = r["fox_milnor"]
    extra = f", witness {fm['witness']}" if fm["witness"] else ""
    print(f"fox-milnor: {'holds' if fm['holds'] else 'fails'}{extra}")
    v = r["algebraically_slice"]
    print(f"algebraically slice: {v['status']}"
          + (f" ({v.get('test')}: {v.get('value')})" if v["status"] == "NotSlice" else ""))
    if v["status"] == "NotSlice":
        print(f"B({r['knot']}) not boundary slice")


def _print_bing(r: dict):
    print(f"knot: {r['knot']}")
    print("B(A) blocks:")
    for i, row in enumerate(r["bing_double"]["blocks"]):
        for j, blk in enumerate(row):
            print(f"  A[{i + 1},{j + 1}] = {blk}")
    m = r["metabolic_search"]
    print(f"metabolic search: {m['status']}"
          + (f" (verified: {m['verified']})" if "verified" in m else f" ({m.get('reason')})"))
    vals = sorted(set(r["multivar_signature"].values()))
    print(f"multivariable signature samples: {vals}")
    print(f"alexander module: {r['alexander_module']['verdict']}")
    print(f"murasugi arf: {r['murasugi_arf']}")
    print(r["conclusion"])


# -- batch -----------------------------------------------------------------


def _batch_item(job):
    kind, line, cfg = job
    try:
        source = json.loads(line)
        if not isinstance(source, dict):
            raise CliError("batch line must be a JSON object", EXIT_PARSE)
        if not isinstance(source.get("matrix", ""), str):
            source["matrix_data"] = source.pop("matrix")
        label, a = resolve_source(source)
        fn = invariants_report if kind == "invariants" else bing_report
        return {"ok": True, "result": fn(label, a, cfg)}
    except json.JSONDecodeError as exc:
        return {"ok": False, "code": EXIT_PARSE, "error": f"invalid JSON: {exc}"}
    except CliError as exc:
        return {"ok": False, "code": exc.code, "error": str(exc)}


def run_batch(kind: str, path: str, cfg: RunConfig, jobs: int = 1) -> int:
    try:
        with (sys.stdin if path == "-" else open(path)) as fh:
            lines = [ln for ln in fh if ln.strip()]
    except OSError as exc:
        raise CliError(f"cannot read {path}: {exc}", EXIT_UNKNOWN) from None
    work = [(kind, ln, cfg) for ln in lines]
    if jobs > 1:
        with ProcessPoolExecutor(jobs) as pool:
            results = list(pool.map(_batch_item, work))   # map keeps input order
    else:
        results = [_batch_item(w) for w in work]
    worst = 0
    for r in results:
        print(dumps(r))
        if not r["ok"]:
            worst = max(worst, r["code"])
    return worst


# -- subcommands -------------------------------------------------------------


def _source_args(args) -> dict:
    return {"name": args.name, "matrix": args.matrix, "braid": args.braid,
            "strands": getattr(args, "strands", None)}


def _config(args) -> RunConfig:
    return RunConfig(args.command, args.search_bound, args.resolution,
                     "json" if args.json else "human", args.seed)


def cmd_invariants(args) -> int:
    cfg = _config(args)
    if args.batch:
        return run_batch("invariants", args.batch, cfg, args.jobs)
    label, a = resolve_source(_source_args(args))
    r = invariants_report(label, a, cfg)
    print(dumps(r)) if args.json else _print_invariants(r)
    return EXIT_OK


def cmd_bing(args) -> int:
    cfg = _config(args)
    if args.batch:
        return run_batch("bing", args.batch, cfg, args.jobs)
    label, a = resolve_source(_source_args(args))
    r = bing_report(label, a, cfg)
    print(dumps(r)) if args.json else _print_bing(r)
    if r["metabolic_search"].get("verified") is False:
        return EXIT_FAIL
    return EXIT_OK


def cmd_verify_paper(args) -> int:
    report = verify.run_suite(_table(), args.search_bound, args.resolution,
                              random_count=args.random, seed=args.seed)
    if args.json:
        print(dumps(report.to_json()))
    else:
        for c in report.checks:
            line = f"[{'PASS' if c.ok else 'FAIL'}] {c.name}"
            if not c.ok and c.detail:
                line += f"\n       counterexample: {c.detail}"
            print(line)
        passed = sum(c.ok for c in report.checks)
        print(f"{passed}/{len(report.checks)} identities hold")
    return EXIT_OK if report.ok else EXIT_FAIL


def cmd_rep_check(args) -> int:
    label, a = resolve_source(_source_args(args))
    if a.size == 0:
        raise CliError(f"{label}: the zero-dimensional representation has nothing to check",
                       EXIT_UNKNOWN)
    rep = rp.from_seifert(a)
    h = rp.hat(rep)
    cp = rp.char_poly_simple(rep)
    out = {
        "knot": label,
        "char_poly": str(cp), "char_poly_integer": cp.integer.to_json(),
        "char_poly_irreducible": cp.irreducible,
        "hom_dim": len(rp.hom_space(rep, rep)),
        "hat_hom_dim": len(rp.hom_space(h, h)),
        "simplicity": rp.simplicity_suite(rep, seed=args.seed).to_json(),
        "hat_simplicity": rp.simplicity_suite(h, seed=args.seed).to_json(),
    }
    if args.other:
        label2, b = resolve_source({"name": args.other})
        r2 = rp.from_seifert(b) if b.size else None
        if r2 is None:
            v = vh = rp.No("dimensions differ")
        else:
            v = rp.is_isomorphic(rep, r2, seed=args.seed)
            vh = rp.is_isomorphic(h, rp.hat(r2), seed=args.seed)
        out["isomorphic"] = {"other": label2, "base": v.verdict, "hat": vh.verdict}
        if v.verdict == "Yes":
            out["isomorphic"]["hat_witness_valid"] = rp.is_hom(
                rp.hat_witness(v.witness), h, rp.hat(r2))
    if args.json:
        print(dumps(out))
    else:
        print(f"knot: {label}")
        print(f"characteristic polynomial: {out['char_poly']}"
              f" (integral: {cp.integer}, irreducible: {cp.irreducible})")
        print(f"dim Hom(M, M) = {out['hom_dim']}, dim Hom(M^, M^) = {out['hat_hom_dim']}")
        for key, title in (("simplicity", "M"), ("hat_simplicity", "M^")):
            s = out[key]
            print(f"{title} simple: {s['passes']}"
                  + (f" (invariant subspace from {s['certificate_source']})"
                     if s["certificate"] else ""))
        if "isomorphic" in out:
            iso = out["isomorphic"]
            print(f"isomorphic to {iso['other']}: {iso['base']}; hats: {iso['hat']}")
    iso = out.get("isomorphic", {})
    return EXIT_FAIL if iso.get("hat_witness_valid") is False else EXIT_OK


def cmd_s_calc(args) -> int:
    if args.system:
        try:
            with open(args.system) as fh:
                system = sc.SConstraintSystem.from_json(json.load(fh))
        except OSError as exc:
            raise CliError(f"cannot read {args.system}: {exc}", EXIT_UNKNOWN) from None
        except (json.JSONDecodeError, sc.SystemError_, KeyError, TypeError, ValueError) as exc:
            raise CliError(f"{args.system}: {exc}", EXIT_PARSE) from None
        res = sc.solve(system)
        if args.json:
            print(dumps(res.to_json()))
        elif res.consistent:
            for name, dom in res.domains.items():
                print(f"s({name}) in {dom}")
            print("trace:")
            for t in res.trace:
                print(f"  {t}")
        else:
            print(f"inconsistent at {res.link}")
            for w in res.witness:
                print(f"  {w}")
        return EXIT_OK
    if args.scenario == "hopf":
        res = sc.solve(sc.bing_hopf_system())
        if args.json:
            print(dumps(res.to_json()))
        else:
            print(f"s(B) in {res['B']}")
        return EXIT_OK
    rep = sc.scenario_whitehead(s_wh=args.s_wh, s_b=args.s_b)
    if args.json:
        print(dumps(rep.to_json()))
    else:
        if rep.consistent:
            print("consistent (s(B), s(Wh)) pairs: "
                  + ", ".join(f"({b}, {w})" for b, w in rep.pairs))
        else:
            print("inconsistent: " + "; ".join(rep.solution.witness))
    return EXIT_OK


def cmd_parse_braid(args) -> int:
    if args.braid is None:
        raise CliError("--braid is required", EXIT_UNKNOWN)
    try:
        b = dg.parse_braid(args.braid, args.strands)
    except dg.DiagramParseError as exc:
        raise CliError(f"braid: {exc}", EXIT_PARSE) from None
    st = dg.braid_stats(b)
    out = {"braid": b.to_json(), "stats": st.to_json(),
           "slice_bennequin_bound": dg.slice_bennequin_bound(b)}
    if st.positive:
        out["rasmussen"] = dg.rasmussen_positive(b)
    if st.components == 1:
        out["seifert_matrix"] = dg.seifert_matrix_from_braid(b).A.to_json()
    if args.json:
        print(dumps(out))
    else:
        print(f"braid on {b.strands} strands: {b}")
        print(f"components: {st.components}, writhe: {st.writhe},"
              f" seifert circles: {st.seifert_circles}, positive: {st.positive}")
        print(f"slice-Bennequin bound on chi: {out['slice_bennequin_bound']}")
        if "rasmussen" in out:
            print(f"s = {out['rasmussen']}")
        if "seifert_matrix" in out:
            print(f"seifert matrix: {out['seifert_matrix']}")
    return EXIT_OK


def cmd_tb_grid(args) -> int:
    if args.grid is None:
        raise CliError("--grid is required", EXIT_UNKNOWN)
    try:
        g = dg.parse_grid(args.grid)
    except dg.DiagramParseError as exc:
        raise CliError(f"grid: {exc}", EXIT_PARSE) from None
    counts = dg.grid_counts(g)
    out = {"grid": g.to_json(), "components": g.components(), "writhe": counts.writhe,
           "crossings": counts.crossings, "ne_corners": counts.ne_corners, "tb": counts.tb}
    if args.json:
        print(dumps(out))
    else:
        print(f"grid: {g}")
        print(f"components: {out['components']}, crossings: {counts.crossings},"
              f" writhe: {counts.writhe}, NE corners: {counts.ne_corners}")
        print(f"tb = {counts.tb}")
    return EXIT_OK


# -- parser ------------------------------------------------------------------


def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="conclab",
                                description="Concordance invariants of knots and Bing doubles.")
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--json", action="store_true", help="machine-readable output")
    common.add_argument("--seed", type=int, default=DEFAULT_SEED)
    common.add_argument("--search-bound", type=int, default=ki.DEFAULT_SEARCH_BOUND)
    common.add_argument("--resolution", type=int, default=ki.DEFAULT_RESOLUTION)
    source = argparse.ArgumentParser(add_help=False)
    source.add_argument("--name", help="knot from the table")
    source.add_argument("--matrix", metavar="FILE", help="JSON Seifert matrix")
    source.add_argument("--braid", metavar="STR", help="braid word, e.g. '1 1 1'")
    source.add_argument("--strands", type=int)
    batch = argparse.ArgumentParser(add_help=False)
    batch.add_argument("--batch", metavar="FILE",
                       help="JSON lines, one source per line ('-' for stdin)")
    batch.add_argument("--jobs", type=int, default=1)

    sub = p.add_subparsers(dest="command", required=True)
    sub.add_parser("invariants", parents=[common, source, batch],
                   help="knot invariant report").set_defaults(func=cmd_invariants)
    sub.add_parser("bing", parents=[common, source, batch],
                   help="Bing double report").set_defaults(func=cmd_bing)
    vp = sub.add_parser("verify-paper", parents=[common], help="run the identity suite")
    vp.add_argument("--random", type=int, default=0, metavar="N",
                    help="add N random Seifert matrices")
    vp.set_defaults(func=cmd_verify_paper)
    rc = sub.add_parser("rep-check", parents=[common, source],
                        help="representation simplicity and Hom dimensions")
    rc.add_argument("--other", metavar="NAME", help="also test isomorphism with this knot")
    rc.set_defaults(func=cmd_rep_check)
    scp = sub.add_parser("s-calc", parents=[common], help="Rasmussen constraint solver")
    scp.add_argument("--system", metavar="FILE", help="JSON constraint system")
    scp.add_argument("--scenario", choices=("whitehead", "hopf"), default="whitehead")
    scp.add_argument("--s-wh", type=int)
    scp.add_argument("--s-b", type=int)
    scp.set_defaults(func=cmd_s_calc)
    pb = sub.add_parser("parse-braid", parents=[common], help="braid statistics")
    pb.add_argument("--braid", metavar="STR")
    pb.add_argument("--strands", type=int)
    pb.set_defaults(func=cmd_parse_braid)
    tg = sub.add_parser("tb-grid", parents=[common], help="Thurston-Bennequin number of a grid")
    tg.add_argument("--grid", metavar="STR")
    tg.set_defaults(func=cmd_tb_grid)
    return p


def main(argv: list[str] | None = None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:   # argparse usage errors
        return EXIT_PARSE if exc.code else EXIT_OK
    try:
        return args.func(args)
    except CliError as exc:
        print(f"conclab: error: {exc}", file=sys.stderr)
        return exc.code


if __name__ == "__main__":
    sys.exit(main())

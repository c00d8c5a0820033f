"""Command line front end.

Exit codes: 0 success, 1 numerical failure, 2 usage or input error.
"""
from __future__ import annotations

import argparse
import csv
import os
import sys
from dataclasses import asdict, replace
from pathlib import Path

from . import example1
from .errors import InputError, TrimfitError
from .io import dumps, load_manifest, read_csv
from .lst import LstConfig, lst_fit
from .lts import LtsConfig, lts_fit
from .objectives import TrimConfig, objective_lst, objective_lts
from .regression import fit_ls
from .rng import SEED_ENV, seed_from_env
from .simulation import CSV_COLUMNS, csv_rows, run_benchmark


def _fit(d, method: str, args):
    if method == "ls":
        return fit_ls(d)
    if method in ("lts", "lts-exact"):
        cfg = LtsConfig(h=args.h, n_starts=args.starts, seed=args.seed,
                        mode="exhaustive" if method == "lts-exact" else "concentration")
        return lts_fit(d, cfg)
    cfg = LstConfig(alpha=args.alpha, delta=args.delta, replications=args.reps, seed=args.seed,
                    mad_constant=args.mad_constant, extend=args.extend)
    return lst_fit(d, cfg)


def _fmt(v) -> str:
    return f"{v:.6g}" if isinstance(v, float) else str(v)


def _table(rows):
    width = max(len(k) for k, _ in rows)
    for k, v in rows:
        print(f"{k:<{width}}  {_fmt(v)}")


def cmd_fit(args) -> int:
    d, names = read_csv(args.file, args.response)
    res = _fit(d, args.method, args)
    payload = {"command": "fit", "file": str(args.file), "response": args.response,
               "n": d.n, "p": d.p, "terms": ["(intercept)", *names],
               "fit": res.to_dict(timing=not args.no_timing)}
    try:
        payload["objective_lst"] = objective_lst(d, res.coefficients,
                                                TrimConfig(args.alpha, args.mad_constant))
    except TrimfitError:
        payload["objective_lst"] = None
    h = args.h if args.h is not None else res.diagnostics.get("h")
    if h is not None:
        payload["objective_lts"] = objective_lts(d, res.coefficients, h)
    text = dumps(payload)
    if args.out:
        Path(args.out).write_text(text)
    if args.json:
        sys.stdout.write(text)
        return 0
    rows = [("method", res.method), ("n", d.n), ("p", d.p)]
    rows += [(name, float(b)) for name, b in zip(payload["terms"], res.coefficients)]
    rows += [("objective", res.objective), ("kept", len(res.kept)),
             ("evaluations", res.evaluations)]
    if payload["objective_lst"] is not None:
        rows.append((f"objective_lst(alpha={args.alpha:g})", payload["objective_lst"]))
    if not args.no_timing:
        rows.append(("elapsed_s", res.elapsed))
    _table(rows)
    return 0


def cmd_example1(args) -> int:
    rep = example1.report()
    if args.json:
        sys.stdout.write(dumps({"command": "example1", **rep}))
        return 0
    print(f"{'criterion':<10}{'line':<6}{'size':>5}{'computed':>12}{'published':>11}  status  kept")
    for r in rep["rows"]:
        print(f"{r['criterion']:<10}{r['line']:<6}{r['size']:>5}{r['computed']:>12.4f}"
              f"{r['published']:>11}  {r['status']:<10}{r['kept']}")
    print()
    for v in rep["verdicts"]:
        print(f"{v['criterion']} (size {v['size']}) prefers {v['prefers']}; "
              f"published {v['published']}  {v['status']}")
    return 0


def cmd_bench(args) -> int:
    scenarios = load_manifest(args.manifest)
    out = Path(args.out)
    out.mkdir(parents=True, exist_ok=True)
    timing = not args.no_timing
    summary = []
    table_lines = []
    for cfg in scenarios:
        if args.seed_override is not None:
            cfg = replace(cfg, seed=args.seed_override)
        print(f"[bench] {cfg.name}: n={cfg.n} p={cfg.p} eps={cfg.epsilon} R={cfg.replications}",
              file=sys.stderr)
        reports = run_benchmark(cfg, parallelism=args.parallelism)
        doc = {"scenario": asdict(cfg),
               "reports": {m: r.to_dict(timing=timing) for m, r in reports.items()}}
        (out / f"{cfg.name}.json").write_text(dumps(doc))
        summary.extend(csv_rows(cfg, reports, timing=timing))
        table_lines.append(f"{cfg.name}  n={cfg.n} p={cfg.p} eps={cfg.epsilon:g} R={cfg.replications}")
        table_lines.append(f"  {'method':<6}{'EMSE':>10}{'SVAR':>10}{'TT':>10}{'RE':>9}")
        for m, r in reports.items():
            tt = f"{r.tt:10.3f}" if timing else f"{'-':>10}"
            re = f"{r.re:9.4f}" if r.re is not None else f"{'-':>9}"
            table_lines.append(f"  {m.upper():<6}{r.emse:10.4f}{r.svar:10.4f}{tt}{re}")
    with open(out / "summary.csv", "w", newline="") as fh:
        w = csv.DictWriter(fh, fieldnames=CSV_COLUMNS, lineterminator="\n")
        w.writeheader()
        w.writerows(summary)
    (out / "summary.txt").write_text("\n".join(table_lines) + "\n")
    print("\n".join(table_lines))
    return 0


GNUPLOT = """set key left top
set xlabel '{x}'
set ylabel '{y}'
plot 'points.tsv' using 1:2 with points pt 7 title 'data', \\
{lines}
"""


def cmd_plotdata(args) -> int:
    d, names = read_csv(args.file, args.response)
    if d.p != 2:
        raise InputError("plot data requires one predictor")
    out = Path(args.out)
    out.mkdir(parents=True, exist_ok=True)
    fits = {m: _fit(d, m, args) for m in ("ls", "lts", "lst")}
    with open(out / "lines.tsv", "w") as fh:
        fh.write("method\tintercept\tslope\n")
        for m, f in fits.items():
            fh.write(f"{m}\t{float(f.coefficients[0])!r}\t{float(f.coefficients[1])!r}\n")
    with open(out / "points.tsv", "w") as fh:
        fh.write(f"# {names[0]}\t{args.response}\n")
        for x, y in zip(d.predictors[:, 0], d.responses):
            fh.write(f"{float(x)!r}\t{float(y)!r}\n")
    lines = ", \\\n".join(
        f"     {float(f.coefficients[0])!r} + {float(f.coefficients[1])!r}*x title '{m.upper()}'"
        for m, f in fits.items())
    (out / "plot.gp").write_text(GNUPLOT.format(x=names[0], y=args.response, lines=lines))
    for m, f in fits.items():
        print(f"{m:<4} intercept {float(f.coefficients[0]):.6g}  slope {float(f.coefficients[1]):.6g}")
    return 0


def _common(p: argparse.ArgumentParser):
    p.add_argument("--seed", type=int, default=None,
                   help="random seed (default: $TRIMFIT_SEED, else 0)")
    p.add_argument("--no-timing", action="store_true", help="omit wall-clock fields from reports")
    p.add_argument("--json", action="store_true", help="print the JSON report to stdout")


def _estimator_flags(p: argparse.ArgumentParser):
    p.add_argument("--alpha", type=float, default=3.0, help="outlyingness cutoff (>= 1)")
    p.add_argument("--h", type=int, default=None, help="LTS coverage (default floor((n+p+1)/2))")
    p.add_argument("--reps", type=int, default=None,
                   help="LST replications (default min(50, n(n-1)/2))")
    p.add_argument("--delta", type=float, default=0.5, help="LST perturbation size")
    p.add_argument("--mad-constant", type=float, default=1.0,
                   help="multiply the MAD by this constant (1.4826 for normal consistency)")
    p.add_argument("--extend", action="store_true",
                   help="LST: replicate past --reps until a candidate is admissible")
    p.add_argument("--starts", type=int, default=500, help="LTS random starts")


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="trimfit", description="LS, LTS and LST regression")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("fit", help="fit an estimator to a CSV file")
    p.add_argument("file")
    p.add_argument("--response", required=True)
    p.add_argument("--method", choices=("ls", "lts", "lts-exact", "lst"), default="lst")
    p.add_argument("--out", help="also write the JSON report here")
    _estimator_flags(p)
    _common(p)
    p.set_defaults(func=cmd_fit)

    p = sub.add_parser("example1", help="objective values on the seven-point toy data")
    _common(p)
    p.set_defaults(func=cmd_example1)

    p = sub.add_parser("bench", help="run the scenarios of a TOML manifest")
    p.add_argument("manifest", help="manifest path or bundled name (table1_desk.toml, ...)")
    p.add_argument("--out", required=True, help="output directory")
    p.add_argument("--parallelism", type=int, default=1)
    _common(p)
    p.set_defaults(func=cmd_bench)

    p = sub.add_parser("plotdata", help="fit lines and points for a one-predictor CSV")
    p.add_argument("file")
    p.add_argument("--response", required=True)
    p.add_argument("--out", required=True, help="output directory")
    _estimator_flags(p)
    _common(p)
    p.set_defaults(func=cmd_plotdata)
    return parser


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    explicit_seed = args.seed
    if args.seed is None:
        try:
            args.seed = seed_from_env()
        except ValueError:
            print("trimfit: error: TRIMFIT_SEED must be an integer", file=sys.stderr)
            return 2
    if args.seed < 0:
        print("trimfit: error: --seed must be non-negative", file=sys.stderr)
        return 2
    # bench manifests carry their own seeds; --seed or TRIMFIT_SEED overrides them
    env_set = os.environ.get(SEED_ENV, "").strip() != ""
    args.seed_override = explicit_seed if explicit_seed is not None else (args.seed if env_set else None)
    try:
        return args.func(args)
    except InputError as exc:
        print(f"trimfit: error: {exc}", file=sys.stderr)
        return 2
    except TrimfitError as exc:
        print(f"trimfit: error: {exc}", file=sys.stderr)
        return 1
    except ValueError as exc:
        print(f"trimfit: error: {exc}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())

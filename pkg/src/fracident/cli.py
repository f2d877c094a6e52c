"""Command-line front end.

    fracident analyze   --params P.json | --coeffs TF.json [--ts X]
    fracident roundtrip --params P.json
    fracident sweep     [--samples N --seed N --workers N]
    fracident spectra   --params P.json [--grid GRID.csv]
    fracident legacy    --params P.json [--T-list 10,20,50,100]

``--example`` may replace ``--params`` everywhere.  Settings are
resolved as built-in defaults < ``--config`` file < FRACIDENT_* environment
variables < flags.

Exit status: 0 globally identifiable (or success for spectra/legacy),
10 identifiable (several solutions), 11 unidentifiable, 12 no valid solution,
13 sweep with any draw not globally identifiable, 2 usage/configuration error,
3 bad input file, 4 numerical failure.
"""
from __future__ import annotations

import argparse
import logging
import sys

from .config import RunConfig, config_from_mapping, env_overrides
from .errors import ConfigurationError, FracIdentError, InputFormatError, RootFindingError
from .experiments import PARAM_ORDER, legacy_table, roundtrip, summarize, sweep
from .fileio import (
    dump_json,
    load_json,
    num_str,
    params_from_mapping,
    params_to_mapping,
    read_grid_csv,
    report_to_mapping,
    tf_from_mapping,
    write_csv,
)
from .gl_model import example_params, model_tf
from .identifiability import Verdict, analyze
from .spectra import default_grid, sweep_spectrum

log = logging.getLogger("fracident")

EXIT_OK = 0
EXIT_IDENTIFIABLE = 10
EXIT_UNIDENTIFIABLE = 11
EXIT_NO_SOLUTION = 12
EXIT_SWEEP_MISMATCH = 13
EXIT_USAGE = 2
EXIT_INPUT = 3
EXIT_NUMERIC = 4

VERDICT_EXIT = {
    Verdict.GLOBALLY_IDENTIFIABLE: EXIT_OK,
    Verdict.IDENTIFIABLE: EXIT_IDENTIFIABLE,
    Verdict.UNIDENTIFIABLE: EXIT_UNIDENTIFIABLE,
    Verdict.NO_VALID_SOLUTION: EXIT_NO_SOLUTION,
}


def _common() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(add_help=False)
    p.add_argument("--config", metavar="PATH", help="JSON run configuration")
    p.add_argument("--digits", type=int, help="working precision in decimal digits")
    p.add_argument("--T", type=int, dest="T", help="GL horizon (number of samples)")
    p.add_argument("--ts", help="sampling period in seconds")
    p.add_argument("--seed", type=int)
    p.add_argument("--samples", type=int)
    p.add_argument("--workers", type=int)
    p.add_argument("--verify-tol", type=float, dest="verify_tol")
    p.add_argument("--out", metavar="PATH", help="output file (default: stdout)")
    p.add_argument("-v", "--verbose", action="store_true")
    return p


def _params_args(p, required=True):
    g = p.add_mutually_exclusive_group(required=required)
    g.add_argument("--params", metavar="PATH", help="JSON model parameters")
    g.add_argument("--example", action="store_true",
                   help="use the built-in battery example")
    return g


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="fracident",
                                     description="Structural identifiability of the two-CPE GL circuit model.")
    sub = parser.add_subparsers(dest="command", required=True)
    common = _common()

    p = sub.add_parser("analyze", parents=[common], help="analyse parameters or raw coefficients")
    g = _params_args(p, required=True)
    g.add_argument("--coeffs", metavar="PATH", help="JSON document with f and g coefficient arrays")
    p.set_defaults(func=cmd_analyze)

    p = sub.add_parser("roundtrip", parents=[common], help="build, analyse and compare parameters")
    _params_args(p)
    p.set_defaults(func=cmd_roundtrip)

    p = sub.add_parser("sweep", parents=[common], help="seeded random sweep over parameter ranges")
    p.set_defaults(func=cmd_sweep)

    p = sub.add_parser("spectra", parents=[common], help="impedance spectrum as CSV")
    _params_args(p)
    p.add_argument("--grid", metavar="PATH", help="CSV of angular frequencies (rad/s)")
    p.set_defaults(func=cmd_spectra)

    p = sub.add_parser("legacy", parents=[common], help="lowest-coefficient residuals versus T")
    _params_args(p)
    p.add_argument("--T-list", default="10,20,50,100", dest="T_list",
                   help="comma-separated horizons (each >= 7)")
    p.set_defaults(func=cmd_legacy)
    return parser


def resolve_config(args) -> RunConfig:
    cfg = RunConfig()
    if args.config:
        doc = load_json(args.config)
        cfg = config_from_mapping(doc)
    cfg = cfg.merged(env_overrides())
    flags = {k: getattr(args, k, None) for k in
             ("digits", "T", "ts", "seed", "samples", "workers", "verify_tol", "out")}
    return cfg.merged(flags)


def _load_params(args, cfg: RunConfig, ts_flag=None):
    if args.example:
        p = example_params(horizon_T=cfg.T)
        return p.replace(ts=ts_flag) if ts_flag else p
    doc = load_json(args.params)
    return params_from_mapping(doc, where=args.params, ts=ts_flag or doc.get("ts", cfg.ts),
                               horizon_T=args.T if args.T is not None else doc.get("horizon_T", cfg.T))


def _emit_text(text: str, out):
    if out:
        with open(out, "w") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)


def _emit_csv(rows, header, out):
    if out:
        write_csv(rows, header, path=out)
    else:
        write_csv(rows, header, stream=sys.stdout)


def cmd_analyze(args, cfg: RunConfig) -> int:
    if args.coeffs:
        doc = load_json(args.coeffs)
        tf = tf_from_mapping(doc, where=args.coeffs)
        ts = args.ts or doc.get("ts")
        params = None
    else:
        params = _load_params(args, cfg, args.ts)
        tf = model_tf(params, cfg.context)
        ts = params.ts
    report = analyze(tf, ts, cfg.analysis())
    doc = {"command": "analyze"}
    if params is not None:
        doc["input_params"] = params_to_mapping(params, cfg.digits)
    doc.update(report_to_mapping(report, cfg.digits))
    _emit_text(dump_json(doc), cfg.out)
    log.info("verdict: %s", report.verdict_label)
    return VERDICT_EXIT[report.verdict]


def cmd_roundtrip(args, cfg: RunConfig) -> int:
    params = _load_params(args, cfg, args.ts)
    report, errors = roundtrip(params, cfg)
    doc = {"command": "roundtrip", "input_params": params_to_mapping(params, cfg.digits)}
    doc["relative_errors"] = (
        {k: num_str(v, 10) for k, v in errors.items()} if errors is not None else None
    )
    doc.update(report_to_mapping(report, cfg.digits))
    _emit_text(dump_json(doc), cfg.out)
    return VERDICT_EXIT[report.verdict]


def cmd_sweep(args, cfg: RunConfig) -> int:
    rows = sweep(cfg)
    header = ["index", *PARAM_ORDER, "verdict", "n_accepted", "max_rel_error"]
    table = []
    for r in rows:
        p = r["params"]
        table.append([r["index"], *(num_str(getattr(p, k), 17) for k in PARAM_ORDER),
                      r["verdict"], r["n_accepted"],
                      num_str(r["max_rel_error"], 6) if r["max_rel_error"] is not None else ""])
    _emit_csv(table, header, cfg.out)
    counts = summarize(rows)
    for verdict, n in sorted(counts.items()):
        print(f"{verdict}: {n}", file=sys.stderr)
    all_global = counts.get(Verdict.GLOBALLY_IDENTIFIABLE.value, 0) == len(rows)
    return EXIT_OK if all_global else EXIT_SWEEP_MISMATCH


def cmd_spectra(args, cfg: RunConfig) -> int:
    params = _load_params(args, cfg, args.ts)
    grid = read_grid_csv(args.grid) if args.grid else default_grid()
    points = sweep_spectrum(params, grid)
    rows = [[repr(pt.omega), repr(pt.z_re), repr(pt.z_im)] for pt in points]
    _emit_csv(rows, ["omega", "z_re", "z_im"], cfg.out)
    return EXIT_OK


def cmd_legacy(args, cfg: RunConfig) -> int:
    try:
        horizons = [int(t) for t in args.T_list.split(",") if t.strip()]
    except ValueError as exc:
        raise ConfigurationError(f"--T-list: {exc}") from exc
    if not horizons or min(horizons) < 7:
        raise ConfigurationError("--T-list needs integers >= 7")
    params = _load_params(args, cfg, args.ts)
    rows = legacy_table(params, horizons, cfg.context)
    table = []
    for r in rows:
        table.append([r.T, num_str(abs(r.g0), 20), num_str(abs(r.g1), 20), num_str(abs(r.g2), 20),
                      num_str(r.residual1, 10), num_str(r.residual2, 10),
                      num_str(abs(r.residual1) / r.scale1, 10),
                      num_str(abs(r.residual2) / r.scale2, 10)])
    header = ["T", "abs_g0", "abs_g1", "abs_g2", "residual1", "residual2",
              "rel_residual1", "rel_residual2"]
    _emit_csv(table, header, cfg.out)
    return EXIT_OK


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    logging.basicConfig(level=logging.INFO if args.verbose else logging.WARNING,
                        format="%(levelname)s: %(message)s")
    try:
        cfg = resolve_config(args)
        return args.func(args, cfg)
    except InputFormatError as exc:
        print(f"input error: {exc}", file=sys.stderr)
        return EXIT_INPUT
    except ConfigurationError as exc:
        print(f"configuration error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except RootFindingError as exc:
        print(f"numerical failure: {exc}", file=sys.stderr)
        return EXIT_NUMERIC
    except FracIdentError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_NUMERIC


if __name__ == "__main__":
    sys.exit(main())

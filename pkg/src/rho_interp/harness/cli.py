"""``rho-interp`` command line: run, calibrate, summary.

Exit codes: 0 all checks pass, 1 a check failed or a numerical routine
flagged a failure, 2 config or input error.
"""

from __future__ import annotations

import argparse
import logging
import sys
from pathlib import Path

from ..couples import KFunctionalError
from ..params import PreconditionError
from .config import ConfigError, load_config
from .runner import calibrate, execute, summary_csv, write_report

log = logging.getLogger("rho_interp")

EXIT_PASS, EXIT_FAIL, EXIT_CONFIG = 0, 1, 2


def _progress(name, seed):
    log.info("running %s%s", name, "" if seed is None else f" (seed {seed})")


def _status(rep) -> str:
    s = rep.summary
    head = f"{'PASS' if rep.passed else 'FAIL'}  {rep.check}"
    if s.get("worst_ratio") is None:
        return f"{head}  identical={s.get('identical')}" if "identical" in s else head
    return f"{head}  {s['worst_ratio']:.6g} <= {s.get('constant')}"


def cmd_run(args) -> int:
    cfg = load_config(args.config)
    if cfg.check == "calibrate":
        return cmd_calibrate(args)
    reports = execute(cfg, _progress)
    out = Path(args.output) if args.output else cfg.resolve(cfg.output)
    paths = []
    for rep in reports:
        paths.append(write_report(rep, out)[0])
        print(_status(rep))
    (out / "summary.csv").write_text(summary_csv(paths), encoding="utf-8")
    return EXIT_PASS if all(r.passed for r in reports) else EXIT_FAIL


def cmd_calibrate(args) -> int:
    cfg = load_config(args.config)
    cf = calibrate(cfg, _progress)
    out = Path(args.output) if args.output else cfg.resolve(cfg.output)
    if out.suffix != ".json":
        out = out / "constants.json"
    cf.write(out)
    print(f"wrote {len(cf.constants)} constants to {out} (digest {cf.digest[:12]})")
    return EXIT_PASS


def cmd_summary(args) -> int:
    text = summary_csv(args.reports)
    if args.output:
        Path(args.output).write_text(text, encoding="utf-8")
    else:
        sys.stdout.write(text)
    return EXIT_PASS


def build_parser() -> argparse.ArgumentParser:
    ap = argparse.ArgumentParser(prog="rho-interp", description=__doc__.splitlines()[0])
    ap.add_argument("-v", "--verbose", action="store_true")
    sub = ap.add_subparsers(dest="command", required=True)
    p = sub.add_parser("run", help="run one check or the whole suite from a config")
    p.add_argument("config")
    p.add_argument("-o", "--output", help="report directory (overrides the config)")
    p.set_defaults(fn=cmd_run)
    p = sub.add_parser("calibrate", help="measure constants over seeds and freeze them")
    p.add_argument("config")
    p.add_argument("-o", "--output", help="constants file (overrides the config)")
    p.set_defaults(fn=cmd_calibrate)
    p = sub.add_parser("summary", help="tabulate report JSON files as CSV")
    p.add_argument("reports", nargs="*")
    p.add_argument("-o", "--output", help="CSV path (default stdout)")
    p.set_defaults(fn=cmd_summary)
    return ap


def main(argv=None) -> int:
    try:
        args = build_parser().parse_args(argv)
    except SystemExit as e:
        return EXIT_CONFIG if e.code else EXIT_PASS
    logging.basicConfig(level=logging.INFO if args.verbose else logging.WARNING,
                        format="%(levelname)s %(message)s")
    try:
        return args.fn(args)
    except (ConfigError, PreconditionError) as e:
        print(f"config error: {e}", file=sys.stderr)
        return EXIT_CONFIG
    except (KFunctionalError, FloatingPointError, ArithmeticError) as e:
        print(f"numerical failure: {e}", file=sys.stderr)
        return EXIT_FAIL


if __name__ == "__main__":
    sys.exit(main())

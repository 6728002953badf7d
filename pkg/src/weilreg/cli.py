"""Command-line driver: run a session file and emit a report.

weilreg run <session-file> [--format json|text] [--out <path>]
            [--max-groebner-steps N] [--parallel] [--verbose]

Exit code is 0 iff no record has status "error"; the WEILREG_MAX_STEPS
environment variable supplies the default step budget.
"""

import argparse
import os
import sys
from pathlib import Path

from .errors import SessionSyntaxError, UseBeforeDeclare
from .sessions import emit_report, parse_session, run_session


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="weilreg", description=__doc__)
    sub = parser.add_subparsers(dest="subcommand", required=True)
    run = sub.add_parser("run", help="run a session file and report")
    run.add_argument("session", help="path to a session file (UTF-8)")
    run.add_argument("--format", choices=("json", "text"), default="json")
    run.add_argument("--out", default=None, help="write the report here instead of stdout")
    run.add_argument("--max-groebner-steps", type=int, default=None,
                     help="cap on processed S-pairs per basis computation")
    run.add_argument("--parallel", action="store_true",
                     help="run independent commands concurrently")
    run.add_argument("--verbose", action="store_true",
                     help="echo each record's status to stderr as it completes")
    return parser


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    path = Path(args.session)
    try:
        text = path.read_text(encoding="utf-8")
    except OSError as err:
        print(f"weilreg: cannot read {path}: {err}", file=sys.stderr)
        return 2
    max_steps = args.max_groebner_steps
    if max_steps is None:
        env_budget = os.environ.get("WEILREG_MAX_STEPS")
        if env_budget:
            max_steps = int(env_budget)
    try:
        ast = parse_session(text)
    except (SessionSyntaxError, UseBeforeDeclare) as err:
        print(f"weilreg: {err}", file=sys.stderr)
        return 2
    records = run_session(ast, session_name=path.stem, max_steps=max_steps,
                          parallel=args.parallel)
    if args.verbose:
        for record in records:
            print(f"[{record['status']}] {record['command']}", file=sys.stderr)
    report = emit_report(records, fmt=args.format, session=path.stem)
    if args.out:
        Path(args.out).write_text(report, encoding="utf-8")
    else:
        sys.stdout.write(report)
    return 0 if all(r["status"] != "error" for r in records) else 1


if __name__ == "__main__":
    sys.exit(main())

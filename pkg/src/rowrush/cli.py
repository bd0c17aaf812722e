"""Command-line front door: simulate, sweep, solve, serve, selftest."""

from __future__ import annotations

import argparse
import sys
from typing import Optional

from rowrush.board import GameConfig, Schedule, write_transcript
from rowrush.engine import (
    StrategyBugError,
    parse_sweep_spec,
    play_game_full,
    rows_to_csv,
    run_sweep,
)
from rowrush.solver import NodeCapExceeded, render_verdict, solve, verify_variation

EX_OK = 0
EX_SELFTEST_FAILED = 1
EX_STRATEGY_BUG = 2
EX_INCONCLUSIVE = 3
EX_USAGE = 64
EX_BAD_SPEC = 65


class _Parser(argparse.ArgumentParser):
    def error(self, message: str):
        self.print_usage(sys.stderr)
        print(f"error: {message}", file=sys.stderr)
        raise SystemExit(EX_USAGE)


def build_parser() -> argparse.ArgumentParser:
    parser = _Parser(prog="rowrush", description=__doc__)
    sub = parser.add_subparsers(dest="command", required=True, parser_class=_Parser)

    sim = sub.add_parser("simulate", help="play one game between named strategies")
    sim.add_argument("--n", type=int, required=True, help="winning run length")
    sim.add_argument("--schedule", default="identity",
                     help="identity | const:<k> | evenA,evenB,oddA,oddC")
    sim.add_argument("--maker", required=True, help="sprint | greedy | random | fill")
    sim.add_argument("--breaker", required=True, help="direction | line_spoil | fill")
    sim.add_argument("--seed", type=int, required=True,
                     help="no default: determinism must be explicit")
    sim.add_argument("--cap", type=int, default=None,
                     help="turn cap (default 2n+2)")
    sim.add_argument("--out", default=None, help="write the transcript here")

    swp = sub.add_parser("sweep", help="run a matchup grid and emit a CSV table")
    swp.add_argument("--spec", required=True, help="key=value spec file")
    swp.add_argument("--out", default=None, help="write the CSV here (default stdout)")

    slv = sub.add_parser("solve", help="exact small-n verdict for the two-winner game")
    slv.add_argument("--n", type=int, required=True)
    slv.add_argument("--radius", type=int, default=None, help="relevance reach (default n)")
    slv.add_argument("--node-cap", type=int, default=None)

    srv = sub.add_parser("serve", help="run the interactive play service")
    srv.add_argument("--host", default="127.0.0.1")
    srv.add_argument("--port", type=int, default=8000)
    srv.add_argument("--sessions-dir", default=None,
                     help="persist transcripts here and replay them on restart")
    srv.add_argument("--ui-dir", default=None, help="serve this directory at /ui")

    sub.add_parser("selftest", help="run the built-in consistency suites")
    return parser


def _cmd_simulate(args) -> int:
    try:
        schedule = Schedule.parse(args.schedule)
        config = GameConfig(args.n, schedule)
    except ValueError as err:
        print(f"error: {err}", file=sys.stderr)
        return EX_USAGE
    cap = args.cap if args.cap is not None else 2 * args.n + 2
    try:
        record, state, _ = play_game_full(config, args.maker, args.breaker, args.seed, cap)
    except ValueError as err:
        print(f"error: {err}", file=sys.stderr)
        return EX_USAGE
    except StrategyBugError as err:
        print(f"strategy bug: {err}", file=sys.stderr)
        return EX_STRATEGY_BUG
    transcript = write_transcript(state)
    if args.out:
        with open(args.out, "w") as fh:
            fh.write(transcript)
    else:
        sys.stdout.write(transcript)
    print(f"win_time={record.win_time if record.win_time is not None else 'none'}")
    return EX_OK


def _cmd_sweep(args) -> int:
    try:
        with open(args.spec) as fh:
            spec = parse_sweep_spec(fh.read())
    except (OSError, ValueError) as err:
        print(f"bad sweep spec: {err}", file=sys.stderr)
        return EX_BAD_SPEC
    table = rows_to_csv(run_sweep(spec))
    if args.out:
        with open(args.out, "w") as fh:
            fh.write(table)
    else:
        sys.stdout.write(table)
    return EX_OK


def _cmd_solve(args) -> int:
    try:
        verdict = solve(args.n, radius=args.radius, node_cap=args.node_cap)
    except ValueError as err:
        print(f"error: {err}", file=sys.stderr)
        return EX_USAGE
    except NodeCapExceeded as err:
        print(f"inconclusive nodes={err.nodes_expanded}")
        return EX_INCONCLUSIVE
    sys.stdout.write(render_verdict(verdict))
    if not verify_variation(verdict):
        print("error: principal variation failed replay", file=sys.stderr)
        return EX_SELFTEST_FAILED
    return EX_OK


def _cmd_serve(args) -> int:
    import uvicorn

    from rowrush.service import create_app

    app = create_app(sessions_dir=args.sessions_dir, ui_dir=args.ui_dir)
    uvicorn.run(app, host=args.host, port=args.port, log_level="info")
    return EX_OK


def _cmd_selftest() -> int:
    from rowrush.selftest import run_all

    return EX_OK if run_all() else EX_SELFTEST_FAILED


def main(argv: Optional[list[str]] = None) -> int:
    try:
        args = build_parser().parse_args(argv)
    except SystemExit as exc:
        return exc.code if isinstance(exc.code, int) else EX_USAGE
    if args.command == "simulate":
        return _cmd_simulate(args)
    if args.command == "sweep":
        return _cmd_sweep(args)
    if args.command == "solve":
        return _cmd_solve(args)
    if args.command == "serve":
        return _cmd_serve(args)
    return _cmd_selftest()


if __name__ == "__main__":
    sys.exit(main())

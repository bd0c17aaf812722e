"""Game loop, matchup records, per-turn line diagnostics and sweep tables."""

from __future__ import annotations

import csv
import io
import time
from dataclasses import dataclass, field
from typing import Optional, Sequence

from rowrush.board import (
    GameConfig,
    GameState,
    MoveError,
    PlayerColor,
    Schedule,
    Segment,
    apply_move,
)
from rowrush.cover import LineLedger
from rowrush.strategies import SplitMix64, make_breaker, make_maker


class StrategyBugError(Exception):
    """A strategy produced an illegal move; that is a bug, not a game result."""

    def __init__(self, strategy: str, turn: int, cause: MoveError):
        super().__init__(f"strategy {strategy!r} produced an illegal move at turn {turn}: {cause}")
        self.strategy = strategy
        self.turn = turn
        self.cause = cause


@dataclass(frozen=True)
class TurnStats:
    """Snapshot taken right after a turn was applied."""

    t: int
    max_line_red: int  # most Red points on any still-good line
    at_least: dict[int, int]  # threshold r -> number of good lines with >= r Red


@dataclass
class GameRecord:
    config: GameConfig
    maker_name: str
    breaker_name: str
    seed: int
    win_time: Optional[int]
    win_segment: Optional[Segment]
    timeline: list[TurnStats]
    truncated_at: Optional[int]


def max_good_line_red(ledger: LineLedger) -> int:
    """Largest Red count over good lines; 0 when no line is touched."""
    return ledger.max_red()


def good_lines_with_at_least(ledger: LineLedger, r: int) -> int:
    return ledger.count_at_least(r)


def play_game_full(
    config: GameConfig,
    maker_name: str,
    breaker_name: str,
    seed: int,
    cap: int,
    thresholds: Sequence[int] = (),
) -> tuple[GameRecord, GameState, LineLedger]:
    """Run one game to a Red win or the turn cap; returns record, state, ledger."""
    if cap < 1:
        raise ValueError(f"cap must be >= 1, got {cap}")
    ledger = LineLedger(config.n)
    maker_fn = make_maker(maker_name)
    breaker_fn = make_breaker(breaker_name, ledger)
    parent = SplitMix64(seed)
    maker_rng = SplitMix64(parent.next())
    breaker_rng = SplitMix64(parent.next())

    state = GameState(config)
    timeline: list[TurnStats] = []
    while state.winner is None and state.t <= cap:
        t = state.t
        q = config.schedule.quota(t)
        red_turn = t % 2 == 1
        fn = maker_fn if red_turn else breaker_fn
        rng = maker_rng if red_turn else breaker_rng
        name = maker_name if red_turn else breaker_name
        points = fn(state, q, rng)
        try:
            apply_move(state, points)
        except MoveError as err:
            raise StrategyBugError(name, t, err) from err
        color = PlayerColor.RED if red_turn else PlayerColor.BLUE
        for p in points:
            ledger.on_claim(p, color)
        timeline.append(
            TurnStats(t, ledger.max_red(), {r: ledger.count_at_least(r) for r in thresholds})
        )

    if state.winner is not None:
        _, win_time, win_segment = state.winner
        truncated = None
    else:
        win_time = win_segment = None
        truncated = cap
    record = GameRecord(
        config, maker_name, breaker_name, seed, win_time, win_segment, timeline, truncated
    )
    return record, state, ledger


def play_game(
    config: GameConfig,
    maker_name: str,
    breaker_name: str,
    seed: int,
    cap: int,
    thresholds: Sequence[int] = (),
) -> GameRecord:
    record, _, _ = play_game_full(config, maker_name, breaker_name, seed, cap, thresholds)
    return record


@dataclass
class SweepSpec:
    ns: list[int]
    matchups: list[tuple[str, str]]  # (maker, breaker)
    seeds: int  # seed values 1..seeds per cell
    cap: int
    thresholds: list[int] = field(default_factory=list)
    schedule: Schedule = field(default_factory=Schedule.identity)

    def __post_init__(self) -> None:
        if not self.ns or not self.matchups:
            raise ValueError("sweep needs at least one n and one matchup")
        if self.seeds < 1 or self.cap < 1:
            raise ValueError("seeds and cap must be >= 1")


@dataclass
class SweepRow:
    n: int
    schedule: str
    maker: str
    breaker: str
    seed: int
    win_time: Optional[int]
    ratio: Optional[float]
    max_line_red: Optional[int]
    wall_ms: int
    error: Optional[str] = None
    record: Optional[GameRecord] = None


def run_sweep(spec: SweepSpec) -> list[SweepRow]:
    """One row per (n, matchup, seed), in that order; cell errors do not abort."""
    rows: list[SweepRow] = []
    for n in spec.ns:
        config = GameConfig(n, spec.schedule)
        for maker, breaker in spec.matchups:
            for seed in range(1, spec.seeds + 1):
                start = time.perf_counter()
                try:
                    record = play_game(config, maker, breaker, seed, spec.cap, spec.thresholds)
                except StrategyBugError as err:
                    wall = int((time.perf_counter() - start) * 1000)
                    rows.append(
                        SweepRow(n, spec.schedule.render(), maker, breaker, seed,
                                 None, None, None, wall, error=str(err))
                    )
                    continue
                wall = int((time.perf_counter() - start) * 1000)
                peak = max((ts.max_line_red for ts in record.timeline), default=0)
                ratio = record.win_time / n if record.win_time is not None else None
                rows.append(
                    SweepRow(n, spec.schedule.render(), maker, breaker, seed,
                             record.win_time, ratio, peak, wall, record=record)
                )
    return rows


SWEEP_HEADER = ["n", "schedule", "maker", "breaker", "seed", "win_time", "ratio", "max_L", "wall_ms"]


def rows_to_csv(rows: list[SweepRow]) -> str:
    buf = io.StringIO()
    writer = csv.writer(buf, lineterminator="\n")
    writer.writerow(SWEEP_HEADER)
    for row in rows:
        writer.writerow([
            row.n,
            row.schedule,
            row.maker,
            row.breaker,
            row.seed,
            "" if row.win_time is None else row.win_time,
            "" if row.ratio is None else str(row.ratio),
            "" if row.max_line_red is None else row.max_line_red,
            row.wall_ms,
        ])
    return buf.getvalue()


def parse_sweep_spec(text: str) -> SweepSpec:
    """Line-oriented key=value format; `matchup=` may repeat.

    Keys: n (comma list), matchup (maker:breaker), seeds, cap,
    thresholds (comma list, optional), schedule (optional, default identity).
    """
    ns: list[int] = []
    matchups: list[tuple[str, str]] = []
    seeds = cap = None
    thresholds: list[int] = []
    schedule = Schedule.identity()
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.strip()
        if not line or line.startswith("#"):
            continue
        if "=" not in line:
            raise ValueError(f"line {lineno}: expected key=value, got {raw!r}")
        key, value = line.split("=", 1)
        key, value = key.strip(), value.strip()
        if key == "n":
            ns = [int(v) for v in value.split(",")]
        elif key == "matchup":
            maker, _, breaker = value.partition(":")
            if not breaker:
                raise ValueError(f"line {lineno}: matchup must be maker:breaker")
            matchups.append((maker, breaker))
        elif key == "seeds":
            seeds = int(value)
        elif key == "cap":
            cap = int(value)
        elif key == "thresholds":
            thresholds = [int(v) for v in value.split(",")] if value else []
        elif key == "schedule":
            schedule = Schedule.parse(value)
        else:
            raise ValueError(f"line {lineno}: unknown key {key!r}")
    if not ns or not matchups or seeds is None or cap is None:
        raise ValueError("sweep spec needs n, matchup, seeds and cap")
    return SweepSpec(ns, matchups, seeds, cap, thresholds, schedule)

"""Sparse unbounded board, turn schedules, move application and run detection.

The game is played on the integer lattice. Red moves on odd turns, Blue on
even turns, and the number of points claimed on turn t is given by a
per-parity affine schedule. Win detection is incremental: maximal
monochromatic runs are merged as points are claimed, so checking for an
n-in-a-row is O(1) per query.
"""

from __future__ import annotations

import re
from dataclasses import dataclass, field
from enum import Enum
from typing import Iterator, NamedTuple, Optional


class Point(NamedTuple):
    x: int
    y: int


class PlayerColor(Enum):
    RED = "R"
    BLUE = "B"

    def other(self) -> "PlayerColor":
        return PlayerColor.BLUE if self is PlayerColor.RED else PlayerColor.RED


class LineDir4(Enum):
    """The four directions a winning run can point in (one per line class)."""

    E = (1, 0)
    N = (0, 1)
    NE = (1, 1)
    SE = (1, -1)

    @property
    def step(self) -> Point:
        return Point(*self.value)


# Tie-break order for segments: E < N < NE < SE.
DIR_ORDER = {d: i for i, d in enumerate(LineDir4)}


class Segment(NamedTuple):
    start: Point
    dir: LineDir4
    length: int

    def points(self) -> list[Point]:
        dx, dy = self.dir.value
        return [Point(self.start.x + k * dx, self.start.y + k * dy) for k in range(self.length)]

    def sort_key(self) -> tuple[int, int, int]:
        return (self.start.x, self.start.y, DIR_ORDER[self.dir])


class MoveError(Exception):
    """Base for illegal-move rejections; `code` is the wire-level error name."""

    code = "bad_request"
    point: Optional[Point] = None


class OccupiedPointError(MoveError):
    code = "occupied"

    def __init__(self, point: Point):
        super().__init__(f"point {point.x},{point.y} is already claimed")
        self.point = point


class WrongCountError(MoveError):
    code = "wrong_count"

    def __init__(self, expected: int, given: int):
        super().__init__(f"expected {expected} points, got {given}")
        self.expected = expected
        self.given = given


class DuplicatePointError(MoveError):
    code = "duplicate"

    def __init__(self, point: Point):
        super().__init__(f"point {point.x},{point.y} appears twice in one move")
        self.point = point


class GameOverError(MoveError):
    code = "game_over"

    def __init__(self) -> None:
        super().__init__("the game is already over")


@dataclass(frozen=True)
class Schedule:
    """Per-parity affine quota rule: quota(2t) = even_a*t + even_b,
    quota(2t+1) = odd_a*t + odd_c."""

    even_a: int
    even_b: int
    odd_a: int
    odd_c: int

    def __post_init__(self) -> None:
        for v in (self.even_a, self.even_b, self.odd_a, self.odd_c):
            if v < 0:
                raise ValueError("schedule coefficients must be non-negative")
        if self.odd_a == 0 and self.odd_c == 0:
            raise ValueError("Red would never claim a point; the game could not end")

    def quota(self, t: int) -> int:
        if t < 1:
            raise ValueError(f"turn index must be >= 1, got {t}")
        if t % 2 == 0:
            return self.even_a * (t // 2) + self.even_b
        return self.odd_a * ((t - 1) // 2) + self.odd_c

    @classmethod
    def identity(cls) -> "Schedule":
        """quota(t) = t: the escalating game this package is about."""
        return cls(2, 0, 2, 1)

    @classmethod
    def constant(cls, k: int) -> "Schedule":
        """quota(t) = k; k = 1 is the classical one-point-per-turn game."""
        return cls(0, k, 0, k)

    @classmethod
    def parse(cls, text: str) -> "Schedule":
        """Accepts 'identity', 'const:<k>', or 'even_a,even_b,odd_a,odd_c'."""
        text = text.strip()
        if text == "identity":
            return cls.identity()
        if text.startswith("const:"):
            return cls.constant(int(text.split(":", 1)[1]))
        parts = text.split(",")
        if len(parts) != 4:
            raise ValueError(f"cannot parse schedule {text!r}")
        return cls(*(int(p) for p in parts))

    def render(self) -> str:
        return f"{self.even_a},{self.even_b},{self.odd_a},{self.odd_c}"


class GameMode(Enum):
    MAKER_BREAKER = "MB"
    TWO_WINNER = "TW"


@dataclass(frozen=True)
class GameConfig:
    n: int
    schedule: Schedule = field(default_factory=Schedule.identity)
    mode: GameMode = GameMode.MAKER_BREAKER

    def __post_init__(self) -> None:
        if self.n < 1:
            raise ValueError(f"run length n must be >= 1, got {self.n}")


@dataclass(frozen=True)
class Move:
    turn: int
    player: PlayerColor
    points: tuple[Point, ...]


class GameState:
    """Mutable game position. `t` is the next turn to be played, starting at 1.

    Claims are never retracted, so per-direction monochromatic runs only ever
    merge; run lengths are stored at both endpoints of each maximal run and
    runs reaching length n are tracked in a small registry per color.
    """

    def __init__(self, config: GameConfig):
        self.config = config
        self.cells: dict[Point, PlayerColor] = {}
        self.t = 1
        self.history: list[Move] = []
        self.winner: Optional[tuple[PlayerColor, int, Segment]] = None
        self.bounds: Optional[tuple[int, int, int, int]] = None  # minx, miny, maxx, maxy
        self._runs: dict[tuple[PlayerColor, LineDir4], dict[Point, int]] = {
            (c, d): {} for c in PlayerColor for d in LineDir4
        }
        # (dir, run start) -> run length, for runs of length >= n only
        self._win_runs: dict[PlayerColor, dict[tuple[LineDir4, Point], int]] = {
            c: {} for c in PlayerColor
        }

    def color_to_move(self) -> PlayerColor:
        return PlayerColor.RED if self.t % 2 == 1 else PlayerColor.BLUE

    def quota_now(self) -> int:
        return self.config.schedule.quota(self.t)

    def is_over(self) -> bool:
        return self.winner is not None

    def _claim(self, p: Point, color: PlayerColor) -> None:
        self.cells[p] = color
        if self.bounds is None:
            self.bounds = (p.x, p.y, p.x, p.y)
        else:
            minx, miny, maxx, maxy = self.bounds
            self.bounds = (min(minx, p.x), min(miny, p.y), max(maxx, p.x), max(maxy, p.y))
        n = self.config.n
        for d in LineDir4:
            dx, dy = d.value
            runs = self._runs[(color, d)]
            left = runs.get(Point(p.x - dx, p.y - dy), 0)
            right = runs.get(Point(p.x + dx, p.y + dy), 0)
            merged = left + right + 1
            start = Point(p.x - left * dx, p.y - left * dy)
            end = Point(p.x + right * dx, p.y + right * dy)
            runs[start] = merged
            runs[end] = merged
            if merged >= n:
                reg = self._win_runs[color]
                if right >= n:
                    reg.pop((d, Point(p.x + dx, p.y + dy)), None)
                reg[(d, start)] = merged

    def stored_run_length(self, p: Point, color: PlayerColor, d: LineDir4) -> int:
        """Length of the maximal `color` run through p, from the endpoint store.

        p must be claimed by `color`; walks to an endpoint first.
        """
        runs = self._runs[(color, d)]
        dx, dy = d.value
        q = p
        while self.cells.get(Point(q.x - dx, q.y - dy)) is color:
            q = Point(q.x - dx, q.y - dy)
        return runs.get(q, 0)

    def copy(self) -> "GameState":
        dup = GameState(self.config)
        dup.cells = dict(self.cells)
        dup.t = self.t
        dup.history = list(self.history)
        dup.winner = self.winner
        dup.bounds = self.bounds
        dup._runs = {k: dict(v) for k, v in self._runs.items()}
        dup._win_runs = {c: dict(v) for c, v in self._win_runs.items()}
        return dup


def quota(schedule: Schedule, t: int) -> int:
    return schedule.quota(t)


def cumulative_maker_quota(schedule: Schedule, t: int) -> int:
    """Total points Red has been entitled to claim on turns 1..t."""
    if t < 1:
        raise ValueError(f"turn index must be >= 1, got {t}")
    return sum(schedule.quota(s) for s in range(1, t + 1, 2))


def has_win(state: GameState, color: PlayerColor) -> Optional[Segment]:
    """Least length-n fully-`color` segment, or None. O(#winning runs)."""
    reg = state._win_runs[color]
    if not reg:
        return None
    n = state.config.n
    best = min((Segment(start, d, n) for (d, start) in reg), key=Segment.sort_key)
    return best


def brute_force_win_scan(state: GameState, color: PlayerColor) -> Optional[Segment]:
    """Exhaustive window scan; oracle for has_win. Same least-segment tie-break."""
    n = state.config.n
    mine = {p for p, c in state.cells.items() if c is color}
    best: Optional[Segment] = None
    for p in mine:
        for d in LineDir4:
            dx, dy = d.value
            for off in range(n):
                sx, sy = p.x - off * dx, p.y - off * dy
                if all(Point(sx + k * dx, sy + k * dy) in mine for k in range(n)):
                    seg = Segment(Point(sx, sy), d, n)
                    if best is None or seg.sort_key() < best.sort_key():
                        best = seg
    return best


def apply_move(state: GameState, points: list[Point]) -> GameState:
    """Validate and apply one full turn. Mutates and returns `state`.

    Validation happens before any mutation, so a rejected move leaves the
    state untouched.
    """
    if state.winner is not None:
        raise GameOverError()
    expected = state.config.schedule.quota(state.t)
    pts = [Point(*p) for p in points]
    if len(pts) != expected:
        raise WrongCountError(expected, len(pts))
    seen: set[Point] = set()
    for p in pts:
        if p in seen:
            raise DuplicatePointError(p)
        seen.add(p)
        if p in state.cells:
            raise OccupiedPointError(p)

    color = state.color_to_move()
    for p in pts:
        state._claim(p, color)
    turn = state.t
    state.history.append(Move(turn, color, tuple(pts)))
    state.t += 1
    # In Maker-Breaker mode Blue may occupy n-in-a-row; it means nothing.
    if not (state.config.mode is GameMode.MAKER_BREAKER and color is PlayerColor.BLUE):
        seg = has_win(state, color)
        if seg is not None:
            state.winner = (color, turn, seg)
    return state


_HEADER_RE = re.compile(r"^n=(\d+) schedule=(\S+) mode=(MB|TW)$")


def write_transcript(state: GameState) -> str:
    """Line-oriented transcript: header then one line per played turn."""
    cfg = state.config
    lines = [f"n={cfg.n} schedule={cfg.schedule.render()} mode={cfg.mode.value}"]
    for mv in state.history:
        coords = " ".join(f"{p.x},{p.y}" for p in mv.points)
        lines.append(f"t={mv.turn} {coords}".rstrip())
    return "\n".join(lines) + "\n"


def read_transcript(text: str) -> GameState:
    """Parse and replay a transcript; every move is re-validated."""
    lines = [ln for ln in text.splitlines() if ln.strip()]
    if not lines:
        raise ValueError("empty transcript")
    m = _HEADER_RE.match(lines[0])
    if m is None:
        raise ValueError(f"bad transcript header: {lines[0]!r}")
    config = GameConfig(int(m.group(1)), Schedule.parse(m.group(2)), GameMode(m.group(3)))
    state = GameState(config)
    for ln in lines[1:]:
        fields = ln.split()
        if not fields or not fields[0].startswith("t="):
            raise ValueError(f"bad transcript line: {ln!r}")
        turn = int(fields[0][2:])
        if turn != state.t:
            raise ValueError(f"turn {turn} out of order (expected {state.t})")
        pts = []
        for tok in fields[1:]:
            xs, ys = tok.split(",")
            pts.append(Point(int(xs), int(ys)))
        apply_move(state, pts)
    return state


def replay_moves(config: GameConfig, moves: list[Move]) -> GameState:
    state = GameState(config)
    for mv in moves:
        apply_move(state, list(mv.points))
    return state

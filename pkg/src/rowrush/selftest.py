"""Built-in consistency suites behind `rowrush selftest`.

Each suite pits an implementation against an independent re-derivation
(recurrences, exhaustive scans, brute-force window checks) and reports
pass/fail; the CLI prints one line per suite.
"""

from __future__ import annotations

import random
from collections import Counter
from typing import Callable

import rowrush.strategies as strategies
from rowrush.board import (
    GameConfig,
    GameMode,
    GameState,
    LineDir4,
    PlayerColor,
    Point,
    Schedule,
    apply_move,
    brute_force_win_scan,
    has_win,
)
from rowrush.cover import (
    LedgerCorruptionError,
    LineId,
    containing_line,
    line_points,
    lines_through,
    spoil_targets,
)
from rowrush.board import Segment


def check_compass_window() -> tuple[bool, str]:
    """Every 11-point window in each of the 4 directions sees each compass
    value with multiplicity 1 or 2."""
    for d in LineDir4:
        dx, dy = d.value
        for r in range(11):
            window = [strategies.compass_of(Point(r + k * dx, k * dy)) for k in range(11)]
            counts = Counter(window)
            if set(counts) != set(strategies.Direction8):
                return False, f"direction {d.name} phase {r}: missing compass values"
            if any(c < 1 or c > 2 for c in counts.values()):
                return False, f"direction {d.name} phase {r}: multiplicity out of range"
    return True, "44 windows checked"


# Independent copy of the defining base row; deliberately not imported from
# the strategies module so that a mutated implementation cannot agree with it.
_REFERENCE_ROW = tuple(
    strategies.Direction8[name]
    for name in ("N", "NE", "E", "SE", "S", "SW", "W", "NW", "N", "NE", "E")
)


def check_compass_recurrence() -> tuple[bool, str]:
    """Closed form agrees with the defining rules on [-100,100]^2: the explicit
    base row, period 11 along rows, and the shift-by-3 row recurrence."""

    def by_recurrence(x: int, y: int):
        while y > 0:
            x -= 3
            y -= 1
        while y < 0:
            x += 3
            y += 1
        return _REFERENCE_ROW[x % 11]

    for x in range(-100, 101):
        for y in range(-100, 101):
            if strategies.compass_of(Point(x, y)) is not by_recurrence(x, y):
                return False, f"mismatch at ({x},{y})"
    return True, "40401 points checked"


def check_cover_degree(samples: int = 10_000, seed: int = 1) -> tuple[bool, str]:
    """Random points lie on exactly 8 family lines, each of which contains them."""
    rng = random.Random(seed)
    for _ in range(samples):
        n = rng.choice([1, 2, 3, 4, 10, 57])
        p = Point(rng.randint(-10_000, 10_000), rng.randint(-10_000, 10_000))
        ids = lines_through(p, n)
        if len(set(ids)) != 8:
            return False, f"{p} has degree {len(set(ids))} at n={n}"
        for lid in ids:
            if p not in line_points(lid, n):
                return False, f"{lid.text()} does not contain {p} at n={n}"
    return True, f"{samples} points checked"


def check_cover_containment(samples: int = 10_000, seed: int = 2) -> tuple[bool, str]:
    """Random length-n segments fit inside the line containing_line names."""
    rng = random.Random(seed)
    for _ in range(samples):
        n = rng.choice([4, 10, 57])
        d = rng.choice(list(LineDir4))
        seg = Segment(Point(rng.randint(-5000, 5000), rng.randint(-5000, 5000)), d, n)
        lid = containing_line(seg, n)
        pts = set(line_points(lid, n))
        if not all(p in pts for p in seg.points()):
            return False, f"{lid.text()} misses part of {seg}"
    return True, f"{samples} segments checked"


def check_spoiling(samples: int = 10_000, seed: int = 3) -> tuple[bool, str]:
    """After claiming the blocking points, every n-window of the line has Blue."""
    rng = random.Random(seed)
    done = 0
    while done < samples:
        n = rng.choice([2, 3, 4, 6, 9, 12])
        lid = LineId(rng.choice("FGHI"), rng.randint(-5, 5), rng.randint(-5, 5))
        colors = [rng.choice([None, PlayerColor.RED, PlayerColor.BLUE]) for _ in range(2 * n)]
        windows = [range(a, a + n) for a in range(n + 1)]
        if any(all(colors[i] is PlayerColor.RED for i in w) for w in windows):
            continue  # not a good line; precondition excludes it
        pts = line_points(lid, n)
        state = GameState(GameConfig(n, Schedule.identity(), GameMode.MAKER_BREAKER))
        for i, c in enumerate(colors):
            if c is not None:
                state._claim(pts[i], c)
        try:
            targets = spoil_targets(lid, state)
        except LedgerCorruptionError:
            return False, f"good line {lid.text()} rejected (n={n})"
        for p in targets:
            if p in state.cells:
                return False, f"spoil target {p} already claimed"
            state._claim(p, PlayerColor.BLUE)
        for w in windows:
            if not any(state.cells.get(pts[i]) is PlayerColor.BLUE for i in w):
                return False, f"window {w.start}..{w.stop - 1} of {lid.text()} unblocked"
        done += 1
    return True, f"{samples} colorings checked"


def check_win_oracle(games: int = 1000, seed: int = 4) -> tuple[bool, str]:
    """Incremental win detection matches the exhaustive scan on random games."""
    rng = random.Random(seed)
    for g in range(games):
        n = rng.randint(2, 7)
        state = GameState(GameConfig(n, Schedule.identity(), GameMode.MAKER_BREAKER))
        span = 10
        for _ in range(rng.randint(0, 8)):
            if state.winner is not None:
                break
            q = state.quota_now()
            pts: set[Point] = set()
            while len(pts) < q:
                p = Point(rng.randint(-span, span), rng.randint(-span, span))
                if p not in state.cells and p not in pts:
                    pts.add(p)
            apply_move(state, sorted(pts))
        for color in PlayerColor:
            if has_win(state, color) != brute_force_win_scan(state, color):
                return False, f"disagreement on game {g} for {color.name}"
    return True, f"{games} games checked"


SUITES: list[tuple[str, Callable[[], tuple[bool, str]]]] = [
    ("compass-window", check_compass_window),
    ("compass-recurrence", check_compass_recurrence),
    ("cover-degree", check_cover_degree),
    ("cover-containment", check_cover_containment),
    ("spoiling", check_spoiling),
    ("win-oracle", check_win_oracle),
]


def run_all(report: Callable[[str], None] = print) -> bool:
    ok = True
    for name, fn in SUITES:
        passed, detail = fn()
        report(f"{'pass' if passed else 'FAIL'} {name} ({detail})")
        ok = ok and passed
    return ok

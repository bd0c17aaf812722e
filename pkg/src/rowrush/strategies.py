"""Move-selection strategies for both sides.

A strategy is a callable (state, quota, rng) -> list of points that are
distinct, unclaimed and exactly quota in number. Everything here is
deterministic given that triple: tie-breaks are lexicographic or textual,
and the only randomness comes from the caller-supplied splitmix64 stream.
"""

from __future__ import annotations

from enum import Enum
from typing import Callable, Iterable, Iterator, Optional

from rowrush.board import GameState, LineDir4, PlayerColor, Point
from rowrush.cover import LineLedger, spoil_targets


class Direction8(Enum):
    N = (0, 1)
    NE = (1, 1)
    E = (1, 0)
    SE = (1, -1)
    S = (0, -1)
    SW = (-1, -1)
    W = (-1, 0)
    NW = (-1, 1)

    @property
    def step(self) -> Point:
        return Point(*self.value)

    def opposite(self) -> "Direction8":
        dx, dy = self.value
        return Direction8((-dx, -dy))


# One period of the compass assignment along a row; rows above shift left by
# COMPASS_ROW_SHIFT. The multiset has N, NE, E twice and the rest once, so
# every 11 consecutive points in any of the four line directions see each
# compass value once or twice.
COMPASS_PERIOD = 11
COMPASS_ROW_SHIFT = 3
COMPASS_BASE: tuple[Direction8, ...] = (
    Direction8.N,
    Direction8.NE,
    Direction8.E,
    Direction8.SE,
    Direction8.S,
    Direction8.SW,
    Direction8.W,
    Direction8.NW,
    Direction8.N,
    Direction8.NE,
    Direction8.E,
)


def compass_of(p: Point) -> Direction8:
    """Compass direction assigned to a lattice point (closed form)."""
    return COMPASS_BASE[(p.x - COMPASS_ROW_SHIFT * p.y) % COMPASS_PERIOD]


MASK64 = (1 << 64) - 1


class SplitMix64:
    """Tiny portable PRNG; identical seeds give identical streams everywhere."""

    __slots__ = ("state",)

    def __init__(self, seed: int):
        self.state = seed & MASK64

    def next(self) -> int:
        self.state = (self.state + 0x9E3779B97F4A7C15) & MASK64
        z = self.state
        z = ((z ^ (z >> 30)) * 0xBF58476D1CE4E5B9) & MASK64
        z = ((z ^ (z >> 27)) * 0x94D049BB133111EB) & MASK64
        return z ^ (z >> 31)

    def below(self, bound: int) -> int:
        return self.next() % bound


def spiral_points() -> Iterator[Point]:
    """Square spiral around the origin: (0,0),(1,0),(1,1),(0,1),(-1,1),..."""
    x = y = 0
    yield Point(0, 0)
    leg = 1
    while True:
        for _ in range(leg):
            x += 1
            yield Point(x, y)
        for _ in range(leg):
            y += 1
            yield Point(x, y)
        leg += 1
        for _ in range(leg):
            x -= 1
            yield Point(x, y)
        for _ in range(leg):
            y -= 1
            yield Point(x, y)
        leg += 1


def free_spiral(state: GameState, pending: Iterable[Point]) -> Iterator[Point]:
    pend = set(pending)
    cells = state.cells
    for p in spiral_points():
        if p not in cells and p not in pend:
            yield p


def arbitrary_fill(state: GameState, count: int, pending: Iterable[Point] = ()) -> list[Point]:
    """First `count` unclaimed non-pending points of the spiral enumeration."""
    if count < 0:
        raise ValueError("count must be >= 0")
    it = free_spiral(state, pending)
    return [next(it) for _ in range(count)]


def next_available(
    state: GameState, p: Point, d: Direction8, pending: Iterable[Point] = ()
) -> Point:
    """First point beyond p in direction d that is neither claimed nor pending."""
    pend = pending if isinstance(pending, set) else set(pending)
    dx, dy = d.value
    q = Point(p.x + dx, p.y + dy)
    while q in state.cells or q in pend:
        q = Point(q.x + dx, q.y + dy)
    return q


def direction_breaker(state: GameState, quota: int, rng: SplitMix64) -> list[Point]:
    """Answer each point of Red's last move one step out in its compass direction.

    Responses follow Red's declared order; spare quota is spiral fill, and if
    quota is short (possible under lopsided schedules) only a prefix is answered.
    """
    last = state.history[-1] if state.history else None
    maker_points = list(last.points) if last is not None and last.player is PlayerColor.RED else []
    picks: list[Point] = []
    pending: set[Point] = set()
    for v in maker_points[:quota]:
        q = next_available(state, v, compass_of(v), pending)
        picks.append(q)
        pending.add(q)
    if len(picks) < quota:
        picks.extend(arbitrary_fill(state, quota - len(picks), pending))
    return picks


def line_spoil_breaker(
    state: GameState, ledger: LineLedger, quota: int, rng: SplitMix64
) -> list[Point]:
    """Block the touched lines carrying the most Red, busiest first.

    Each block ("spoil") claims the one or two points after which no n-window
    of that line can ever be fully Red; lines already blocked by earlier Blue
    points are marked spoiled for free. Leftover quota is spiral fill.
    """
    picks: list[Point] = []
    pending: set[Point] = set()
    remaining = quota
    while True:
        lid = ledger.busiest_good_line()
        if lid is None:
            break
        targets = spoil_targets(lid, state, pending)
        if not targets:
            ledger.mark_spoiled(lid)
            continue
        if len(targets) > remaining:
            break
        picks.extend(targets)
        pending.update(targets)
        remaining -= len(targets)
        ledger.mark_spoiled(lid)
    if remaining:
        picks.extend(arbitrary_fill(state, remaining, pending))
    return picks


def _virgin_row(state: GameState, n: int) -> int:
    _, _, _, maxy = state.bounds if state.bounds is not None else (0, 0, 0, 0)
    return maxy + 4 * n + 1


def sprint_maker(state: GameState, quota: int, rng: SplitMix64) -> list[Point]:
    """Play far from everything; claim a whole winning row the moment quota >= n."""
    n = state.config.n
    row = _virgin_row(state, n)
    if quota >= n:
        picks = [Point(x, row) for x in range(n)]
        if quota > n:
            picks.extend(arbitrary_fill(state, quota - n, picks))
        return picks
    return [Point(x, row) for x in range(quota)]


def random_maker(state: GameState, quota: int, rng: SplitMix64) -> list[Point]:
    """Each pick: uniform choice among the 50 lowest free spiral points."""
    picks: list[Point] = []
    pending: set[Point] = set()
    pool_size = 50
    it = free_spiral(state, pending)
    pool = [next(it) for _ in range(pool_size + quota)]
    taken = 0
    for _ in range(quota):
        live = [p for p in pool if p not in pending][: pool_size]
        choice = live[rng.below(len(live))]
        picks.append(choice)
        pending.add(choice)
        taken += 1
    return picks


def greedy_maker(state: GameState, quota: int, rng: SplitMix64) -> list[Point]:
    """Extend the longest Red run available, one point at a time.

    Candidates are free cells next to a Red point ((0,0) seeds an empty
    board). Score = best run length the pick would create; ties prefer the
    candidate whose best-direction n-window holds the fewest Blue points,
    then the lexicographically least cell. Runs out of candidates -> spiral fill.
    """
    n = state.config.n
    cells = dict(state.cells)
    red_runs = {d: dict(state._runs[(PlayerColor.RED, d)]) for d in LineDir4}

    def run_before(p: Point, d: LineDir4) -> tuple[int, int]:
        dx, dy = d.value
        px, py = p
        runs = red_runs[d]
        return runs.get((px - dx, py - dy), 0), runs.get((px + dx, py + dy), 0)

    def score(p: Point) -> int:
        best = 0
        for d in LineDir4:
            left, right = run_before(p, d)
            if left + right > best:
                best = left + right
        return best + 1

    def claim_red(p: Point) -> None:
        cells[p] = PlayerColor.RED
        for d in LineDir4:
            dx, dy = d.value
            left, right = run_before(p, d)
            merged = left + right + 1
            runs = red_runs[d]
            runs[Point(p.x - left * dx, p.y - left * dy)] = merged
            runs[Point(p.x + right * dx, p.y + right * dy)] = merged

    neighbors = [(dx, dy) for dx in (-1, 0, 1) for dy in (-1, 0, 1) if (dx, dy) != (0, 0)]
    buckets: dict[int, set[Point]] = {}
    scores: dict[Point, int] = {}

    def set_score(p: Point) -> None:
        old = scores.get(p)
        if old is not None:
            buckets[old].discard(p)
            if not buckets[old]:
                del buckets[old]
        s = score(p)
        scores[p] = s
        buckets.setdefault(s, set()).add(p)

    def drop(p: Point) -> None:
        old = scores.pop(p, None)
        if old is not None:
            buckets[old].discard(p)
            if not buckets[old]:
                del buckets[old]

    def add_candidates_around(p: Point) -> None:
        for dx, dy in neighbors:
            q = Point(p.x + dx, p.y + dy)
            if q not in cells and q not in scores:
                set_score(q)

    reds = [p for p, c in cells.items() if c is PlayerColor.RED]
    for p in reds:
        add_candidates_around(p)
    if not reds and Point(0, 0) not in cells:
        set_score(Point(0, 0))

    blue_cache: dict[tuple[Point, LineDir4], int] = {}
    blue = PlayerColor.BLUE

    def blue_along(p: Point, d: LineDir4) -> int:
        # Blue points in the emptiest n-window through p along d; Blue cells
        # never change during our own turn, so this caches cleanly.
        cached = blue_cache.get((p, d))
        if cached is not None:
            return cached
        dx, dy = d.value
        px, py = p
        get = cells.get
        ray = [
            1 if get((px + k * dx, py + k * dy)) is blue else 0
            for k in range(-(n - 1), n)
        ]
        window = sum(ray[:n])
        local = window
        for a in range(1, n):
            window += ray[a + n - 1] - ray[a - 1]
            if window < local:
                local = window
        blue_cache[(p, d)] = local
        return local

    def blue_tiebreak(p: Point, s: int) -> int:
        # fewest Blue points over the n-windows through p in the best directions
        best = None
        for d in LineDir4:
            left, right = run_before(p, d)
            if left + right + 1 != s:
                continue
            local = blue_along(p, d)
            if best is None or local < best:
                best = local
        return best if best is not None else 0

    picks: list[Point] = []
    for _ in range(quota):
        if not buckets:
            fills = arbitrary_fill(state, quota - len(picks), picks)
            picks.extend(fills)
            break
        top = max(buckets)
        tied = buckets[top]
        if len(tied) == 1:
            choice = next(iter(tied))
        else:
            # lex order + early exit at zero blues == min by (blues, x, y)
            choice = None
            best_blue = None
            for p in sorted(tied):
                b = blue_tiebreak(p, top)
                if best_blue is None or b < best_blue:
                    best_blue, choice = b, p
                    if b == 0:
                        break
        picks.append(choice)
        drop(choice)
        # endpoints whose runs just grew get fresh scores
        affected = []
        for d in LineDir4:
            dx, dy = d.value
            left, right = run_before(choice, d)
            affected.append(Point(choice.x - (left + 1) * dx, choice.y - (left + 1) * dy))
            affected.append(Point(choice.x + (right + 1) * dx, choice.y + (right + 1) * dy))
        claim_red(choice)
        add_candidates_around(choice)
        for q in affected:
            if q in scores:
                set_score(q)
    return picks


def fill_strategy(state: GameState, quota: int, rng: SplitMix64) -> list[Point]:
    return arbitrary_fill(state, quota)


StrategyFn = Callable[[GameState, int, SplitMix64], list[Point]]

MAKER_NAMES = ("sprint", "greedy", "random", "fill")
BREAKER_NAMES = ("direction", "line_spoil", "fill")


def make_maker(name: str) -> StrategyFn:
    table: dict[str, StrategyFn] = {
        "sprint": sprint_maker,
        "greedy": greedy_maker,
        "random": random_maker,
        "fill": fill_strategy,
    }
    if name not in table:
        raise ValueError(f"unknown maker strategy {name!r} (choose from {', '.join(MAKER_NAMES)})")
    return table[name]


def make_breaker(name: str, ledger: Optional[LineLedger] = None) -> StrategyFn:
    if name == "direction":
        return direction_breaker
    if name == "fill":
        return fill_strategy
    if name == "line_spoil":
        if ledger is None:
            raise ValueError("line_spoil needs a ledger")
        return lambda state, quota, rng: line_spoil_breaker(state, ledger, quota, rng)
    raise ValueError(f"unknown breaker strategy {name!r} (choose from {', '.join(BREAKER_NAMES)})")

"""Plane cover by length-2n lines in four directions, with stride n.

Family letters: F = horizontal rows, G = vertical columns, H = rising
diagonals, I = falling diagonals. Line (fam, i, j) occupies parameters
k = j*n .. (j+2)*n - 1 along its axis, so consecutive j overlap by n and
every lattice point lies on exactly 2 lines per direction (8 total).
Any n-in-a-row segment fits inside at least one family line.

The ledger tracks, per touched line, how many Red points it holds and
whether Blue has already blocked it ("spoiled"). Blocked lines can never
again contribute a fully-Red n-window.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Iterable, NamedTuple, Optional

from rowrush.board import GameState, LineDir4, PlayerColor, Point, Segment

FAMILY_TO_DIR = {"F": LineDir4.E, "G": LineDir4.N, "H": LineDir4.NE, "I": LineDir4.SE}
DIR_TO_FAMILY = {d: f for f, d in FAMILY_TO_DIR.items()}


class LineId(NamedTuple):
    family: str  # 'F', 'G', 'H' or 'I'
    i: int
    j: int

    @property
    def dir(self) -> LineDir4:
        return FAMILY_TO_DIR[self.family]

    def text(self) -> str:
        return f"{self.family}:{self.i}:{self.j}"

    @classmethod
    def parse(cls, text: str) -> "LineId":
        fam, i, j = text.split(":")
        if fam not in FAMILY_TO_DIR:
            raise ValueError(f"unknown line family {fam!r}")
        return cls(fam, int(i), int(j))


class LedgerCorruptionError(Exception):
    """A supposedly good line has a fully-Red half; the ledger lied."""


def line_point(lid: LineId, n: int, position: int) -> Point:
    """Point at 1-based `position` along the line; parameter k = j*n + position - 1."""
    k = lid.j * n + position - 1
    if lid.family == "F":
        return Point(k, lid.i)
    if lid.family == "G":
        return Point(lid.i, k)
    if lid.family == "H":
        return Point(lid.i + k, k)
    return Point(lid.i + k, -k)


def line_points(lid: LineId, n: int) -> list[Point]:
    """The 2n points of the line, in increasing parameter order."""
    return [line_point(lid, n, pos) for pos in range(1, 2 * n + 1)]


def lines_through(p: Point, n: int) -> tuple[LineId, ...]:
    """The 8 family lines containing p: two per direction."""
    jf = p.x // n
    jg = p.y // n
    jh = p.y // n
    ji = (-p.y) // n
    return (
        LineId("F", p.y, jf - 1),
        LineId("F", p.y, jf),
        LineId("G", p.x, jg - 1),
        LineId("G", p.x, jg),
        LineId("H", p.x - p.y, jh - 1),
        LineId("H", p.x - p.y, jh),
        LineId("I", p.x + p.y, ji - 1),
        LineId("I", p.x + p.y, ji),
    )


def containing_line(seg: Segment, n: int) -> LineId:
    """A family line containing the length-n segment; smallest qualifying j."""
    if seg.length != n:
        raise ValueError(f"expected a length-{n} segment, got length {seg.length}")
    sx, sy = seg.start
    if seg.dir is LineDir4.E:
        fam, i, k0 = "F", sy, sx
    elif seg.dir is LineDir4.N:
        fam, i, k0 = "G", sx, sy
    elif seg.dir is LineDir4.NE:
        fam, i, k0 = "H", sx - sy, sy
    else:
        fam, i, k0 = "I", sx + sy, -sy
    j = k0 // n
    # The window [k0, k0+n-1] also fits the previous line exactly when it
    # starts on a stride boundary.
    if k0 % n == 0:
        j -= 1
    return LineId(fam, i, j)


def spoil_targets(
    lid: LineId, state: GameState, pending: Iterable[Point] = ()
) -> list[Point]:
    """Blue points that block every n-window of a good line.

    x = last non-Red position in the first half, y = first non-Red position
    in the second half; positions already Blue (or pending Blue) need no new
    claim, so 0, 1 or 2 points are returned.
    """
    n = state.config.n
    pending = set(pending)
    cells = state.cells

    def pick(positions) -> int:
        for pos in positions:
            if cells.get(line_point(lid, n, pos)) is not PlayerColor.RED:
                return pos
        raise LedgerCorruptionError(
            f"line {lid.text()} has a fully-Red half; it was never good"
        )

    x_pos = pick(range(n, 0, -1))
    y_pos = pick(range(n + 1, 2 * n + 1))
    targets = []
    for pos in (x_pos, y_pos):
        p = line_point(lid, n, pos)
        if p not in cells and p not in pending:
            targets.append(p)
    return targets


@dataclass
class LineRecord:
    __slots__ = ("red_count", "spoiled")
    red_count: int
    spoiled: bool


class LineLedger:
    """Sparse per-line records, bucketed by red count for fast maxima.

    Only lines with red_count > 0 or spoiled = True are materialized.
    Buckets index good lines only; spoiled lines keep counting Red points
    but never appear in any bucket again.
    """

    def __init__(self, n: int):
        self.n = n
        self.records: dict[LineId, LineRecord] = {}
        self._buckets: dict[int, set[LineId]] = {}
        self._max_red = 0

    def _bucket_add(self, count: int, lid: LineId) -> None:
        self._buckets.setdefault(count, set()).add(lid)
        if count > self._max_red:
            self._max_red = count

    def _bucket_remove(self, count: int, lid: LineId) -> None:
        bucket = self._buckets.get(count)
        if bucket is not None:
            bucket.discard(lid)
            if not bucket:
                del self._buckets[count]
                while self._max_red > 0 and self._max_red not in self._buckets:
                    self._max_red -= 1

    def on_claim(self, p: Point, color: PlayerColor) -> None:
        """Account for a newly claimed point. Blue claims are a no-op."""
        if color is not PlayerColor.RED:
            return
        for lid in lines_through(p, self.n):
            rec = self.records.get(lid)
            if rec is None:
                rec = LineRecord(0, False)
                self.records[lid] = rec
            if not rec.spoiled:
                if rec.red_count > 0:
                    self._bucket_remove(rec.red_count, lid)
                self._bucket_add(rec.red_count + 1, lid)
            rec.red_count += 1

    def mark_spoiled(self, lid: LineId) -> None:
        rec = self.records.get(lid)
        if rec is None:
            rec = LineRecord(0, False)
            self.records[lid] = rec
        if rec.spoiled:
            return
        if rec.red_count > 0:
            self._bucket_remove(rec.red_count, lid)
        rec.spoiled = True

    def is_spoiled(self, lid: LineId) -> bool:
        rec = self.records.get(lid)
        return rec.spoiled if rec is not None else False

    def red_count(self, lid: LineId) -> int:
        rec = self.records.get(lid)
        return rec.red_count if rec is not None else 0

    def max_red(self) -> int:
        """Largest red count over good lines (0 if none)."""
        return self._max_red

    def count_at_least(self, r: int) -> int:
        if r < 1:
            raise ValueError(f"threshold must be >= 1, got {r}")
        return sum(len(ids) for count, ids in self._buckets.items() if count >= r)

    def busiest_good_line(self) -> Optional[LineId]:
        """Good line with the most Red points; ties broken by textual id."""
        if self._max_red == 0:
            return None
        return min(self._buckets[self._max_red], key=LineId.text)

    def spoiled_lines(self) -> list[LineId]:
        return [lid for lid, rec in self.records.items() if rec.spoiled]


def ledger_on_claim(ledger: LineLedger, p: Point, color: PlayerColor, n: int) -> LineLedger:
    if n != ledger.n:
        raise ValueError(f"ledger is for n={ledger.n}, got n={n}")
    ledger.on_claim(p, color)
    return ledger


def count_lines_with_red_at_least(ledger: LineLedger, r: int) -> int:
    return ledger.count_at_least(r)

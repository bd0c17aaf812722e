import random

import pytest

from rowrush.board import (
    GameConfig,
    GameMode,
    GameState,
    LineDir4,
    PlayerColor,
    Point,
    Schedule,
    Segment,
    apply_move,
)
from rowrush.cover import (
    LedgerCorruptionError,
    LineId,
    LineLedger,
    containing_line,
    count_lines_with_red_at_least,
    ledger_on_claim,
    line_points,
    lines_through,
    spoil_targets,
)


def state_with_cells(n, cells):
    """Build a GameState holding exactly `cells` (Point -> color), bypassing turn order."""
    state = GameState(GameConfig(n, Schedule.identity(), GameMode.MAKER_BREAKER))
    for p, color in cells.items():
        state._claim(Point(*p), color)
    return state


class TestLinePoints:
    def test_horizontal_base_line(self):
        assert line_points(LineId("F", 0, 0), 4) == [Point(x, 0) for x in range(8)]

    def test_rising_diagonal(self):
        assert line_points(LineId("H", 2, -1), 3) == [Point(2 + k, k) for k in range(-3, 3)]

    def test_smallest_vertical(self):
        assert line_points(LineId("G", 1, 0), 1) == [Point(1, 0), Point(1, 1)]

    def test_length_is_2n(self):
        rng = random.Random(1)
        for _ in range(50):
            lid = LineId(rng.choice("FGHI"), rng.randint(-9, 9), rng.randint(-9, 9))
            n = rng.randint(1, 13)
            pts = line_points(lid, n)
            assert len(pts) == 2 * n
            assert len(set(pts)) == 2 * n


class TestLinesThrough:
    def test_origin(self):
        got = set(lines_through(Point(0, 0), 4))
        want = {
            LineId("F", 0, -1), LineId("F", 0, 0),
            LineId("G", 0, -1), LineId("G", 0, 0),
            LineId("H", 0, -1), LineId("H", 0, 0),
            LineId("I", 0, -1), LineId("I", 0, 0),
        }
        assert got == want

    def test_horizontal_members_off_origin(self):
        got = {lid for lid in lines_through(Point(7, 0), 4) if lid.family == "F"}
        assert got == {LineId("F", 0, 0), LineId("F", 0, 1)}

    def test_degree_eight_and_membership(self):
        rng = random.Random(2)
        for _ in range(300):
            n = rng.choice([1, 2, 3, 4, 10, 57])
            p = Point(rng.randint(-200, 200), rng.randint(-200, 200))
            ids = lines_through(p, n)
            assert len(set(ids)) == 8
            for lid in ids:
                assert p in line_points(lid, n)

    def test_matches_local_exhaustive_membership(self):
        # Oracle: scan all lines with parameters near p and keep those containing p.
        rng = random.Random(3)
        for _ in range(40):
            n = rng.choice([1, 2, 3, 5])
            p = Point(rng.randint(-15, 15), rng.randint(-15, 15))
            found = set()
            for fam, axis in (("F", p.y), ("G", p.x), ("H", p.x - p.y), ("I", p.x + p.y)):
                for i in range(axis - 2, axis + 3):
                    for j in range(-(abs(p.x) + abs(p.y)) // n - 3, (abs(p.x) + abs(p.y)) // n + 4):
                        lid = LineId(fam, i, j)
                        if p in line_points(lid, n):
                            found.add(lid)
            assert found == set(lines_through(p, n))


class TestContainingLine:
    def test_stride_boundary_prefers_smaller_j(self):
        seg = Segment(Point(0, 0), LineDir4.E, 4)
        assert containing_line(seg, 4) == LineId("F", 0, -1)

    def test_second_window(self):
        n = 6
        seg = Segment(Point(n, 0), LineDir4.E, n)
        assert containing_line(seg, n) == LineId("F", 0, 0)

    def test_diagonal(self):
        n = 5
        seg = Segment(Point(0, 0), LineDir4.NE, n)
        assert containing_line(seg, n) == LineId("H", 0, -1)

    def test_random_segments_are_contained(self):
        rng = random.Random(4)
        for _ in range(500):
            n = rng.choice([4, 10, 57])
            d = rng.choice(list(LineDir4))
            seg = Segment(Point(rng.randint(-300, 300), rng.randint(-300, 300)), d, n)
            lid = containing_line(seg, n)
            pts = set(line_points(lid, n))
            assert all(p in pts for p in seg.points())

    def test_wrong_length_rejected(self):
        with pytest.raises(ValueError):
            containing_line(Segment(Point(0, 0), LineDir4.E, 3), 4)


class TestSpoilTargets:
    def line_state(self, n, red_positions, blue_positions=(), lid=LineId("F", 0, 0)):
        cells = {}
        for pos in red_positions:
            cells[line_points(lid, n)[pos - 1]] = PlayerColor.RED
        for pos in blue_positions:
            cells[line_points(lid, n)[pos - 1]] = PlayerColor.BLUE
        return state_with_cells(n, cells)

    def test_reds_straddling_the_middle(self):
        n, lid = 4, LineId("F", 0, 0)
        state = self.line_state(n, red_positions={3, 4, 5})
        pts = line_points(lid, n)
        assert spoil_targets(lid, state) == [pts[1], pts[5]]  # positions 2 and 6

    def test_empty_line(self):
        n, lid = 4, LineId("F", 0, 0)
        state = self.line_state(n, red_positions=set())
        pts = line_points(lid, n)
        assert spoil_targets(lid, state) == [pts[3], pts[4]]  # positions 4 and 5

    def test_blue_already_blocking_second_half(self):
        n, lid = 4, LineId("F", 0, 0)
        state = self.line_state(n, red_positions={2, 3, 4}, blue_positions={5})
        pts = line_points(lid, n)
        assert spoil_targets(lid, state) == [pts[0]]  # position 1 only

    def test_fully_red_half_raises(self):
        n, lid = 4, LineId("F", 0, 0)
        state = self.line_state(n, red_positions={1, 2, 3, 4})
        with pytest.raises(LedgerCorruptionError):
            spoil_targets(lid, state)

    def test_randomized_spoiling_blocks_every_window(self):
        rng = random.Random(5)
        done = 0
        while done < 400:
            n = rng.choice([2, 3, 4, 6, 9])
            lid = LineId(rng.choice("FGHI"), rng.randint(-3, 3), rng.randint(-3, 3))
            colors = [rng.choice([None, PlayerColor.RED, PlayerColor.BLUE]) for _ in range(2 * n)]
            # precondition: good line, no fully-Red n-window
            windows = [range(a, a + n) for a in range(n + 1)]
            if any(all(colors[i] is PlayerColor.RED for i in w) for w in windows):
                continue
            pts = line_points(lid, n)
            cells = {pts[i]: c for i, c in enumerate(colors) if c is not None}
            state = state_with_cells(n, cells)
            targets = spoil_targets(lid, state)
            for p in targets:
                assert p not in state.cells
                state._claim(p, PlayerColor.BLUE)
            for w in windows:
                assert any(state.cells.get(pts[i]) is PlayerColor.BLUE for i in w)
            done += 1

    def test_pending_points_count_as_blue(self):
        n, lid = 4, LineId("F", 0, 0)
        state = self.line_state(n, red_positions={2, 3, 4})
        pts = line_points(lid, n)
        assert spoil_targets(lid, state, pending={pts[4]}) == [pts[0]]


class TestLedger:
    def test_first_red_point_touches_eight_lines(self):
        ledger = LineLedger(4)
        ledger_on_claim(ledger, Point(0, 0), PlayerColor.RED, 4)
        assert len(ledger.records) == 8
        assert all(rec.red_count == 1 for rec in ledger.records.values())
        assert count_lines_with_red_at_least(ledger, 1) == 8

    def test_blue_claim_is_noop(self):
        ledger = LineLedger(4)
        ledger.on_claim(Point(0, 0), PlayerColor.BLUE)
        assert ledger.records == {}

    def test_shared_horizontal_lines_count_two(self):
        n = 5
        ledger = LineLedger(n)
        a, b = Point(1, 0), Point(3, 0)
        ledger.on_claim(a, PlayerColor.RED)
        ledger.on_claim(b, PlayerColor.RED)
        shared = set(lines_through(a, n)) & set(lines_through(b, n))
        assert shared  # within n of each other on one row
        for lid in shared:
            assert ledger.red_count(lid) == 2

    def test_spoiled_lines_leave_the_good_counts(self):
        ledger = LineLedger(4)
        ledger.on_claim(Point(0, 0), PlayerColor.RED)
        ledger.mark_spoiled(LineId("F", 0, -1))
        assert count_lines_with_red_at_least(ledger, 1) == 7
        assert ledger.is_spoiled(LineId("F", 0, -1))
        # red counts keep accumulating even on spoiled lines
        ledger.on_claim(Point(1, 0), PlayerColor.RED)
        assert ledger.red_count(LineId("F", 0, -1)) == 2

    def test_max_red_tracks_spoiling(self):
        ledger = LineLedger(3)
        for x in range(3):
            ledger.on_claim(Point(x, 0), PlayerColor.RED)
        assert ledger.max_red() == 3
        busiest = ledger.busiest_good_line()
        assert ledger.red_count(busiest) == 3
        ledger.mark_spoiled(busiest)
        assert ledger.max_red() <= 3

    def test_busiest_tie_break_is_textual(self):
        ledger = LineLedger(4)
        ledger.on_claim(Point(0, 0), PlayerColor.RED)
        candidates = {lid.text() for lid in lines_through(Point(0, 0), 4)}
        assert ledger.busiest_good_line().text() == min(candidates)

    def test_counts_match_full_recount(self):
        rng = random.Random(6)
        for _ in range(20):
            n = rng.choice([2, 4, 7])
            ledger = LineLedger(n)
            claimed = {}
            for _ in range(rng.randint(1, 60)):
                p = Point(rng.randint(-10, 10), rng.randint(-10, 10))
                if p in claimed:
                    continue
                color = rng.choice([PlayerColor.RED, PlayerColor.BLUE])
                claimed[p] = color
                ledger.on_claim(p, color)
            reds = [p for p, c in claimed.items() if c is PlayerColor.RED]
            for lid, rec in ledger.records.items():
                pts = set(line_points(lid, n))
                assert rec.red_count == sum(1 for p in reds if p in pts)
            # every red-touched line is materialized
            for p in reds:
                for lid in lines_through(p, n):
                    assert lid in ledger.records

    def test_threshold_must_be_positive(self):
        with pytest.raises(ValueError):
            count_lines_with_red_at_least(LineLedger(3), 0)

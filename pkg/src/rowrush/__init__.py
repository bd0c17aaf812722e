"""Engine, simulator, solver and play service for the accelerated n-in-a-row game."""

from rowrush.board import (
    GameConfig,
    GameMode,
    GameState,
    LineDir4,
    Move,
    PlayerColor,
    Point,
    Schedule,
    Segment,
    apply_move,
    brute_force_win_scan,
    cumulative_maker_quota,
    has_win,
    quota,
)

__all__ = [
    "GameConfig",
    "GameMode",
    "GameState",
    "LineDir4",
    "Move",
    "PlayerColor",
    "Point",
    "Schedule",
    "Segment",
    "apply_move",
    "brute_force_win_scan",
    "cumulative_maker_quota",
    "has_win",
    "quota",
]

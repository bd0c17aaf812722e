"""HTTP play service: create a game, submit moves, read state.

Sessions live in memory; an optional sessions directory gets an append-only
transcript plus a small meta file per game, and on startup every persisted
session is rebuilt by replaying its transcript (engine turns are recomputed,
which also restores the engine's private ledger and RNG position).
"""

from __future__ import annotations

import json
import os
import threading
import uuid
from dataclasses import dataclass, field
from typing import Any, Optional

from fastapi import FastAPI, Request
from fastapi.responses import JSONResponse

from rowrush.board import (
    GameConfig,
    GameMode,
    GameState,
    Move,
    MoveError,
    PlayerColor,
    Point,
    Schedule,
    apply_move,
)
from rowrush.cover import LineLedger
from rowrush.strategies import (
    BREAKER_NAMES,
    MAKER_NAMES,
    SplitMix64,
    make_breaker,
    make_maker,
)


class ApiError(Exception):
    def __init__(self, code: str, detail: str, point: Optional[Point] = None, status: int = 400):
        super().__init__(detail)
        self.code = code
        self.detail = detail
        self.point = point
        self.status = status

    def body(self) -> dict:
        payload: dict[str, Any] = {"error": self.code, "detail": self.detail}
        if self.point is not None:
            payload["point"] = [self.point.x, self.point.y]
        return payload


@dataclass
class Session:
    game_id: str
    state: GameState
    human_color: PlayerColor
    engine_name: str
    seed: int
    cap: Optional[int]
    ledger: LineLedger
    engine_fn: Any
    engine_rng: SplitMix64
    lock: threading.Lock = field(default_factory=threading.Lock)
    last_engine_move: Optional[Move] = None

    @property
    def human_side(self) -> str:
        return "maker" if self.human_color is PlayerColor.RED else "breaker"

    def is_capped(self) -> bool:
        return (
            self.state.winner is None
            and self.cap is not None
            and self.state.t > self.cap
        )

    def status(self) -> str:
        if self.state.winner is not None:
            color = self.state.winner[0]
            if self.state.config.mode is GameMode.MAKER_BREAKER:
                return "maker_won"
            return "human_won" if color is self.human_color else "engine_won"
        if self.is_capped():
            return "capped"
        return "ongoing"


def _build_engine(
    config: GameConfig, human_side: str, engine_name: str, seed: int, ledger: LineLedger
):
    parent = SplitMix64(seed)
    maker_rng = SplitMix64(parent.next())
    breaker_rng = SplitMix64(parent.next())
    if human_side == "maker":
        if engine_name not in BREAKER_NAMES:
            raise ApiError(
                "bad_request",
                f"engine plays breaker; choose one of {', '.join(BREAKER_NAMES)}",
            )
        return make_breaker(engine_name, ledger), breaker_rng, PlayerColor.BLUE
    if engine_name not in MAKER_NAMES:
        raise ApiError(
            "bad_request",
            f"engine plays maker; choose one of {', '.join(MAKER_NAMES)}",
        )
    return make_maker(engine_name), maker_rng, PlayerColor.RED


class SessionStore:
    def __init__(self, sessions_dir: Optional[str] = None):
        self.sessions: dict[str, Session] = {}
        self.sessions_dir = sessions_dir
        self._lock = threading.Lock()
        if sessions_dir:
            os.makedirs(sessions_dir, exist_ok=True)
            self._recover()

    def create(
        self,
        n: int,
        schedule: Schedule,
        human_side: str,
        engine_name: str,
        seed: int,
        mode: GameMode = GameMode.MAKER_BREAKER,
        cap: Optional[int] = None,
        game_id: Optional[str] = None,
    ) -> Session:
        config = GameConfig(n, schedule, mode)
        ledger = LineLedger(n)
        engine_fn, engine_rng, engine_color = _build_engine(
            config, human_side, engine_name, seed, ledger
        )
        session = Session(
            game_id=game_id or uuid.uuid4().hex[:12],
            state=GameState(config),
            human_color=engine_color.other(),
            engine_name=engine_name,
            seed=seed,
            cap=cap,
            ledger=ledger,
            engine_fn=engine_fn,
            engine_rng=engine_rng,
        )
        with self._lock:
            self.sessions[session.game_id] = session
        self._persist_meta(session)
        self._persist_header(session)
        if session.state.color_to_move() is engine_color:
            self._engine_turn(session)
        return session

    def get(self, game_id: str) -> Session:
        with self._lock:
            session = self.sessions.get(game_id)
        if session is None:
            raise ApiError("unknown_game", f"no game with id {game_id!r}", status=404)
        return session

    def _engine_color(self, session: Session) -> PlayerColor:
        return session.human_color.other()

    def _apply(self, session: Session, points: list[Point]) -> Move:
        state = session.state
        apply_move(state, points)
        move = state.history[-1]
        for p in move.points:
            session.ledger.on_claim(p, move.player)
        self._persist_move(session, move)
        return move

    def _engine_turn(self, session: Session) -> Optional[Move]:
        state = session.state
        if state.winner is not None or session.is_capped():
            return None
        if state.color_to_move() is not self._engine_color(session):
            return None
        q = state.quota_now()
        points = session.engine_fn(state, q, session.engine_rng)
        move = self._apply(session, points)
        session.last_engine_move = move
        return move

    def submit_human_move(self, session: Session, points: list[Point]) -> dict:
        with session.lock:
            state = session.state
            if state.winner is not None or session.is_capped():
                raise ApiError("not_your_turn", "the game is over")
            if state.color_to_move() is not session.human_color:
                raise ApiError("not_your_turn", "it is the engine's turn")
            try:
                self._apply(session, points)
            except MoveError as err:
                raise ApiError(err.code, str(err), point=err.point) from err
            engine_move = self._engine_turn(session)
            return self._move_response(session, engine_move)

    def _move_response(self, session: Session, engine_move: Optional[Move]) -> dict:
        state = session.state
        body: dict[str, Any] = {
            "accepted": True,
            "engineMove": _move_view(engine_move),
            "status": session.status(),
            "quotaNext": state.quota_now() if state.winner is None else 0,
        }
        if state.winner is not None:
            color, _, seg = state.winner
            body["winner"] = color.value
            body["winSegment"] = _segment_view(seg)
        return body

    # -- persistence ---------------------------------------------------

    def _paths(self, game_id: str) -> tuple[str, str]:
        assert self.sessions_dir is not None
        return (
            os.path.join(self.sessions_dir, f"{game_id}.meta.json"),
            os.path.join(self.sessions_dir, f"{game_id}.log"),
        )

    def _persist_meta(self, session: Session) -> None:
        if not self.sessions_dir:
            return
        meta_path, _ = self._paths(session.game_id)
        config = session.state.config
        meta = {
            "n": config.n,
            "schedule": config.schedule.render(),
            "mode": config.mode.value,
            "humanSide": session.human_side,
            "engine": session.engine_name,
            "seed": session.seed,
            "cap": session.cap,
        }
        with open(meta_path, "w") as fh:
            json.dump(meta, fh)

    def _persist_header(self, session: Session) -> None:
        if not self.sessions_dir:
            return
        _, log_path = self._paths(session.game_id)
        config = session.state.config
        with open(log_path, "w") as fh:
            fh.write(f"n={config.n} schedule={config.schedule.render()} mode={config.mode.value}\n")

    def _persist_move(self, session: Session, move: Move) -> None:
        if not self.sessions_dir:
            return
        _, log_path = self._paths(session.game_id)
        coords = " ".join(f"{p.x},{p.y}" for p in move.points)
        with open(log_path, "a") as fh:
            fh.write(f"t={move.turn} {coords}".rstrip() + "\n")

    def _recover(self) -> None:
        for name in sorted(os.listdir(self.sessions_dir)):
            if not name.endswith(".meta.json"):
                continue
            game_id = name[: -len(".meta.json")]
            meta_path, log_path = self._paths(game_id)
            with open(meta_path) as fh:
                meta = json.load(fh)
            recorded: list[tuple[int, list[Point]]] = []
            if os.path.exists(log_path):
                with open(log_path) as fh:
                    lines = [ln for ln in fh.read().splitlines() if ln.strip()]
                for ln in lines[1:]:
                    fields = ln.split()
                    turn = int(fields[0][2:])
                    pts = [Point(int(a), int(b)) for a, b in (tok.split(",") for tok in fields[1:])]
                    recorded.append((turn, pts))
            self._rebuild(game_id, meta, recorded)

    def _rebuild(self, game_id: str, meta: dict, recorded: list[tuple[int, list[Point]]]) -> None:
        config = GameConfig(meta["n"], Schedule.parse(meta["schedule"]), GameMode(meta["mode"]))
        ledger = LineLedger(config.n)
        engine_fn, engine_rng, engine_color = _build_engine(
            config, meta["humanSide"], meta["engine"], meta["seed"], ledger
        )
        state = GameState(config)
        session = Session(
            game_id=game_id,
            state=state,
            human_color=engine_color.other(),
            engine_name=meta["engine"],
            seed=meta["seed"],
            cap=meta.get("cap"),
            ledger=ledger,
            engine_fn=engine_fn,
            engine_rng=engine_rng,
        )
        for turn, pts in recorded:
            if state.color_to_move() is engine_color:
                # recompute the engine's move: restores rng position and
                # ledger marks, and cross-checks the stored transcript
                replayed = engine_fn(state, state.quota_now(), engine_rng)
                if list(replayed) != list(pts):
                    raise RuntimeError(
                        f"session {game_id}: transcript turn {turn} does not match replay"
                    )
                session.last_engine_move = Move(turn, engine_color, tuple(pts))
            apply_move(state, pts)
            for p in pts:
                ledger.on_claim(p, state.history[-1].player)
        with self._lock:
            self.sessions[game_id] = session


def _move_view(move: Optional[Move]) -> Optional[dict]:
    if move is None:
        return None
    return {
        "turn": move.turn,
        "player": move.player.value,
        "points": [[p.x, p.y] for p in move.points],
    }


def _segment_view(seg) -> dict:
    return {"start": [seg.start.x, seg.start.y], "dir": seg.dir.name, "len": seg.length}


def state_view(session: Session) -> dict:
    state = session.state
    config = state.config
    view: dict[str, Any] = {
        "gameId": session.game_id,
        "n": config.n,
        "schedule": [
            config.schedule.even_a,
            config.schedule.even_b,
            config.schedule.odd_a,
            config.schedule.odd_c,
        ],
        "mode": config.mode.value,
        "humanSide": session.human_side,
        "engine": session.engine_name,
        "t": state.t,
        "quota": state.quota_now() if state.winner is None else 0,
        "status": session.status(),
        "cells": [[p.x, p.y, mv.player.value] for mv in state.history for p in mv.points],
        "history": [_move_view(mv) for mv in state.history],
        "winner": state.winner[0].value if state.winner else None,
        "winSegment": _segment_view(state.winner[2]) if state.winner else None,
        "lastEngineMove": _move_view(session.last_engine_move),
    }
    return view


def _parse_points(raw: Any) -> list[Point]:
    if not isinstance(raw, list):
        raise ApiError("bad_request", "points must be a list of [x, y] pairs")
    points = []
    for item in raw:
        if (
            not isinstance(item, (list, tuple))
            or len(item) != 2
            or not all(isinstance(v, int) and not isinstance(v, bool) for v in item)
        ):
            raise ApiError("bad_request", f"bad point {item!r}; expected [x, y] integers")
        points.append(Point(item[0], item[1]))
    return points


def create_app(
    sessions_dir: Optional[str] = None,
    ui_dir: Optional[str] = None,
    store: Optional[SessionStore] = None,
) -> FastAPI:
    app = FastAPI(title="rowrush play service")
    app.state.store = store or SessionStore(sessions_dir)

    @app.exception_handler(ApiError)
    async def _api_error(_request: Request, exc: ApiError):
        return JSONResponse(status_code=exc.status, content=exc.body())

    @app.post("/games")
    async def create_game(request: Request):
        try:
            body = await request.json()
        except Exception:
            raise ApiError("bad_request", "request body must be JSON")
        if not isinstance(body, dict):
            raise ApiError("bad_request", "request body must be a JSON object")
        try:
            n = body["n"]
            human_side = body["humanSide"]
            engine = body["engine"]
            seed = body["seed"]
        except KeyError as missing:
            raise ApiError("bad_request", f"missing field {missing.args[0]!r}")
        if not isinstance(n, int) or isinstance(n, bool) or n < 1:
            raise ApiError("bad_request", f"n must be a positive integer, got {n!r}")
        if human_side not in ("maker", "breaker"):
            raise ApiError("bad_request", "humanSide must be 'maker' or 'breaker'")
        if not isinstance(seed, int) or isinstance(seed, bool):
            raise ApiError("bad_request", "seed must be an integer")
        raw_schedule = body.get("schedule", "identity")
        try:
            if isinstance(raw_schedule, list):
                schedule = Schedule(*(int(v) for v in raw_schedule))
            else:
                schedule = Schedule.parse(str(raw_schedule))
        except (TypeError, ValueError) as err:
            raise ApiError("bad_request", f"bad schedule: {err}")
        mode = GameMode(body.get("mode", "MB"))
        cap = body.get("cap")
        if cap is not None and (not isinstance(cap, int) or isinstance(cap, bool) or cap < 1):
            raise ApiError("bad_request", "cap must be a positive integer")
        store: SessionStore = app.state.store
        try:
            session = store.create(n, schedule, human_side, str(engine), seed, mode, cap)
        except ValueError as err:
            raise ApiError("bad_request", str(err))
        return {"gameId": session.game_id, "state": state_view(session)}

    @app.post("/games/{game_id}/moves")
    async def submit_move(game_id: str, request: Request):
        store: SessionStore = app.state.store
        session = store.get(game_id)
        try:
            body = await request.json()
        except Exception:
            raise ApiError("bad_request", "request body must be JSON")
        if not isinstance(body, dict) or "points" not in body:
            raise ApiError("bad_request", "expected a JSON object with a 'points' field")
        points = _parse_points(body["points"])
        return store.submit_human_move(session, points)

    @app.get("/games/{game_id}")
    async def get_state(game_id: str):
        store: SessionStore = app.state.store
        session = store.get(game_id)
        with session.lock:
            return state_view(session)

    if ui_dir:
        from fastapi.staticfiles import StaticFiles

        app.mount("/ui", StaticFiles(directory=ui_dir, html=True), name="ui")
    return app

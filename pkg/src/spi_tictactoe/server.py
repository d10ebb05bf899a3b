"""HTTP/JSON service exposing live games to the browser UI.

Sessions live in memory behind per-session locks; the machine's reply
is played synchronously inside the move request (the game tree is
tiny). The shared policy table is immutable and read by every handler.

    POST /api/games            {"first_mover": "spi"|"human"} -> 201 Snapshot
    GET  /api/games/{id}       -> 200 Snapshot
    POST /api/games/{id}/moves {"square": 1..9} -> 200 Snapshot | 404 | 409
    GET  /api/games/{id}/trace -> 200 {"turns": [...]}
"""

from __future__ import annotations

import threading
import time
from dataclasses import dataclass, field
from typing import Literal, Optional

import numpy as np
from fastapi import FastAPI, HTTPException
from fastapi.staticfiles import StaticFiles
from pydantic import BaseModel, Field

from .errors import (
    DetectionMismatchError,
    NotHumansTurnError,
    OccupiedSquareError,
    TerminalStateError,
)
from .game import Player
from .optics import PhotometryConfig
from .policy_table import PolicyTable
from .session import GameSession, human_turn, new_session, spi_turn

DEFAULT_SESSION_TTL_SECONDS = 3600.0


class CreateGameRequest(BaseModel):
    first_mover: Literal["spi", "human"]


class MoveRequest(BaseModel):
    square: int = Field(ge=1, le=9)


class Snapshot(BaseModel):
    game_id: str
    board: list[int]
    status: Literal["in_progress", "human_win", "spi_win", "draw", "faulted"]
    to_move: Literal["human", "spi", "none"]
    last_measurements: Optional[list[float]] = None
    last_pattern_index: Optional[int] = None
    move_count: int


@dataclass
class _Entry:
    session: GameSession
    lock: threading.Lock = field(default_factory=threading.Lock)
    last_access: float = field(default_factory=time.monotonic)


class SessionStore:
    """Thread-safe in-memory session registry with idle eviction."""

    def __init__(self, ttl_seconds: float = DEFAULT_SESSION_TTL_SECONDS):
        self._ttl = ttl_seconds
        self._entries: dict[str, _Entry] = {}
        self._mutex = threading.Lock()

    def add(self, session: GameSession) -> None:
        with self._mutex:
            self._evict_idle()
            self._entries[session.id] = _Entry(session)

    def get(self, game_id: str) -> _Entry:
        with self._mutex:
            entry = self._entries.get(game_id)
            if entry is None:
                raise KeyError(game_id)
            entry.last_access = time.monotonic()
            return entry

    def _evict_idle(self) -> None:
        cutoff = time.monotonic() - self._ttl
        stale = [gid for gid, e in self._entries.items() if e.last_access < cutoff]
        for gid in stale:
            del self._entries[gid]

    def __len__(self) -> int:
        with self._mutex:
            return len(self._entries)


def snapshot_of(session: GameSession) -> Snapshot:
    last_measurements = None
    last_pattern = None
    for record in reversed(session.history):
        if record.measurements is not None:
            last_measurements = list(record.measurements)
            last_pattern = record.pattern_index
            break
    if session.faulted:
        status = "faulted"
    else:
        status = session.status.value
    to_move = session.to_move
    return Snapshot(
        game_id=session.id,
        board=[int(s) for s in session.board],
        status=status,
        to_move=to_move.value if to_move else "none",
        last_measurements=last_measurements,
        last_pattern_index=last_pattern,
        move_count=session.move_count,
    )


def create_app(
    table: PolicyTable,
    *,
    noise_sigma: float = 0.02,
    static_dir: Optional[str] = None,
    session_ttl_seconds: float = DEFAULT_SESSION_TTL_SECONDS,
    rng_seed: Optional[int] = None,
) -> FastAPI:
    """Build the service around one shared policy table."""
    app = FastAPI(title="spi-tictactoe")
    store = SessionStore(session_ttl_seconds)
    photometry = PhotometryConfig(noise_sigma=noise_sigma)
    seed_root = np.random.SeedSequence(rng_seed)
    app.state.store = store
    app.state.table = table

    def _get_entry(game_id: str) -> _Entry:
        try:
            return store.get(game_id)
        except KeyError:
            raise HTTPException(status_code=404, detail=f"unknown game {game_id}")

    @app.post("/api/games", status_code=201, response_model=Snapshot)
    def create_game(req: CreateGameRequest) -> Snapshot:
        rng = np.random.default_rng(seed_root.spawn(1)[0])
        session = new_session(
            table,
            Player.SPI if req.first_mover == "spi" else Player.HUMAN,
            photometry=photometry,
            rng=rng,
        )
        if session.first_mover is Player.SPI:
            spi_turn(session)
        store.add(session)
        return snapshot_of(session)

    @app.get("/api/games/{game_id}", response_model=Snapshot)
    def get_game(game_id: str) -> Snapshot:
        return snapshot_of(_get_entry(game_id).session)

    @app.post("/api/games/{game_id}/moves", response_model=Snapshot)
    def submit_move(game_id: str, req: MoveRequest) -> Snapshot:
        entry = _get_entry(game_id)
        with entry.lock:
            session = entry.session
            try:
                human_turn(session, req.square)
            except (TerminalStateError, NotHumansTurnError, OccupiedSquareError) as exc:
                raise HTTPException(status_code=409, detail=str(exc))
            try:
                spi_turn(session)
            except DetectionMismatchError:
                pass  # session flagged as faulted; reflected in the snapshot
            return snapshot_of(session)

    @app.get("/api/games/{game_id}/trace")
    def get_trace(game_id: str) -> dict:
        session = _get_entry(game_id).session
        return {"turns": [r.to_json_dict() for r in session.history]}

    if static_dir is not None:
        app.mount("/", StaticFiles(directory=static_dir, html=True), name="ui")

    return app

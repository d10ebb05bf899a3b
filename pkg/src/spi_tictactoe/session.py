"""Live game loop and batch evaluation against a random opponent.

A session drives the detect -> lookup -> display -> apply cycle: the
machine scans the board optically (even for its opening move on an
empty board), verifies the classified state against its own record,
retrieves the output code, and applies the move if there is one. The
scanner runs after every human move and at game start, so a human win
triggers one final scan that emits the human-won pattern and a drawn
final board scans to the no-action sentinel.

One session is strictly sequential; distinct sessions are independent
and may run in parallel, each with its own rng stream.
"""

from __future__ import annotations

import json
import uuid
from dataclasses import dataclass, field
from typing import Optional

import numpy as np

from .errors import (
    DetectionMismatchError,
    NotHumansTurnError,
    NotSpisTurnError,
    TerminalStateError,
)
from .game import (
    Board,
    GameStatus,
    Player,
    apply_move,
    empty_board,
    game_status,
    legal_moves,
    side_to_move,
)
from .optics import (
    DEFAULT_GEOMETRY,
    GeometryConfig,
    PhotometryConfig,
    Thresholds,
    classify,
    default_thresholds,
    render_board,
    scan_state,
)
from .policy_table import OutputCode, OutputKind, PolicyTable

DETECTION_RETRY_LIMIT = 3


@dataclass(frozen=True)
class TurnRecord:
    """One entry of a session's history.

    Human moves carry only the square. Machine turns carry the nine
    scan measurements and the retrieved output code; terminal scans
    (after a game-ending human move) have no square.
    """

    move_number: int
    actor: Player
    square: Optional[int]
    measurements: Optional[tuple[float, ...]] = None
    output_code: Optional[OutputCode] = None

    @property
    def pattern_index(self) -> Optional[int]:
        return self.output_code.pattern_index if self.output_code else None

    def to_json_dict(self) -> dict:
        code = None
        if self.output_code is not None:
            code = {"kind": self.output_code.kind.value}
            if self.output_code.kind is OutputKind.MOVE:
                code["square"] = self.output_code.square
                code["winning"] = self.output_code.winning
        return {
            "move_number": self.move_number,
            "actor": self.actor.value,
            "square": self.square,
            "measurements": list(self.measurements) if self.measurements else None,
            "output_code": code,
            "pattern_index": self.pattern_index,
        }


@dataclass
class GameSession:
    """Mutable record of one live game."""

    id: str
    first_mover: Player
    table: PolicyTable
    geometry: GeometryConfig
    photometry: PhotometryConfig
    thresholds: Thresholds
    rng: np.random.Generator
    board: Board = field(default_factory=empty_board)
    status: GameStatus = GameStatus.IN_PROGRESS
    history: list[TurnRecord] = field(default_factory=list)
    faulted: bool = False
    detection_retries: int = DETECTION_RETRY_LIMIT

    @property
    def to_move(self) -> Optional[Player]:
        """Side to move, or None once the game is over or faulted."""
        if self.faulted or self.status is not GameStatus.IN_PROGRESS:
            return None
        return side_to_move(self.board, self.first_mover)

    @property
    def move_count(self) -> int:
        return sum(1 for r in self.history if r.square is not None)


def new_session(
    table: PolicyTable,
    first_mover: Player,
    *,
    geometry: GeometryConfig = DEFAULT_GEOMETRY,
    photometry: Optional[PhotometryConfig] = None,
    thresholds: Optional[Thresholds] = None,
    rng: Optional[np.random.Generator] = None,
    session_id: Optional[str] = None,
) -> GameSession:
    """Fresh session on an empty board; the caller triggers any first scan."""
    photometry = photometry if photometry is not None else PhotometryConfig()
    return GameSession(
        id=session_id or uuid.uuid4().hex,
        first_mover=first_mover,
        table=table,
        geometry=geometry,
        photometry=photometry,
        thresholds=thresholds or default_thresholds(photometry),
        rng=rng if rng is not None else photometry.rng(),
    )


def _scan_verified(session: GameSession) -> tuple[float, ...]:
    """Scan until classification matches the session board.

    Noise can misread a square; the scan is retried up to the session's
    retry limit, after which the session faults.
    """
    scene = render_board(session.board, session.geometry, session.photometry)
    for _ in range(1 + session.detection_retries):
        measurements = scan_state(scene, session.geometry, session.photometry, session.rng)
        if classify(measurements, session.thresholds) == session.board:
            return measurements
    session.faulted = True
    raise DetectionMismatchError(
        f"scan disagreed with session board {session.detection_retries + 1} times"
    )


def spi_turn(session: GameSession) -> TurnRecord:
    """Run one machine turn: scan, look up, display, apply.

    Valid when the game is live with the machine to move, or as the
    single terminal scan right after a game-ending human move (human
    win -> human-won pattern; draw -> no action).
    """
    if session.faulted:
        raise TerminalStateError("session is faulted")
    if session.status is GameStatus.IN_PROGRESS:
        if session.to_move is not Player.SPI:
            raise NotSpisTurnError("human to move")
    elif session.status in (GameStatus.HUMAN_WIN, GameStatus.DRAW):
        last = session.history[-1] if session.history else None
        if last is None or last.actor is not Player.HUMAN:
            raise TerminalStateError("terminal board already scanned")
    else:
        raise TerminalStateError("machine already won; nothing to scan")

    measurements = _scan_verified(session)
    code = session.table.lookup(session.board)

    square = None
    if code.kind is OutputKind.MOVE:
        square = code.square
        session.board = apply_move(session.board, square, Player.SPI)
        session.status = game_status(session.board)
    record = TurnRecord(
        move_number=len(session.history) + 1,
        actor=Player.SPI,
        square=square,
        measurements=measurements,
        output_code=code,
    )
    session.history.append(record)
    return record


def human_turn(session: GameSession, square: int) -> TurnRecord:
    """Apply one human move; the caller is expected to run spi_turn next."""
    if session.faulted or session.status is not GameStatus.IN_PROGRESS:
        raise TerminalStateError("game is over")
    if side_to_move(session.board, session.first_mover) is not Player.HUMAN:
        raise NotHumansTurnError("machine to move")
    session.board = apply_move(session.board, square, Player.HUMAN)
    session.status = game_status(session.board)
    record = TurnRecord(
        move_number=len(session.history) + 1,
        actor=Player.HUMAN,
        square=square,
    )
    session.history.append(record)
    return record


def random_agent(board: Board, rng: np.random.Generator) -> int:
    """Uniformly random open square; the baseline benchmark opponent."""
    moves = sorted(legal_moves(board))
    return moves[int(rng.integers(len(moves)))]


def session_trace_jsonl(session: GameSession) -> str:
    """History as one JSON object per line (trace endpoint / golden files)."""
    return "\n".join(json.dumps(r.to_json_dict(), sort_keys=True) for r in session.history)


@dataclass(frozen=True)
class BatchStats:
    """Outcome counts of a simulated batch, from the machine's perspective."""

    games: int
    wins: int
    draws: int
    losses: int
    faulted: int
    seed: int

    def __post_init__(self) -> None:
        if self.wins + self.draws + self.losses + self.faulted != self.games:
            raise ValueError("outcome counts must sum to the number of games")


def play_random_game(
    table: PolicyTable,
    first_mover: Player,
    rng: np.random.Generator,
    *,
    photometry: Optional[PhotometryConfig] = None,
) -> GameSession:
    """One full game against the uniform random opponent."""
    session = new_session(table, first_mover, photometry=photometry, rng=rng)
    try:
        if first_mover is Player.SPI:
            spi_turn(session)
        while session.status is GameStatus.IN_PROGRESS:
            human_turn(session, random_agent(session.board, rng))
            spi_turn(session)
    except DetectionMismatchError:
        pass  # session.faulted is set; counted by the caller
    return session


def run_batch(
    table: PolicyTable,
    n_games: int,
    first_mover: Player,
    seed: int,
    noise_sigma: float = 0.02,
    trace_sink: Optional[list[str]] = None,
) -> BatchStats:
    """Play n_games through the full optical pipeline; deterministic per seed.

    Each game gets its own child rng stream. When `trace_sink` is given,
    every game's JSONL trace is appended to it.
    """
    if n_games < 1:
        raise ValueError("need at least one game")
    photometry = PhotometryConfig(noise_sigma=noise_sigma)
    streams = np.random.SeedSequence(seed).spawn(n_games)
    wins = draws = losses = faulted = 0
    for stream in streams:
        session = play_random_game(
            table, first_mover, np.random.default_rng(stream), photometry=photometry
        )
        if session.faulted:
            faulted += 1
        elif session.status is GameStatus.SPI_WIN:
            wins += 1
        elif session.status is GameStatus.DRAW:
            draws += 1
        else:
            losses += 1
        if trace_sink is not None:
            trace_sink.append(session_trace_jsonl(session))
    return BatchStats(
        games=n_games, wins=wins, draws=draws, losses=losses, faulted=faulted, seed=seed
    )

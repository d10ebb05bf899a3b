"""Tic-Tac-Toe domain rules: boards, moves, win detection, reachability.

Board encoding follows the optical convention of the physical board:
each square holds 1 (human player, black card), 2 (empty, gray) or
3 (machine player, white card). Squares are numbered 1..9 row-major
from the top-left, so square 5 is the center:

    1 | 2 | 3
    ---------
    4 | 5 | 6
    ---------
    7 | 8 | 9

Boards are immutable 9-tuples; every operation returns a new board.
All functions here are pure and safe to call concurrently.
"""

from __future__ import annotations

from enum import Enum, IntEnum
from typing import Iterable, Optional

from .errors import KeyOutOfRangeError, OccupiedSquareError, TerminalStateError


class SquareState(IntEnum):
    """State of one square, with the detection-vector numeric codes."""

    HUMAN = 1
    EMPTY = 2
    SPI = 3


class Player(Enum):
    """The two sides: the human plays black cards, the machine white."""

    HUMAN = "human"
    SPI = "spi"

    @property
    def mark(self) -> SquareState:
        return SquareState.HUMAN if self is Player.HUMAN else SquareState.SPI

    @property
    def opponent(self) -> "Player":
        return Player.SPI if self is Player.HUMAN else Player.HUMAN


class GameStatus(Enum):
    IN_PROGRESS = "in_progress"
    HUMAN_WIN = "human_win"
    SPI_WIN = "spi_win"
    DRAW = "draw"


Board = tuple[SquareState, ...]

SQUARES = tuple(range(1, 10))
NUM_STATES = 3 ** 9  # 19683

# The eight winning lines as 0-based square indices.
LINES = (
    (0, 1, 2), (3, 4, 5), (6, 7, 8),  # rows
    (0, 3, 6), (1, 4, 7), (2, 5, 8),  # columns
    (0, 4, 8), (2, 4, 6),             # diagonals
)

_POWERS = tuple(3 ** i for i in range(9))
_MARK_OF = {SquareState.HUMAN: Player.HUMAN, SquareState.SPI: Player.SPI}


def empty_board() -> Board:
    """The all-gray starting board."""
    return (SquareState.EMPTY,) * 9


def board_from_codes(codes: Iterable[int]) -> Board:
    """Build a board from nine numeric codes in {1, 2, 3}."""
    squares = tuple(SquareState(c) for c in codes)
    if len(squares) != 9:
        raise ValueError(f"board needs exactly 9 squares, got {len(squares)}")
    return squares


def winner(board: Board) -> Optional[Player]:
    """Return the player holding any completed line, if one exists."""
    for a, b, c in LINES:
        if board[a] == board[b] == board[c] != SquareState.EMPTY:
            return _MARK_OF[board[a]]
    return None


def game_status(board: Board) -> GameStatus:
    """Classify a board as won, drawn, or still in progress."""
    w = winner(board)
    if w is Player.HUMAN:
        return GameStatus.HUMAN_WIN
    if w is Player.SPI:
        return GameStatus.SPI_WIN
    if SquareState.EMPTY not in board:
        return GameStatus.DRAW
    return GameStatus.IN_PROGRESS


def legal_moves(board: Board) -> frozenset[int]:
    """Square indices (1..9) still open for play.

    Raises TerminalStateError if the game is already over.
    """
    if game_status(board) is not GameStatus.IN_PROGRESS:
        raise TerminalStateError("game is over; no legal moves")
    return frozenset(i + 1 for i, s in enumerate(board) if s is SquareState.EMPTY)


def apply_move(board: Board, square: int, player: Player) -> Board:
    """Return a new board with `square` taken by `player`.

    The input board is never mutated. Raises OccupiedSquareError for a
    non-empty target and TerminalStateError if the game is over.
    """
    if square not in SQUARES:
        raise ValueError(f"square must be in 1..9, got {square}")
    if game_status(board) is not GameStatus.IN_PROGRESS:
        raise TerminalStateError("cannot move in a finished game")
    idx = square - 1
    if board[idx] is not SquareState.EMPTY:
        raise OccupiedSquareError(f"square {square} is already occupied")
    return board[:idx] + (player.mark,) + board[idx + 1:]


def encode_key(board: Board) -> int:
    """Base-3 state key: sum of (code_i - 1) * 3^(i-1) over squares 1..9."""
    return sum((board[i] - 1) * _POWERS[i] for i in range(9))


def decode_key(key: int) -> Board:
    """Inverse of encode_key. Raises KeyOutOfRangeError outside [0, 19682]."""
    if not 0 <= key < NUM_STATES:
        raise KeyOutOfRangeError(f"state key {key} outside [0, {NUM_STATES - 1}]")
    return tuple(SquareState(key // p % 3 + 1) for p in _POWERS)


def counts(board: Board) -> tuple[int, int]:
    """(machine marks, human marks) on the board."""
    n_spi = sum(1 for s in board if s is SquareState.SPI)
    n_human = sum(1 for s in board if s is SquareState.HUMAN)
    return n_spi, n_human


def side_to_move(board: Board, first_mover: Player) -> Player:
    """Whose turn it is under alternating play from the empty board.

    Derived purely from mark counts; raises ValueError when the counts
    are inconsistent with `first_mover` having opened the game.
    """
    n_spi, n_human = counts(board)
    if n_spi == n_human:
        return first_mover
    leader, n_lead, n_trail = (
        (Player.SPI, n_spi, n_human) if n_spi > n_human else (Player.HUMAN, n_human, n_spi)
    )
    if leader is not first_mover or n_lead != n_trail + 1:
        raise ValueError("mark counts inconsistent with alternating play")
    return leader.opponent


def enumerate_reachable(first_mover: Player) -> frozenset[int]:
    """State keys of every board reachable by alternating legal play.

    Breadth-first closure from the empty board; expansion stops at
    terminal positions, which are themselves included.
    """
    start = empty_board()
    seen: dict[Board, None] = {start: None}
    frontier: list[tuple[Board, Player]] = [(start, first_mover)]
    while frontier:
        next_frontier: list[tuple[Board, Player]] = []
        for board, mover in frontier:
            if game_status(board) is not GameStatus.IN_PROGRESS:
                continue
            for square in SQUARES:
                if board[square - 1] is SquareState.EMPTY:
                    child = apply_move(board, square, mover)
                    if child not in seen:
                        seen[child] = None
                        next_frontier.append((child, mover.opponent))
        frontier = next_frontier
    return frozenset(encode_key(b) for b in seen)

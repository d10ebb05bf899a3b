"""Depth-aware minimax solver for the machine player.

Scores are shaped so faster wins (and slower losses) score better: a
machine win at search depth d is worth +(WIN_SCORE - d), a human win
-(WIN_SCORE - d), a draw 0. Internally each position's value is solved
relative to its own depth and memoized by (state key, side to move);
shifting by the caller's depth recovers the absolute score, so one memo
serves every root. CPython dict operations make the shared memo safe
for concurrent readers; at worst two workers redundantly compute the
same deterministic entry.
"""

from __future__ import annotations

from dataclasses import dataclass

from .errors import NotSpisTurnError, TerminalStateError
from .game import (
    Board,
    GameStatus,
    Player,
    SQUARES,
    SquareState,
    apply_move,
    counts,
    encode_key,
    game_status,
    winner,
)

WIN_SCORE = 100

# Tie-break order among equal-valued moves: center, then corners, then
# edges, ascending within each group. Center-first matches the machine's
# observed opening on an empty board.
PREFERENCE_ORDER = (5, 1, 3, 7, 9, 2, 4, 6, 8)

_memo: dict[tuple[int, Player], int] = {}


@dataclass(frozen=True)
class MoveDecision:
    """Chosen square plus the outcome perfect play leads to from there."""

    square: int
    predicted: GameStatus
    immediate_win: bool


def _shift(value: int, depth: int) -> int:
    """Re-express a depth-relative score at `depth` plies below the root."""
    if value > 0:
        return value - depth
    if value < 0:
        return value + depth
    return 0


def _solve(board: Board, to_move: Player) -> int:
    """Depth-relative minimax value, memoized by (state key, side to move)."""
    key = (encode_key(board), to_move)
    cached = _memo.get(key)
    if cached is not None:
        return cached

    w = winner(board)
    if w is Player.SPI:
        value = WIN_SCORE
    elif w is Player.HUMAN:
        value = -WIN_SCORE
    elif SquareState.EMPTY not in board:
        value = 0
    else:
        best = None
        for square in SQUARES:
            if board[square - 1] is SquareState.EMPTY:
                child = apply_move(board, square, to_move)
                v = _shift(_solve(child, to_move.opponent), 1)
                if best is None:
                    best = v
                elif to_move is Player.SPI:
                    best = max(best, v)
                else:
                    best = min(best, v)
        assert best is not None
        value = best

    _memo[key] = value
    return value


def minimax_value(board: Board, to_move: Player, depth: int = 0) -> int:
    """Best worst-case score of `board` seen from `depth` plies into a search.

    Terminal boards score +/-(WIN_SCORE - depth) or 0 directly; interior
    nodes take the max over children when the machine is to move and the
    min when the human is.
    """
    return _shift(_solve(board, to_move), depth)


def best_move(board: Board) -> MoveDecision:
    """Optimal square for the machine player, with its predicted outcome.

    Ties on value are broken by PREFERENCE_ORDER. Raises
    TerminalStateError on finished boards and NotSpisTurnError when the
    mark counts show the machine just moved.
    """
    if game_status(board) is not GameStatus.IN_PROGRESS:
        raise TerminalStateError("no move to choose: game is over")
    n_spi, n_human = counts(board)
    if n_spi > n_human:
        raise NotSpisTurnError("machine has one mark more; human to move")
    if n_human > n_spi + 1:
        raise ValueError("board not reachable by alternating play")

    best_square = None
    best_value = None
    for square in PREFERENCE_ORDER:
        if board[square - 1] is not SquareState.EMPTY:
            continue
        child = apply_move(board, square, Player.SPI)
        value = _shift(_solve(child, Player.HUMAN), 1)
        if best_value is None or value > best_value:
            best_square, best_value = square, value
    assert best_square is not None and best_value is not None

    if best_value > 0:
        predicted = GameStatus.SPI_WIN
    elif best_value < 0:
        predicted = GameStatus.HUMAN_WIN
    else:
        predicted = GameStatus.DRAW
    chosen = apply_move(board, best_square, Player.SPI)
    return MoveDecision(
        square=best_square,
        predicted=predicted,
        immediate_win=winner(chosen) is Player.SPI,
    )


def clear_memo() -> None:
    """Drop the shared memo (mainly for tests measuring cold solves)."""
    _memo.clear()

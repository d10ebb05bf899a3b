from __future__ import annotations

import pytest

from spi_tictactoe.game import Board, SquareState, empty_board
from spi_tictactoe.policy_table import PolicyTable, build_table


@pytest.fixture(scope="session")
def table() -> PolicyTable:
    return build_table()


def make_board(spi: tuple[int, ...] = (), human: tuple[int, ...] = ()) -> Board:
    """Board with the given squares (1..9) occupied, everything else empty."""
    assert not set(spi) & set(human)
    squares = list(empty_board())
    for sq in spi:
        squares[sq - 1] = SquareState.SPI
    for sq in human:
        squares[sq - 1] = SquareState.HUMAN
    return tuple(squares)


# The eight dihedral symmetries of the grid, as permutations p where
# transformed[i] = original[p[i]] (0-based indices).
def _rotate(p: tuple[int, ...]) -> tuple[int, ...]:
    # 90-degree clockwise: new (r, c) reads old (2 - c, r)
    return tuple(p[3 * (2 - c) + r] for r in range(3) for c in range(3))


def _mirror(p: tuple[int, ...]) -> tuple[int, ...]:
    return tuple(p[3 * r + (2 - c)] for r in range(3) for c in range(3))


def dihedral_permutations() -> list[tuple[int, ...]]:
    identity = tuple(range(9))
    perms = [identity]
    p = identity
    for _ in range(3):
        p = _rotate(p)
        perms.append(p)
    p = _mirror(identity)
    perms.append(p)
    for _ in range(3):
        p = _rotate(p)
        perms.append(p)
    return perms


def permute_board(board: Board, perm: tuple[int, ...]) -> Board:
    return tuple(board[perm[i]] for i in range(9))

from __future__ import annotations

import random

import pytest

from spi_tictactoe.errors import NotSpisTurnError, TerminalStateError
from spi_tictactoe.game import (
    GameStatus,
    Player,
    SquareState,
    apply_move,
    counts,
    decode_key,
    empty_board,
    enumerate_reachable,
    game_status,
    legal_moves,
    winner,
)
from spi_tictactoe.minimax import (
    PREFERENCE_ORDER,
    WIN_SCORE,
    best_move,
    minimax_value,
)

from conftest import dihedral_permutations, make_board, permute_board


def plain_minimax(board, to_move, depth):
    """Independent oracle: bare recursion, no memo, no pruning."""
    w = winner(board)
    if w is Player.SPI:
        return WIN_SCORE - depth
    if w is Player.HUMAN:
        return -WIN_SCORE + depth
    if SquareState.EMPTY not in board:
        return 0
    values = [
        plain_minimax(apply_move(board, sq, to_move), to_move.opponent, depth + 1)
        for sq in sorted(legal_moves(board))
    ]
    return max(values) if to_move is Player.SPI else min(values)


def reachable_pairs():
    """All (board, side to move) pairs arising under either first mover."""
    pairs = set()
    for first in Player:
        for key in enumerate_reachable(first):
            board = decode_key(key)
            n_spi, n_human = counts(board)
            to_move = first if n_spi == n_human else first.opponent
            pairs.add((board, to_move))
    return sorted(pairs, key=lambda p: (p[0], p[1].value))


class TestMinimaxValue:
    def test_empty_board_is_draw_for_either_mover(self):
        assert minimax_value(empty_board(), Player.SPI) == 0
        assert minimax_value(empty_board(), Player.HUMAN) == 0

    def test_forced_one_ply_win_is_positive(self):
        board = make_board(spi=(1, 2), human=(4, 5))
        assert minimax_value(board, Player.SPI) > 0

    def test_oracle_value_of_corner_vs_center(self):
        # machine took a corner, human answered in the center
        board = make_board(spi=(1,), human=(5,))
        assert minimax_value(board, Player.HUMAN) == 0  # frozen oracle output

    def test_terminal_leaf_scores_follow_depth(self):
        spi_won = make_board(spi=(1, 2, 3), human=(4, 5))
        human_won = make_board(human=(3, 5, 7), spi=(1, 2))
        drawn = make_board(human=(1, 3, 4, 8, 9), spi=(2, 5, 6, 7))
        for depth in (0, 3, 7):
            assert minimax_value(spi_won, Player.HUMAN, depth) == WIN_SCORE - depth
            assert minimax_value(human_won, Player.SPI, depth) == -WIN_SCORE + depth
            assert minimax_value(drawn, Player.SPI, depth) == 0

    def test_agrees_with_plain_oracle_on_sampled_states(self):
        rng = random.Random(20240811)
        pairs = reachable_pairs()
        for board, to_move in rng.sample(pairs, 250):
            assert minimax_value(board, to_move) == plain_minimax(board, to_move, 0)


class TestBestMove:
    def test_opens_in_the_center(self):
        decision = best_move(empty_board())
        assert decision.square == 5
        assert decision.predicted is GameStatus.DRAW
        assert not decision.immediate_win

    def test_completes_a_line_when_possible(self):
        decision = best_move(make_board(spi=(1, 2), human=(4, 5)))
        assert decision.square == 3
        assert decision.immediate_win
        assert decision.predicted is GameStatus.SPI_WIN

    def test_blocks_an_open_human_line(self):
        # human threatens 7-8-9; the machine has no win of its own
        decision = best_move(make_board(spi=(2, 4), human=(7, 8)))
        assert decision.square == 9
        assert not decision.immediate_win

    def test_terminal_board_rejected(self):
        with pytest.raises(TerminalStateError):
            best_move(make_board(spi=(1, 2, 3), human=(4, 5)))

    def test_not_machines_turn_rejected(self):
        with pytest.raises(NotSpisTurnError):
            best_move(make_board(spi=(5,)))

    def test_unreachable_counts_rejected(self):
        with pytest.raises(ValueError):
            best_move(make_board(human=(1, 2, 4)))

    def test_deterministic(self):
        board = make_board(spi=(5,), human=(1,))
        assert best_move(board) == best_move(board)

    def test_prefers_immediate_wins_everywhere(self):
        # depth shaping: whenever some move wins on the spot, the chosen one does
        for board, to_move in reachable_pairs():
            if to_move is not Player.SPI:
                continue
            if game_status(board) is not GameStatus.IN_PROGRESS:
                continue
            immediate = {
                sq for sq in legal_moves(board)
                if winner(apply_move(board, sq, Player.SPI)) is Player.SPI
            }
            if immediate:
                decision = best_move(board)
                assert decision.square in immediate
                assert decision.immediate_win

    def test_immediate_win_flag_matches_definition(self):
        for board, to_move in reachable_pairs():
            if to_move is not Player.SPI:
                continue
            if game_status(board) is not GameStatus.IN_PROGRESS:
                continue
            decision = best_move(board)
            after = apply_move(board, decision.square, Player.SPI)
            assert decision.immediate_win == (winner(after) is Player.SPI)


class TestArgmaxSymmetry:
    @staticmethod
    def optimal_squares(board):
        best = None
        squares = []
        for sq in sorted(legal_moves(board)):
            child = apply_move(board, sq, Player.SPI)
            v = minimax_value(child, Player.HUMAN, 1)
            if best is None or v > best:
                best, squares = v, [sq]
            elif v == best:
                squares.append(sq)
        return frozenset(squares)

    def test_optimal_square_sets_commute_with_symmetries(self):
        rng = random.Random(7)
        spi_to_move = [
            (b, m) for b, m in reachable_pairs()
            if m is Player.SPI and game_status(b) is GameStatus.IN_PROGRESS
        ]
        for board, _ in rng.sample(spi_to_move, 120):
            base = self.optimal_squares(board)
            for perm in dihedral_permutations():
                transformed = permute_board(board, perm)
                # square j of the transformed board reads square perm[j-1]+1
                expected = frozenset(
                    j + 1 for j in range(9) if perm[j] + 1 in base
                )
                assert self.optimal_squares(transformed) == expected

    def test_preference_order_is_center_corners_edges(self):
        assert PREFERENCE_ORDER == (5, 1, 3, 7, 9, 2, 4, 6, 8)

"""Simulated single-pixel-imaging Tic-Tac-Toe player.

The machine senses the board through nine structured-illumination
measurements, retrieves its precomputed optimal response from a lookup
table, and answers with one of nineteen display patterns. This package
simulates that whole pipeline and adds batch evaluation against a
random opponent plus an HTTP service for live browser play.
"""

from .game import (
    Board,
    GameStatus,
    Player,
    SquareState,
    apply_move,
    board_from_codes,
    decode_key,
    empty_board,
    encode_key,
    enumerate_reachable,
    game_status,
    legal_moves,
    winner,
)
from .minimax import MoveDecision, best_move, minimax_value
from .optics import (
    GeometryConfig,
    IlluminationMask,
    PhotometryConfig,
    SceneImage,
    Thresholds,
    classify,
    default_thresholds,
    detection_mask,
    display_pattern_mask,
    measure,
    render_board,
    scan_state,
    write_pgm,
)
from .policy_table import (
    OutputCode,
    OutputKind,
    PolicyTable,
    build_table,
    deserialize,
    serialize,
    verify_table,
)
from .session import (
    BatchStats,
    GameSession,
    TurnRecord,
    human_turn,
    new_session,
    random_agent,
    run_batch,
    session_trace_jsonl,
    spi_turn,
)

__version__ = "0.1.0"

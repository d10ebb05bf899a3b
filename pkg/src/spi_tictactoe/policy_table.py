"""Precomputed state-to-output-code policy: offline build, lookup, codecs.

The table maps every board the machine player can be asked to respond
to onto one of 19 display patterns (or the no-action sentinel). Built
once offline by minimax, it makes live play a single retrieval.

Output code byte values (shared by the binary and JSON formats):
0-8 move to squares 1-9, 9 human-already-won, 10-18 winning move to
squares 1-9, 255 no action. Binary layout: magic "TTTL", version byte,
u32-LE entry count, then (u16-LE state key, code byte) records.
"""

from __future__ import annotations

import time
from dataclasses import dataclass, field
from enum import Enum
from io import BytesIO
import json
import struct
from typing import Optional

from .errors import CorruptTableError, UnknownStateError
from .game import (
    Board,
    GameStatus,
    NUM_STATES,
    Player,
    SquareState,
    apply_move,
    counts,
    decode_key,
    empty_board,
    encode_key,
    enumerate_reachable,
    game_status,
    legal_moves,
    winner,
)
from .minimax import best_move

TABLE_MAGIC = b"TTTL"
TABLE_VERSION = 1
NO_ACTION_BYTE = 0xFF

# Only tie-break rule ever shipped; version 1 tables imply it.
TIE_BREAK_RULE_ID = "center-corners-edges-v1"


class OutputKind(Enum):
    MOVE = "move"
    HUMAN_WON = "human_won"
    NO_ACTION = "no_action"


@dataclass(frozen=True)
class OutputCode:
    """One of the 19 display patterns, or the unlit no-action sentinel."""

    kind: OutputKind
    square: Optional[int] = None
    winning: bool = False

    def __post_init__(self) -> None:
        if self.kind is OutputKind.MOVE:
            if self.square is None or not 1 <= self.square <= 9:
                raise ValueError("move codes need a square in 1..9")
        elif self.square is not None or self.winning:
            raise ValueError(f"{self.kind.value} codes carry no square/winning flag")

    @staticmethod
    def move(square: int, winning: bool = False) -> "OutputCode":
        return OutputCode(OutputKind.MOVE, square, winning)

    @property
    def pattern_index(self) -> Optional[int]:
        """Display pattern number 1..19; None for the no-action sentinel.

        Patterns 1-9 are plain moves, 10 flags a human win, 11-19 are
        winning moves that also light the "You lose" strip.
        """
        if self.kind is OutputKind.MOVE:
            assert self.square is not None
            return 10 + self.square if self.winning else self.square
        if self.kind is OutputKind.HUMAN_WON:
            return 10
        return None

    def to_byte(self) -> int:
        if self.kind is OutputKind.MOVE:
            assert self.square is not None
            return (9 + self.square) if self.winning else (self.square - 1)
        if self.kind is OutputKind.HUMAN_WON:
            return 9
        return NO_ACTION_BYTE

    @staticmethod
    def from_byte(value: int) -> "OutputCode":
        if 0 <= value <= 8:
            return OutputCode.move(value + 1, winning=False)
        if value == 9:
            return HUMAN_WON
        if 10 <= value <= 18:
            return OutputCode.move(value - 9, winning=True)
        if value == NO_ACTION_BYTE:
            return NO_ACTION
        raise CorruptTableError(f"invalid output code byte {value}")


HUMAN_WON = OutputCode(OutputKind.HUMAN_WON)
NO_ACTION = OutputCode(OutputKind.NO_ACTION)


@dataclass(frozen=True)
class TableMeta:
    version: int
    entry_count: int
    tie_break_rule_id: str
    built_at: Optional[str] = field(default=None, compare=False)


@dataclass(frozen=True)
class PolicyTable:
    """Immutable map from state key to output code; safe to share."""

    entries: dict[int, OutputCode]
    meta: TableMeta

    def lookup(self, board: Board) -> OutputCode:
        """Stored code for `board`; raises UnknownStateError when absent."""
        return self.lookup_key(encode_key(board))

    def lookup_key(self, key: int) -> OutputCode:
        code = self.entries.get(key)
        if code is None:
            raise UnknownStateError(key)
        return code

    def __len__(self) -> int:
        return len(self.entries)


def _make_meta(entry_count: int, built_at: Optional[str]) -> TableMeta:
    return TableMeta(
        version=TABLE_VERSION,
        entry_count=entry_count,
        tie_break_rule_id=TIE_BREAK_RULE_ID,
        built_at=built_at,
    )


def build_table() -> PolicyTable:
    """Solve every queryable state offline and store its output code.

    Covers boards reachable under either first mover, excluding only
    live positions where it is strictly the human's turn (the scanner
    runs after a human move or at game start, never mid-human-turn):
    human already won -> human-won code; any other finished board ->
    no-action; machine to move -> its optimal move, flagged when the
    move completes a line.
    """
    reachable_spi_first = enumerate_reachable(Player.SPI)
    reachable_human_first = enumerate_reachable(Player.HUMAN)

    entries: dict[int, OutputCode] = {}
    for key in sorted(reachable_spi_first | reachable_human_first):
        board = decode_key(key)
        status = game_status(board)
        if status is GameStatus.HUMAN_WIN:
            entries[key] = HUMAN_WON
        elif status is not GameStatus.IN_PROGRESS:
            entries[key] = NO_ACTION
        else:
            n_spi, n_human = counts(board)
            spi_to_move = (n_spi == n_human and key in reachable_spi_first) or (
                n_human == n_spi + 1
            )
            if spi_to_move:
                decision = best_move(board)
                entries[key] = OutputCode.move(decision.square, decision.immediate_win)
    built_at = time.strftime("%Y-%m-%dT%H:%M:%SZ", time.gmtime())
    return PolicyTable(entries=entries, meta=_make_meta(len(entries), built_at))


def playable_scan_keys(table: PolicyTable) -> frozenset[int]:
    """Keys of every board the scanner can present to this table in play.

    Walks all games under the live rules for both first movers: the
    machine follows the table's own move codes, the human branches over
    every legal reply, and a scan happens at game start (machine first)
    and after each human move.
    """
    seen: set[int] = set()

    def visit(board: Board) -> None:
        key = encode_key(board)
        if key in seen:
            return
        seen.add(key)
        code = table.lookup_key(key)
        if code.kind is not OutputKind.MOVE:
            return
        assert code.square is not None
        after_spi = apply_move(board, code.square, Player.SPI)
        if game_status(after_spi) is not GameStatus.IN_PROGRESS:
            return
        for square in sorted(legal_moves(after_spi)):
            visit(apply_move(after_spi, square, Player.HUMAN))

    visit(empty_board())  # machine opens
    for square in sorted(legal_moves(empty_board())):  # human opens
        visit(apply_move(empty_board(), square, Player.HUMAN))
    return frozenset(seen)


def expected_entry_count() -> tuple[int, int, int]:
    """Independent (move, human-won, no-action) domain counts.

    Pure reachability BFS plus board classification; no minimax
    involved, so it cross-checks build_table's domain.
    """
    reachable_spi_first = enumerate_reachable(Player.SPI)
    union = reachable_spi_first | enumerate_reachable(Player.HUMAN)
    n_move = n_human_won = n_no_action = 0
    for key in union:
        board = decode_key(key)
        status = game_status(board)
        if status is GameStatus.HUMAN_WIN:
            n_human_won += 1
        elif status is not GameStatus.IN_PROGRESS:
            n_no_action += 1
        else:
            n_spi, n_human = counts(board)
            if (n_spi == n_human and key in reachable_spi_first) or n_human == n_spi + 1:
                n_move += 1
    return n_move, n_human_won, n_no_action


def verify_table(table: PolicyTable) -> list[str]:
    """Integrity checks for a built or loaded table; returns failures.

    Checks totality over all boards reachable during play, agreement of
    every move code with a fresh minimax solve, winning-flag
    correctness, the entry count against the independent enumeration,
    and serialization round-trips in both formats.
    """
    failures: list[str] = []

    try:
        scanned = playable_scan_keys(table)
    except Exception as exc:  # UnknownState or a corrupt move code
        failures.append(f"totality: play walk failed: {exc!r}")
        scanned = frozenset()
    missing = scanned - table.entries.keys()
    if missing:
        failures.append(f"totality: {len(missing)} scannable boards missing")

    for key, code in table.entries.items():
        board = decode_key(key)
        if code.kind is OutputKind.MOVE:
            assert code.square is not None
            if board[code.square - 1] is not SquareState.EMPTY:
                failures.append(f"key {key}: move onto occupied square {code.square}")
                continue
            decision = best_move(board)
            if decision.square != code.square:
                failures.append(
                    f"key {key}: stored square {code.square} != optimal {decision.square}"
                )
            after = apply_move(board, code.square, Player.SPI)
            if code.winning != (winner(after) is Player.SPI):
                failures.append(f"key {key}: winning flag wrong for square {code.square}")
        elif code.kind is OutputKind.HUMAN_WON:
            if winner(board) is not Player.HUMAN:
                failures.append(f"key {key}: human-won code but human has no line")
        else:
            status = game_status(board)
            if status in (GameStatus.IN_PROGRESS, GameStatus.HUMAN_WIN):
                failures.append(f"key {key}: no-action code on a {status.value} board")

    n_move, n_human_won, n_no_action = expected_entry_count()
    expected_total = n_move + n_human_won + n_no_action
    if len(table) != expected_total:
        failures.append(
            f"entry count {len(table)} != enumerated {expected_total} "
            f"({n_move} move + {n_human_won} human-won + {n_no_action} no-action)"
        )

    for fmt in ("binary", "json"):
        round_tripped = deserialize(serialize(table, fmt))
        if round_tripped.entries != table.entries:
            failures.append(f"{fmt} round-trip changed entries")
        elif round_tripped.meta.version != table.meta.version:
            failures.append(f"{fmt} round-trip changed version")

    return failures


def serialize(table: PolicyTable, fmt: str = "binary") -> bytes:
    """Encode a table as bytes; `fmt` is "binary" or "json"."""
    items = sorted(table.entries.items())
    if fmt == "binary":
        out = BytesIO()
        out.write(TABLE_MAGIC)
        out.write(bytes([TABLE_VERSION]))
        out.write(struct.pack("<I", len(items)))
        for key, code in items:
            out.write(struct.pack("<HB", key, code.to_byte()))
        return out.getvalue()
    if fmt == "json":
        doc = {
            "version": TABLE_VERSION,
            "entries": [{"key": k, "code": c.to_byte()} for k, c in items],
        }
        return json.dumps(doc, separators=(",", ":")).encode("utf-8")
    raise ValueError(f"unknown table format {fmt!r}")


def deserialize(data: bytes) -> PolicyTable:
    """Decode either serialization format, validating structure throughout."""
    if data[:4] == TABLE_MAGIC:
        return _deserialize_binary(data)
    return _deserialize_json(data)


def _check_entry(key: int, entries: dict[int, OutputCode]) -> None:
    if not 0 <= key < NUM_STATES:
        raise CorruptTableError(f"state key {key} out of range")
    if key in entries:
        raise CorruptTableError(f"duplicate state key {key}")


def _deserialize_binary(data: bytes) -> PolicyTable:
    header = len(TABLE_MAGIC) + 1 + 4
    if len(data) < header:
        raise CorruptTableError("truncated header")
    version = data[4]
    if version != TABLE_VERSION:
        raise CorruptTableError(f"unsupported table version {version}")
    (count,) = struct.unpack_from("<I", data, 5)
    if len(data) != header + 3 * count:
        raise CorruptTableError(
            f"byte length {len(data)} does not match entry count {count}"
        )
    entries: dict[int, OutputCode] = {}
    for i in range(count):
        key, code_byte = struct.unpack_from("<HB", data, header + 3 * i)
        _check_entry(key, entries)
        entries[key] = OutputCode.from_byte(code_byte)
    return PolicyTable(entries=entries, meta=_make_meta(count, None))


def _deserialize_json(data: bytes) -> PolicyTable:
    try:
        doc = json.loads(data.decode("utf-8"))
    except (UnicodeDecodeError, json.JSONDecodeError) as exc:
        raise CorruptTableError(f"not a table file: {exc}") from exc
    if not isinstance(doc, dict) or "version" not in doc or "entries" not in doc:
        raise CorruptTableError("missing version/entries fields")
    if doc["version"] != TABLE_VERSION:
        raise CorruptTableError(f"unsupported table version {doc['version']}")
    if not isinstance(doc["entries"], list):
        raise CorruptTableError("entries must be a list")
    entries: dict[int, OutputCode] = {}
    for item in doc["entries"]:
        if not isinstance(item, dict) or "key" not in item or "code" not in item:
            raise CorruptTableError(f"malformed entry {item!r}")
        key, code = item["key"], item["code"]
        if not isinstance(key, int) or not isinstance(code, int):
            raise CorruptTableError(f"non-integer entry {item!r}")
        _check_entry(key, entries)
        entries[key] = OutputCode.from_byte(code)
    return PolicyTable(entries=entries, meta=_make_meta(len(entries), None))

"""Command-line entry points.

    spi-tictactoe build-table  --out PATH [--format bin|json]
    spi-tictactoe verify-table --table PATH
    spi-tictactoe simulate     --games N --first spi|random --seed S [--sigma F]
    spi-tictactoe play         --first spi|human [--sigma F]
    spi-tictactoe serve        --port P --table PATH [--static DIR] [--sigma F]

Exit codes: 0 success, 1 verification failure, 2 usage error.
"""

from __future__ import annotations

import argparse
import sys
from pathlib import Path

from .errors import (
    DetectionMismatchError,
    OccupiedSquareError,
    SpiTicTacToeError,
)
from .game import GameStatus, Player, SquareState
from .optics import PhotometryConfig
from .policy_table import (
    OutputKind,
    PolicyTable,
    build_table,
    deserialize,
    serialize,
    verify_table,
)
from .session import human_turn, new_session, spi_turn

_CELL = {SquareState.HUMAN: "X", SquareState.EMPTY: ".", SquareState.SPI: "O"}


def _load_table(path: str) -> PolicyTable:
    return deserialize(Path(path).read_bytes())


def _cmd_build_table(args: argparse.Namespace) -> int:
    table = build_table()
    fmt = "binary" if args.format == "bin" else "json"
    Path(args.out).write_bytes(serialize(table, fmt))
    print(f"wrote {len(table)} entries to {args.out} ({fmt})")
    return 0


def _cmd_verify_table(args: argparse.Namespace) -> int:
    try:
        table = _load_table(args.table)
    except (OSError, SpiTicTacToeError) as exc:
        print(f"FAIL load: {exc}")
        return 1
    failures = verify_table(table)
    if failures:
        for line in failures:
            print(f"FAIL {line}")
        return 1
    print(f"OK {len(table)} entries: totality, move-optimality, winning flags, "
          "entry count, serialization round-trips")
    return 0


def _cmd_simulate(args: argparse.Namespace) -> int:
    from .session import run_batch

    first = Player.SPI if args.first == "spi" else Player.HUMAN
    table = build_table()
    stats = run_batch(table, args.games, first, args.seed, noise_sigma=args.sigma)
    print(f"games={stats.games} first={args.first} seed={stats.seed} sigma={args.sigma}")
    for label, n in (("win", stats.wins), ("draw", stats.draws), ("lose", stats.losses)):
        print(f"{label:7s} {n:6d}  {100.0 * n / stats.games:6.2f}%")
    if stats.faulted:
        print(f"faulted {stats.faulted:6d}  {100.0 * stats.faulted / stats.games:6.2f}%")
    return 0


def _print_board(board) -> None:
    for row in range(3):
        cells = " | ".join(_CELL[board[3 * row + c]] for c in range(3))
        print(f"  {cells}")
        if row < 2:
            print("  ---------")


def _cmd_play(args: argparse.Namespace) -> int:
    table = build_table()
    photometry = PhotometryConfig(noise_sigma=args.sigma)
    first = Player.SPI if args.first == "spi" else Player.HUMAN
    session = new_session(table, first, photometry=photometry)
    print("You play X (black cards); the machine plays O (white cards).")
    print("Squares are numbered 1..9, row by row from the top left.\n")

    def machine_turn() -> None:
        record = spi_turn(session)
        code = record.output_code
        assert code is not None
        if code.kind is OutputKind.MOVE:
            print(f"machine illuminates square {code.square}"
                  f" (pattern {record.pattern_index})")
            if code.winning:
                print("the 'You lose' strip lights up")
        elif code.kind is OutputKind.HUMAN_WON:
            print("the 'You win' strip lights up (pattern 10)")

    try:
        if first is Player.SPI:
            machine_turn()
        while session.status is GameStatus.IN_PROGRESS:
            _print_board(session.board)
            try:
                square = int(input("your move (1-9): "))
            except ValueError:
                print("enter a number from 1 to 9")
                continue
            try:
                human_turn(session, square)
            except (OccupiedSquareError, ValueError) as exc:
                print(exc)
                continue
            machine_turn()
    except (EOFError, KeyboardInterrupt):
        print("\nbye")
        return 0
    except DetectionMismatchError:
        print("persistent scan mismatch; game aborted")
        return 1

    _print_board(session.board)
    print({GameStatus.SPI_WIN: "machine wins",
           GameStatus.HUMAN_WIN: "you win",
           GameStatus.DRAW: "draw"}[session.status])
    return 0


def _cmd_serve(args: argparse.Namespace) -> int:
    import uvicorn

    from .server import create_app

    app = create_app(
        _load_table(args.table),
        noise_sigma=args.sigma,
        static_dir=args.static,
    )
    uvicorn.run(app, host=args.host, port=args.port, log_level="warning")
    return 0


def main(argv: list[str] | None = None) -> int:
    parser = argparse.ArgumentParser(
        prog="spi-tictactoe",
        description="Single-pixel-imaging Tic-Tac-Toe player simulator",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    p_build = sub.add_parser("build-table", help="precompute the policy table")
    p_build.add_argument("--out", required=True)
    p_build.add_argument("--format", choices=("bin", "json"), default="bin")
    p_build.set_defaults(func=_cmd_build_table)

    p_verify = sub.add_parser("verify-table", help="check a stored table")
    p_verify.add_argument("--table", required=True)
    p_verify.set_defaults(func=_cmd_verify_table)

    p_sim = sub.add_parser("simulate", help="batch games vs the random player")
    p_sim.add_argument("--games", type=int, required=True)
    p_sim.add_argument("--first", choices=("spi", "random"), required=True)
    p_sim.add_argument("--seed", type=int, required=True)
    p_sim.add_argument("--sigma", type=float, default=0.02)
    p_sim.set_defaults(func=_cmd_simulate)

    p_play = sub.add_parser("play", help="interactive terminal game")
    p_play.add_argument("--first", choices=("spi", "human"), required=True)
    p_play.add_argument("--sigma", type=float, default=0.02)
    p_play.set_defaults(func=_cmd_play)

    p_serve = sub.add_parser("serve", help="HTTP service for the browser UI")
    p_serve.add_argument("--port", type=int, required=True)
    p_serve.add_argument("--table", required=True)
    p_serve.add_argument("--static", default=None)
    p_serve.add_argument("--sigma", type=float, default=0.02)
    p_serve.add_argument("--host", default="127.0.0.1")
    p_serve.set_defaults(func=_cmd_serve)

    args = parser.parse_args(argv)
    return args.func(args)


if __name__ == "__main__":
    sys.exit(main())

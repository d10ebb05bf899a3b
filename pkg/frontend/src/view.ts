// Pure mapping from server snapshots to what the board should show.
// Re-rendering the same snapshot always yields the same view.

import type { Snapshot } from "./api.js";

export type CellState = "gray" | "black_card" | "white_card";
export type Banner = "you_win" | "you_lose" | "draw" | null;

export interface PatternDecoding {
    square: number | null; // highlighted square, 1..9
    topStrip: boolean; // the "You lose" indicator
    bottomStrip: boolean; // the "You win" indicator
}

export interface BoardView {
    cells: CellState[];
    interactive: boolean[];
    highlightedSquares: Set<number>;
    topStripLit: boolean;
    bottomStripLit: boolean;
    banner: Banner;
}

const CELL_OF_CODE: Record<number, CellState> = {
    1: "black_card",
    2: "gray",
    3: "white_card",
};

/** Inverse of the server's display-pattern numbering (1..19). */
export function decodePatternIndex(index: number): PatternDecoding {
    if (!Number.isInteger(index) || index < 1 || index > 19) {
        throw new RangeError(`pattern index ${index} outside 1..19`);
    }
    if (index <= 9) {
        return { square: index, topStrip: false, bottomStrip: false };
    }
    if (index === 10) {
        return { square: null, topStrip: false, bottomStrip: true };
    }
    return { square: index - 10, topStrip: true, bottomStrip: false };
}

export function toView(snapshot: Snapshot): BoardView {
    if (!Array.isArray(snapshot.board) || snapshot.board.length !== 9) {
        throw new Error("snapshot board must have nine squares");
    }
    const cells = snapshot.board.map((code) => {
        const cell = CELL_OF_CODE[code];
        if (cell === undefined) {
            throw new Error(`unknown square code ${code}`);
        }
        return cell;
    });

    const highlightedSquares = new Set<number>();
    let topStripLit = false;
    let bottomStripLit = false;
    let banner: Banner = null;

    if (snapshot.last_pattern_index !== null) {
        const decoded = decodePatternIndex(snapshot.last_pattern_index);
        if (decoded.square !== null) highlightedSquares.add(decoded.square);
        topStripLit = decoded.topStrip;
        bottomStripLit = decoded.bottomStrip;
        if (decoded.topStrip) banner = "you_lose";
        if (decoded.bottomStrip) banner = "you_win";
    }
    if (snapshot.status === "draw") {
        banner = "draw";
    }

    const playable =
        snapshot.status === "in_progress" && snapshot.to_move === "human";
    const interactive = cells.map((cell) => playable && cell === "gray");

    return {
        cells,
        interactive,
        highlightedSquares,
        topStripLit,
        bottomStripLit,
        banner,
    };
}

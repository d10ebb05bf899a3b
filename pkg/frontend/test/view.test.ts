import { describe, expect, it } from "vitest";

import { decodePatternIndex, toView } from "../dist/view.js";
import type { Snapshot } from "../src/api.js";

function snapshot(overrides: Partial<Snapshot> = {}): Snapshot {
    return {
        game_id: "g1",
        board: [2, 2, 2, 2, 2, 2, 2, 2, 2],
        status: "in_progress",
        to_move: "human",
        last_measurements: null,
        last_pattern_index: null,
        move_count: 0,
        ...overrides,
    };
}

// the server's encoding of output codes into pattern numbers
function encodePattern(square: number | null, topStrip: boolean, bottomStrip: boolean): number {
    if (bottomStrip) return 10;
    if (topStrip && square !== null) return 10 + square;
    if (square !== null) return square;
    throw new Error("not a pattern");
}

describe("decodePatternIndex", () => {
    it("is the inverse of the server encoding for all 19 patterns", () => {
        const seen = new Set<string>();
        for (let index = 1; index <= 19; index += 1) {
            const decoded = decodePatternIndex(index);
            expect(encodePattern(decoded.square, decoded.topStrip, decoded.bottomStrip)).toBe(index);
            seen.add(JSON.stringify(decoded));
        }
        expect(seen.size).toBe(19);
    });

    it("maps the three ranges to their regions", () => {
        expect(decodePatternIndex(5)).toEqual({ square: 5, topStrip: false, bottomStrip: false });
        expect(decodePatternIndex(10)).toEqual({ square: null, topStrip: false, bottomStrip: true });
        expect(decodePatternIndex(12)).toEqual({ square: 2, topStrip: true, bottomStrip: false });
        expect(decodePatternIndex(19)).toEqual({ square: 9, topStrip: true, bottomStrip: false });
    });

    it("rejects indices outside 1..19", () => {
        for (const bad of [0, 20, -3, 2.5]) {
            expect(() => decodePatternIndex(bad)).toThrow(RangeError);
        }
    });
});

describe("toView", () => {
    it("maps board codes onto card states", () => {
        const view = toView(snapshot({ board: [1, 2, 3, 2, 3, 2, 2, 2, 1] }));
        expect(view.cells[0]).toBe("black_card");
        expect(view.cells[1]).toBe("gray");
        expect(view.cells[2]).toBe("white_card");
    });

    it("highlights the machine's opening square", () => {
        const view = toView(snapshot({
            board: [2, 2, 2, 2, 3, 2, 2, 2, 2],
            last_pattern_index: 5,
            move_count: 1,
        }));
        expect(view.cells[4]).toBe("white_card");
        expect(view.highlightedSquares).toEqual(new Set([5]));
        expect(view.topStripLit).toBe(false);
        expect(view.banner).toBeNull();
    });

    it("shows the losing banner for winning-move patterns", () => {
        const view = toView(snapshot({
            board: [3, 3, 3, 1, 2, 2, 1, 2, 1],
            status: "spi_win",
            to_move: "none",
            last_pattern_index: 12,
        }));
        expect(view.highlightedSquares).toEqual(new Set([2]));
        expect(view.topStripLit).toBe(true);
        expect(view.bottomStripLit).toBe(false);
        expect(view.banner).toBe("you_lose");
        expect(view.interactive.every((v) => !v)).toBe(true);
    });

    it("shows the winning banner for pattern ten", () => {
        const view = toView(snapshot({
            board: [1, 3, 3, 2, 1, 2, 2, 2, 1],
            status: "human_win",
            to_move: "none",
            last_pattern_index: 10,
        }));
        expect(view.bottomStripLit).toBe(true);
        expect(view.topStripLit).toBe(false);
        expect(view.highlightedSquares.size).toBe(0);
        expect(view.banner).toBe("you_win");
    });

    it("shows the draw banner with no highlight", () => {
        const view = toView(snapshot({
            board: [1, 3, 1, 1, 3, 3, 3, 1, 1],
            status: "draw",
            to_move: "none",
            last_pattern_index: null,
        }));
        expect(view.banner).toBe("draw");
        expect(view.highlightedSquares.size).toBe(0);
        expect(view.interactive.every((v) => !v)).toBe(true);
    });

    it("marks only gray cells interactive on the human's turn", () => {
        const view = toView(snapshot({
            board: [3, 2, 2, 1, 2, 2, 2, 2, 2],
            last_pattern_index: 1,
        }));
        expect(view.interactive[0]).toBe(false);
        expect(view.interactive[3]).toBe(false);
        expect(view.interactive[1]).toBe(true);
    });

    it("disables everything while the machine is to move", () => {
        const view = toView(snapshot({ to_move: "spi" }));
        expect(view.interactive.every((v) => !v)).toBe(true);
    });

    it("rejects malformed snapshots", () => {
        expect(() => toView(snapshot({ board: [2, 2] }))).toThrow();
        expect(() => toView(snapshot({ board: [9, 2, 2, 2, 2, 2, 2, 2, 2] }))).toThrow();
    });
});

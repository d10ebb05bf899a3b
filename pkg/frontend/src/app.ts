// Screen wiring: setup screen, live board, strips, banner, chart, and
// the move log. All state comes from the latest Snapshot (plus trace);
// the client never computes moves or winners itself.

import { ApiError, GameApi } from "./api.js";
import type { Snapshot, TurnRecordJson } from "./api.js";
import { renderIntensityChart } from "./chart.js";
import { toView } from "./view.js";
import type { Banner } from "./view.js";

const BANNER_TEXT: Record<Exclude<Banner, null>, string> = {
    you_win: "You win",
    you_lose: "You lose",
    draw: "Draw",
};

export class App {
    private readonly api: GameApi;
    private snapshot: Snapshot | null = null;
    private trace: TurnRecordJson[] = [];
    private inflight: Promise<void> | null = null;

    constructor(private readonly root: HTMLElement, baseUrl: string = "") {
        this.api = new GameApi(baseUrl);
        this.renderSetup();
    }

    /** Settles once the currently pending request (if any) finished. */
    idle(): Promise<void> {
        return this.inflight ?? Promise.resolve();
    }

    /** Render a given server state directly, bypassing the setup screen. */
    renderSnapshot(snapshot: Snapshot, trace: TurnRecordJson[] = []): void {
        this.snapshot = snapshot;
        this.trace = trace;
        this.renderGame();
    }

    get currentSnapshot(): Snapshot | null {
        return this.snapshot;
    }

    renderSetup(): void {
        this.snapshot = null;
        this.trace = [];
        this.root.replaceChildren();

        const panel = document.createElement("div");
        panel.className = "setup";
        panel.appendChild(heading("Tic-Tac-Toe vs. the single-pixel player"));

        const intro = document.createElement("p");
        intro.textContent =
            "You play black cards; the machine senses the board square by " +
            "square and answers with an illuminated pattern.";
        panel.appendChild(intro);

        const humanFirst = button("btn-first-human", "I move first");
        humanFirst.addEventListener("click", () => {
            this.track(this.startGame("human"));
        });
        const spiFirst = button("btn-first-spi", "SPI moves first");
        spiFirst.addEventListener("click", () => {
            this.track(this.startGame("spi"));
        });
        panel.appendChild(humanFirst);
        panel.appendChild(spiFirst);
        this.root.appendChild(panel);
    }

    private async startGame(firstMover: "spi" | "human"): Promise<void> {
        try {
            this.snapshot = await this.api.createGame(firstMover);
            this.trace = await this.api.getTrace(this.snapshot.game_id);
            this.renderGame();
        } catch (error) {
            this.renderFatal(error);
        }
    }

    private async playSquare(square: number): Promise<void> {
        if (!this.snapshot) return;
        try {
            this.snapshot = await this.api.submitMove(this.snapshot.game_id, square);
            this.trace = await this.api.getTrace(this.snapshot.game_id);
            this.renderGame();
        } catch (error) {
            if (error instanceof ApiError && error.status === 409) {
                this.notice(`move rejected: ${error.message}`);
                return; // view unchanged; the board still matches the server
            }
            this.notice("network trouble; the move was not recorded - try again", true);
        }
    }

    private track(job: Promise<void>): void {
        const chained = job.finally(() => {
            if (this.inflight === chained) this.inflight = null;
        });
        this.inflight = chained;
    }

    private busy(): boolean {
        return this.inflight !== null;
    }

    renderGame(): void {
        if (!this.snapshot) return;
        this.root.replaceChildren();
        let view;
        try {
            view = toView(this.snapshot);
        } catch (error) {
            this.renderFatal(error);
            return;
        }

        const panel = document.createElement("div");
        panel.className = "game";

        const topStrip = strip("top-strip", "You lose", view.topStripLit);
        panel.appendChild(topStrip);

        const board = document.createElement("div");
        board.id = "board";
        board.className = "board";
        for (let square = 1; square <= 9; square += 1) {
            const cell = document.createElement("button");
            cell.className = `cell ${view.cells[square - 1]}`;
            cell.dataset.square = String(square);
            if (view.highlightedSquares.has(square)) {
                cell.classList.add("highlight");
            }
            cell.disabled = !view.interactive[square - 1];
            cell.addEventListener("click", () => {
                if (cell.disabled || this.busy()) return;
                this.track(this.playSquare(square));
            });
            board.appendChild(cell);
        }
        panel.appendChild(board);

        panel.appendChild(strip("bottom-strip", "You win", view.bottomStripLit));

        const bannerBox = document.createElement("div");
        bannerBox.id = "banner";
        bannerBox.className = "banner";
        if (view.banner) {
            bannerBox.textContent = BANNER_TEXT[view.banner];
            bannerBox.classList.add(view.banner);
        } else {
            bannerBox.classList.add("hidden");
        }
        panel.appendChild(bannerBox);

        const status = document.createElement("div");
        status.id = "status";
        status.textContent = this.statusLine();
        panel.appendChild(status);

        const noticeBox = document.createElement("div");
        noticeBox.id = "notice";
        noticeBox.className = "notice hidden";
        panel.appendChild(noticeBox);

        const chart = document.createElement("div");
        chart.id = "chart";
        chart.className = "chart";
        renderIntensityChart(chart, this.snapshot.last_measurements);
        panel.appendChild(chart);

        panel.appendChild(this.renderLog());

        const again = button("btn-new-game", "New game");
        again.addEventListener("click", () => this.renderSetup());
        panel.appendChild(again);

        this.root.appendChild(panel);
    }

    private renderLog(): HTMLElement {
        const log = document.createElement("ol");
        log.id = "log";
        log.className = "log";
        for (const turn of this.trace) {
            const item = document.createElement("li");
            if (turn.square !== null) {
                const actor = turn.actor === "spi" ? "machine" : "you";
                item.textContent = `${actor} -> square ${turn.square}`;
            } else if (turn.output_code?.kind === "human_won") {
                item.textContent = "machine scan: you already won";
            } else {
                item.textContent = "machine scan: board full, nothing to do";
            }
            if (turn.pattern_index !== null) {
                item.textContent += ` (pattern ${turn.pattern_index})`;
            }
            log.appendChild(item);
        }
        return log;
    }

    private statusLine(): string {
        const snapshot = this.snapshot;
        if (!snapshot) return "";
        switch (snapshot.status) {
            case "in_progress":
                return snapshot.to_move === "human"
                    ? "your turn: pick a gray square"
                    : "machine is scanning...";
            case "human_win":
                return "game over: you beat the machine";
            case "spi_win":
                return "game over: the machine wins";
            case "draw":
                return "game over: draw";
            case "faulted":
                return "game aborted: the scanner could not read the board";
        }
    }

    private notice(message: string, retryable: boolean = false): void {
        const box = this.root.querySelector<HTMLElement>("#notice");
        if (!box) return;
        box.textContent = message;
        box.classList.remove("hidden");
        box.classList.toggle("retryable", retryable);
    }

    private renderFatal(error: unknown): void {
        this.root.replaceChildren();
        const box = document.createElement("div");
        box.id = "error";
        box.className = "error";
        box.textContent = `something went wrong: ${String(error)}`;
        const back = button("btn-back", "Back to start");
        back.addEventListener("click", () => this.renderSetup());
        this.root.appendChild(box);
        this.root.appendChild(back);
    }
}

function heading(text: string): HTMLElement {
    const h = document.createElement("h1");
    h.textContent = text;
    return h;
}

function button(id: string, text: string): HTMLButtonElement {
    const b = document.createElement("button");
    b.id = id;
    b.textContent = text;
    return b;
}

function strip(id: string, text: string, lit: boolean): HTMLElement {
    const s = document.createElement("div");
    s.id = id;
    s.className = "strip" + (lit ? " lit" : "");
    s.textContent = text;
    return s;
}

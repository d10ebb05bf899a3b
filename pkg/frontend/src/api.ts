// Typed client for the game service. No game logic lives here: the
// server owns legality, wins, and the machine's replies.

export type GameStatusValue =
    | "in_progress"
    | "human_win"
    | "spi_win"
    | "draw"
    | "faulted";

export type FirstMover = "spi" | "human";

export interface Snapshot {
    game_id: string;
    board: number[]; // nine codes: 1 human card, 2 empty, 3 machine card
    status: GameStatusValue;
    to_move: "human" | "spi" | "none";
    last_measurements: number[] | null;
    last_pattern_index: number | null;
    move_count: number;
}

export interface OutputCodeJson {
    kind: "move" | "human_won" | "no_action";
    square?: number;
    winning?: boolean;
}

export interface TurnRecordJson {
    move_number: number;
    actor: "human" | "spi";
    square: number | null;
    measurements: number[] | null;
    output_code: OutputCodeJson | null;
    pattern_index: number | null;
}

export class ApiError extends Error {
    constructor(public readonly status: number, message: string) {
        super(message);
        this.name = "ApiError";
    }
}

async function request<T>(url: string, init?: RequestInit): Promise<T> {
    const response = await fetch(url, {
        headers: { "Content-Type": "application/json" },
        ...init,
    });
    if (!response.ok) {
        let detail = response.statusText;
        try {
            const body = await response.json();
            if (typeof body?.detail === "string") detail = body.detail;
        } catch {
            // keep the status text
        }
        throw new ApiError(response.status, detail);
    }
    return (await response.json()) as T;
}

export class GameApi {
    constructor(private readonly baseUrl: string = "") {}

    createGame(firstMover: FirstMover): Promise<Snapshot> {
        return request<Snapshot>(`${this.baseUrl}/api/games`, {
            method: "POST",
            body: JSON.stringify({ first_mover: firstMover }),
        });
    }

    getGame(gameId: string): Promise<Snapshot> {
        return request<Snapshot>(`${this.baseUrl}/api/games/${gameId}`);
    }

    submitMove(gameId: string, square: number): Promise<Snapshot> {
        return request<Snapshot>(`${this.baseUrl}/api/games/${gameId}/moves`, {
            method: "POST",
            body: JSON.stringify({ square }),
        });
    }

    async getTrace(gameId: string): Promise<TurnRecordJson[]> {
        const doc = await request<{ turns: TurnRecordJson[] }>(
            `${this.baseUrl}/api/games/${gameId}/trace`,
        );
        return doc.turns;
    }
}

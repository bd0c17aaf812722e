// Typed client for the play service. The client never decides legality:
// everything is validated server-side and errors are surfaced verbatim.

export type Cell = [number, number, string]; // x, y, "R" | "B"

export interface MoveView {
  turn: number;
  player: string;
  points: [number, number][];
}

export interface SegmentView {
  start: [number, number];
  dir: string;
  len: number;
}

export interface StateView {
  gameId: string;
  n: number;
  schedule: [number, number, number, number];
  mode: string;
  humanSide: "maker" | "breaker";
  engine: string;
  t: number;
  quota: number;
  status: string;
  cells: Cell[];
  history: MoveView[];
  winner: string | null;
  winSegment: SegmentView | null;
  lastEngineMove: MoveView | null;
}

export interface CreateGameRequest {
  n: number;
  schedule?: string | number[];
  humanSide: "maker" | "breaker";
  engine: string;
  seed: number;
}

export interface MoveResponse {
  accepted: boolean;
  engineMove: MoveView | null;
  status: string;
  winner?: string;
  winSegment?: SegmentView;
  quotaNext: number;
}

export interface ApiErrorBody {
  error: string;
  detail: string;
  point?: [number, number];
}

export class ApiRequestError extends Error {
  readonly body: ApiErrorBody;
  readonly status: number;

  constructor(status: number, body: ApiErrorBody) {
    super(`${body.error}: ${body.detail}`);
    this.status = status;
    this.body = body;
  }
}

type FetchLike = typeof fetch;

export class GameApi {
  private readonly baseUrl: string;
  private readonly fetchFn: FetchLike;

  constructor(baseUrl = "", fetchFn: FetchLike = fetch) {
    this.baseUrl = baseUrl.replace(/\/$/, "");
    this.fetchFn = fetchFn;
  }

  private async request<T>(path: string, init?: RequestInit): Promise<T> {
    const resp = await this.fetchFn(`${this.baseUrl}${path}`, init);
    const payload = await resp.json();
    if (!resp.ok) {
      const body: ApiErrorBody =
        payload && typeof payload.error === "string"
          ? payload
          : { error: "bad_request", detail: JSON.stringify(payload) };
      throw new ApiRequestError(resp.status, body);
    }
    return payload as T;
  }

  createGame(req: CreateGameRequest): Promise<{ gameId: string; state: StateView }> {
    return this.request("/games", {
      method: "POST",
      headers: { "content-type": "application/json" },
      body: JSON.stringify(req),
    });
  }

  submitMove(gameId: string, points: [number, number][]): Promise<MoveResponse> {
    return this.request(`/games/${gameId}/moves`, {
      method: "POST",
      headers: { "content-type": "application/json" },
      body: JSON.stringify({ points }),
    });
  }

  getState(gameId: string): Promise<StateView> {
    return this.request(`/games/${gameId}`);
  }
}

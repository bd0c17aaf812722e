// View-side game state: the server's latest snapshot plus the pending
// selection. Pure logic, no fetch calls, so it is directly testable.

import type { ApiErrorBody, StateView } from "./api.js";

export function cellKey(x: number, y: number): string {
  return `${x},${y}`;
}

export class GameStore {
  state: StateView | null = null;
  selection = new Set<string>();
  inFlight = false;
  lastError: ApiErrorBody | null = null;

  private claimed = new Set<string>();

  applyState(state: StateView): void {
    this.state = state;
    this.claimed = new Set(state.cells.map(([x, y]) => cellKey(x, y)));
    this.selection.clear();
    this.lastError = null;
    this.inFlight = false;
  }

  applyRejection(error: ApiErrorBody): void {
    // the server said no: keep the selection so the player can fix it
    this.lastError = error;
    this.inFlight = false;
  }

  isClaimed(x: number, y: number): boolean {
    return this.claimed.has(cellKey(x, y));
  }

  isHumanTurn(): boolean {
    if (!this.state || this.state.status !== "ongoing") return false;
    const redToMove = this.state.t % 2 === 1;
    return this.state.humanSide === "maker" ? redToMove : !redToMove;
  }

  quota(): number {
    return this.state ? this.state.quota : 0;
  }

  /** Toggle a cell in or out of the selection. Claimed cells and
   * over-quota additions are pre-filtered client-side; everything else is
   * the server's call. Returns true when the selection changed. */
  toggleSelect(x: number, y: number): boolean {
    if (!this.state || !this.isHumanTurn() || this.inFlight) return false;
    const key = cellKey(x, y);
    if (this.selection.has(key)) {
      this.selection.delete(key);
      return true;
    }
    if (this.isClaimed(x, y)) return false;
    if (this.selection.size >= this.quota()) return false;
    this.selection.add(key);
    return true;
  }

  canSubmit(): boolean {
    return (
      this.isHumanTurn() && !this.inFlight && this.selection.size === this.quota()
    );
  }

  selectedPoints(): [number, number][] {
    return [...this.selection]
      .map((key) => key.split(",").map(Number) as [number, number])
      .sort((a, b) => (a[0] - b[0]) || (a[1] - b[1]));
  }

  banner(): string {
    if (!this.state) return "no game";
    const s = this.state;
    if (s.status === "maker_won") {
      const humanWon = s.humanSide === "maker";
      return humanWon ? "maker (you) completed a row - game over" : "engine completed a row - game over";
    }
    if (s.status === "human_won") return "you won";
    if (s.status === "engine_won") return "engine won";
    if (s.status === "capped") return "turn cap reached";
    if (this.inFlight) return "waiting for the engine...";
    if (!this.isHumanTurn()) return "engine to move";
    return `your turn (t=${s.t}): ${this.selection.size} of ${s.quota} selected`;
  }

  errorText(): string | null {
    if (!this.lastError) return null;
    const where = this.lastError.point ? ` at ${this.lastError.point.join(",")}` : "";
    return `${this.lastError.error}${where}: ${this.lastError.detail}`;
  }
}

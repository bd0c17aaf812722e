// Canvas drawing: claimed cells, grid, selection outlines, the engine's
// last move and the winning segment.

import type { StateView } from "./api.js";
import type { GameStore } from "./store.js";
import { cellKey } from "./store.js";
import { pixelForCell, type Viewport } from "./view.js";

const COLORS = {
  background: "#11141a",
  grid: "#262b36",
  axis: "#3a4152",
  red: "#e0533d",
  blue: "#4d83d8",
  selection: "#f0c53f",
  engineRing: "#9be37a",
  win: "#ffffff",
};

export function render(
  ctx: CanvasRenderingContext2D,
  store: GameStore,
  vp: Viewport,
  width: number,
  height: number,
): void {
  ctx.fillStyle = COLORS.background;
  ctx.fillRect(0, 0, width, height);
  const state = store.state;
  if (!state) return;

  drawGrid(ctx, vp, width, height);

  const size = Math.max(1, vp.scale - 2);
  const lastMove = new Set(
    (state.lastEngineMove?.points ?? []).map(([x, y]) => cellKey(x, y)),
  );
  for (const [x, y, color] of state.cells) {
    const [px, py] = pixelForCell(vp, x, y, width, height);
    ctx.fillStyle = color === "R" ? COLORS.red : COLORS.blue;
    ctx.fillRect(px - size / 2, py - size / 2, size, size);
    if (lastMove.has(cellKey(x, y))) {
      ctx.strokeStyle = COLORS.engineRing;
      ctx.lineWidth = 2;
      ctx.strokeRect(px - size / 2, py - size / 2, size, size);
    }
  }

  ctx.strokeStyle = COLORS.selection;
  ctx.lineWidth = 2;
  for (const key of store.selection) {
    const [x, y] = key.split(",").map(Number);
    const [px, py] = pixelForCell(vp, x, y, width, height);
    ctx.strokeRect(px - size / 2, py - size / 2, size, size);
  }

  if (state.winSegment) {
    drawWinSegment(ctx, state, vp, width, height);
  }
}

function drawGrid(
  ctx: CanvasRenderingContext2D, vp: Viewport, width: number, height: number,
): void {
  if (vp.scale < 6) return; // too zoomed out for per-cell lines
  ctx.strokeStyle = COLORS.grid;
  ctx.lineWidth = 1;
  const left = vp.centerX - width / 2 / vp.scale;
  const right = vp.centerX + width / 2 / vp.scale;
  const bottom = vp.centerY - height / 2 / vp.scale;
  const top = vp.centerY + height / 2 / vp.scale;
  ctx.beginPath();
  for (let x = Math.floor(left); x <= Math.ceil(right); x++) {
    const [px] = pixelForCell(vp, x - 0.5, 0, width, height);
    ctx.moveTo(px, 0);
    ctx.lineTo(px, height);
  }
  for (let y = Math.floor(bottom); y <= Math.ceil(top); y++) {
    const [, py] = pixelForCell(vp, 0, y - 0.5, width, height);
    ctx.moveTo(0, py);
    ctx.lineTo(width, py);
  }
  ctx.stroke();
  // axes through the origin for orientation
  ctx.strokeStyle = COLORS.axis;
  ctx.beginPath();
  const [ox, oy] = pixelForCell(vp, -0.5, -0.5, width, height);
  ctx.moveTo(ox, 0);
  ctx.lineTo(ox, height);
  ctx.moveTo(0, oy);
  ctx.lineTo(width, oy);
  ctx.stroke();
}

const DIR_STEPS: Record<string, [number, number]> = {
  E: [1, 0], N: [0, 1], NE: [1, 1], SE: [1, -1],
};

function drawWinSegment(
  ctx: CanvasRenderingContext2D,
  state: StateView,
  vp: Viewport,
  width: number,
  height: number,
): void {
  const seg = state.winSegment!;
  const [dx, dy] = DIR_STEPS[seg.dir] ?? [1, 0];
  const [sx, sy] = seg.start;
  const [x0, y0] = pixelForCell(vp, sx, sy, width, height);
  const [x1, y1] = pixelForCell(
    vp, sx + dx * (seg.len - 1), sy + dy * (seg.len - 1), width, height,
  );
  ctx.strokeStyle = COLORS.win;
  ctx.lineWidth = Math.max(3, vp.scale / 6);
  ctx.lineCap = "round";
  ctx.beginPath();
  ctx.moveTo(x0, y0);
  ctx.lineTo(x1, y1);
  ctx.stroke();
}

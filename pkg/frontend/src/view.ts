// Viewport over the unbounded lattice: world coordinates are cells,
// screen coordinates are pixels; play drifts, so the camera can refit
// to the claimed bounding box (plus margin n) at any time.

import type { Cell } from "./api.js";

export interface Viewport {
  centerX: number; // world cell coordinates at the canvas center
  centerY: number;
  scale: number; // pixels per cell
}

export const MIN_SCALE = 2;
export const MAX_SCALE = 80;

export function defaultViewport(): Viewport {
  return { centerX: 0, centerY: 0, scale: 32 };
}

export function fitToCells(
  cells: Cell[],
  margin: number,
  width: number,
  height: number,
): Viewport {
  if (cells.length === 0) {
    return { centerX: 0, centerY: 0, scale: Math.min(MAX_SCALE, width / (2 * margin + 1)) };
  }
  let minX = Infinity, minY = Infinity, maxX = -Infinity, maxY = -Infinity;
  for (const [x, y] of cells) {
    if (x < minX) minX = x;
    if (x > maxX) maxX = x;
    if (y < minY) minY = y;
    if (y > maxY) maxY = y;
  }
  const spanX = maxX - minX + 1 + 2 * margin;
  const spanY = maxY - minY + 1 + 2 * margin;
  const scale = Math.max(MIN_SCALE, Math.min(MAX_SCALE, width / spanX, height / spanY));
  return {
    centerX: (minX + maxX) / 2,
    centerY: (minY + maxY) / 2,
    scale,
  };
}

/** Pixel position of the center of a world cell (canvas y grows downward). */
export function pixelForCell(
  vp: Viewport, x: number, y: number, width: number, height: number,
): [number, number] {
  return [
    width / 2 + (x - vp.centerX) * vp.scale,
    height / 2 - (y - vp.centerY) * vp.scale,
  ];
}

export function cellAtPixel(
  vp: Viewport, px: number, py: number, width: number, height: number,
): [number, number] {
  return [
    Math.round(vp.centerX + (px - width / 2) / vp.scale),
    Math.round(vp.centerY - (py - height / 2) / vp.scale),
  ];
}

export function pan(vp: Viewport, dxPixels: number, dyPixels: number): Viewport {
  return {
    centerX: vp.centerX - dxPixels / vp.scale,
    centerY: vp.centerY + dyPixels / vp.scale,
    scale: vp.scale,
  };
}

export function zoom(
  vp: Viewport, factor: number, px: number, py: number, width: number, height: number,
): Viewport {
  const [wx, wy] = [
    vp.centerX + (px - width / 2) / vp.scale,
    vp.centerY - (py - height / 2) / vp.scale,
  ];
  const scale = Math.max(MIN_SCALE, Math.min(MAX_SCALE, vp.scale * factor));
  // keep the world point under the cursor fixed
  return {
    centerX: wx - (px - width / 2) / scale,
    centerY: wy + (py - height / 2) / scale,
    scale,
  };
}

// DOM wiring: new-game form, canvas events (select / pan / zoom), submit
// button with single-flight control, and gameId-in-hash refresh restore.

import { ApiRequestError, GameApi } from "./api.js";
import { GameStore } from "./store.js";
import { render } from "./render.js";
import {
  cellAtPixel,
  defaultViewport,
  fitToCells,
  pan,
  zoom,
  type Viewport,
} from "./view.js";

const api = new GameApi("");
const store = new GameStore();
let viewport: Viewport = defaultViewport();

const canvas = document.getElementById("board") as HTMLCanvasElement;
const ctx = canvas.getContext("2d")!;
const banner = document.getElementById("banner")!;
const errorBox = document.getElementById("error")!;
const submitBtn = document.getElementById("submit") as HTMLButtonElement;
const clearBtn = document.getElementById("clear") as HTMLButtonElement;
const refitBtn = document.getElementById("refit") as HTMLButtonElement;
const form = document.getElementById("new-game") as HTMLFormElement;

function sizeCanvas(): void {
  const rect = canvas.getBoundingClientRect();
  canvas.width = rect.width * devicePixelRatio;
  canvas.height = rect.height * devicePixelRatio;
  ctx.setTransform(devicePixelRatio, 0, 0, devicePixelRatio, 0, 0);
}

function width(): number {
  return canvas.getBoundingClientRect().width;
}

function height(): number {
  return canvas.getBoundingClientRect().height;
}

function refit(): void {
  if (store.state) {
    viewport = fitToCells(store.state.cells, store.state.n, width(), height());
  }
}

function draw(): void {
  banner.textContent = store.banner();
  const err = store.errorText();
  errorBox.textContent = err ?? "";
  errorBox.style.display = err ? "block" : "none";
  submitBtn.disabled = !store.canSubmit();
  render(ctx, store, viewport, width(), height());
}

function applyAndDraw(followBoard: boolean): void {
  if (followBoard) refit();
  draw();
}

async function refreshFromServer(gameId: string): Promise<void> {
  try {
    store.applyState(await api.getState(gameId));
    location.hash = `g=${gameId}`;
    applyAndDraw(true);
  } catch (err) {
    if (err instanceof ApiRequestError) {
      store.applyRejection(err.body);
      draw();
    } else {
      throw err;
    }
  }
}

form.addEventListener("submit", async (event) => {
  event.preventDefault();
  const data = new FormData(form);
  try {
    const created = await api.createGame({
      n: Number(data.get("n")),
      schedule: String(data.get("schedule") || "identity"),
      humanSide: data.get("side") === "breaker" ? "breaker" : "maker",
      engine: String(data.get("engine")),
      seed: Number(data.get("seed")),
    });
    store.applyState(created.state);
    location.hash = `g=${created.gameId}`;
    applyAndDraw(true);
  } catch (err) {
    if (err instanceof ApiRequestError) {
      store.applyRejection(err.body);
      draw();
    } else {
      throw err;
    }
  }
});

submitBtn.addEventListener("click", async () => {
  if (!store.canSubmit() || !store.state) return;
  const gameId = store.state.gameId;
  store.inFlight = true;
  draw();
  try {
    await api.submitMove(gameId, store.selectedPoints());
    store.applyState(await api.getState(gameId));
    applyAndDraw(true);
  } catch (err) {
    if (err instanceof ApiRequestError) {
      store.applyRejection(err.body); // selection survives for fixing
      draw();
    } else {
      store.inFlight = false;
      draw();
      throw err;
    }
  }
});

clearBtn.addEventListener("click", () => {
  store.selection.clear();
  draw();
});

refitBtn.addEventListener("click", () => {
  refit();
  draw();
});

let dragging = false;
let moved = false;
let lastX = 0;
let lastY = 0;

canvas.addEventListener("pointerdown", (event) => {
  dragging = true;
  moved = false;
  lastX = event.offsetX;
  lastY = event.offsetY;
  canvas.setPointerCapture(event.pointerId);
});

canvas.addEventListener("pointermove", (event) => {
  if (!dragging) return;
  const dx = event.offsetX - lastX;
  const dy = event.offsetY - lastY;
  if (Math.abs(dx) + Math.abs(dy) > 2) moved = true;
  if (moved) {
    viewport = pan(viewport, dx, dy);
    lastX = event.offsetX;
    lastY = event.offsetY;
    draw();
  }
});

canvas.addEventListener("pointerup", (event) => {
  dragging = false;
  if (moved) return; // it was a pan, not a click
  const [x, y] = cellAtPixel(viewport, event.offsetX, event.offsetY, width(), height());
  if (store.toggleSelect(x, y)) draw();
});

canvas.addEventListener("wheel", (event) => {
  event.preventDefault();
  const factor = event.deltaY < 0 ? 1.2 : 1 / 1.2;
  viewport = zoom(viewport, factor, event.offsetX, event.offsetY, width(), height());
  draw();
});

window.addEventListener("resize", () => {
  sizeCanvas();
  draw();
});

sizeCanvas();
const match = location.hash.match(/g=([0-9a-f]+)/);
if (match) {
  void refreshFromServer(match[1]);
} else {
  draw();
}

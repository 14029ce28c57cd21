// Pure view-model helpers: everything here is a function of the server
// payload, so the scripted tests can drive the app without a DOM.

import type { ChainEntryPayload, SessionState } from "./types.js";

export interface ChainRow {
  set: string;
  score: number;
  accumulator: string;
  owner: number;
  payload: ChainEntryPayload;
}

export interface Point {
  x: number;
  y: number;
}

export function setText(ids: number[]): string {
  return `{${ids.join(",")}}`;
}

export function chainRows(state: SessionState): ChainRow[] {
  // rendered rows are the server's chain entries verbatim, ordered as
  // sent (smallest set first); no client-side rescoring
  return state.chain.map((entry) => ({
    set: setText(entry.set),
    score: entry.score,
    accumulator: setText(entry.accumulator),
    owner: entry.owner,
    payload: entry,
  }));
}

export function legalMoves(state: SessionState): number[] {
  if (state.status !== "awaiting-human") return [];
  return state.arena.edges
    .filter(([from]) => from === state.currentVertex)
    .map(([, to]) => to)
    .sort((a, b) => a - b);
}

export function statusLine(state: SessionState): string {
  switch (state.status) {
    case "awaiting-human":
      return `your move (Player ${state.humanPlayer})`;
    case "awaiting-engine":
      return `engine thinking (Player ${1 - state.humanPlayer}, ${state.engineStrategy})`;
    case "finished":
      return "finished";
  }
}

export function banner(state: SessionState): string | null {
  const v = state.verdict;
  if (v === null) return null;
  const yours = v.winner === state.humanPlayer;
  return `Player ${v.winner} wins: ${setText(v.set)} reached its threshold at step ${v.step}` +
    (yours ? " - you win!" : " - the engine wins.");
}

export function thresholdsLine(state: SessionState): string {
  const pairs = Object.entries(state.rule.thresholds)
    .sort(([a], [b]) => Number(a) - Number(b))
    .map(([size, k]) => `|F|=${size}: ${k ?? "-"}`);
  return `${state.rule.kind} (${pairs.join(", ")})`;
}

export function historyText(state: SessionState): string {
  return state.history.map((v) => state.arena.vertices[v]?.name ?? String(v)).join(" ");
}

export function moveForDigit(key: string, legal: number[]): number | null {
  if (!/^[0-9]$/.test(key)) return null;
  const vertex = Number(key);
  return legal.includes(vertex) ? vertex : null;
}

export function cycleSelection(selected: number | null, legal: number[], step: 1 | -1): number | null {
  if (legal.length === 0) return null;
  if (selected === null || !legal.includes(selected)) {
    return step === 1 ? legal[0] : legal[legal.length - 1];
  }
  const at = legal.indexOf(selected);
  return legal[(at + step + legal.length) % legal.length];
}

// Arena layouts: fixed coordinates for the bundled corpus shapes, a
// relaxed circle for everything else.

const SIZE = 420;
const MARGIN = 48;

export function layoutFor(gameName: string, vertexCount: number, edges: [number, number][]): Point[] {
  if (gameName === "triangle" && vertexCount === 3) {
    return [
      { x: MARGIN + 30, y: SIZE / 2 },
      { x: SIZE / 2, y: SIZE / 2 },
      { x: SIZE - MARGIN - 30, y: SIZE / 2 },
    ];
  }
  if (gameName.startsWith("loop")) {
    return ringLayout(vertexCount);
  }
  return relaxedLayout(vertexCount, edges);
}

function ringLayout(n: number): Point[] {
  const r = SIZE / 2 - MARGIN;
  return Array.from({ length: n }, (_, i) => {
    const angle = (2 * Math.PI * i) / n - Math.PI / 2;
    return { x: SIZE / 2 + r * Math.cos(angle), y: SIZE / 2 + r * Math.sin(angle) };
  });
}

function relaxedLayout(n: number, edges: [number, number][]): Point[] {
  const points = ringLayout(n);
  if (n <= 2) return points;
  // a few force sweeps: edges pull, everyone repels, stay on the canvas
  for (let sweep = 0; sweep < 60; sweep++) {
    const shift = points.map(() => ({ x: 0, y: 0 }));
    for (const [a, b] of edges) {
      if (a === b) continue;
      const dx = points[b].x - points[a].x;
      const dy = points[b].y - points[a].y;
      const d = Math.hypot(dx, dy) || 1;
      const pull = (d - 140) * 0.01;
      shift[a].x += (dx / d) * pull;
      shift[a].y += (dy / d) * pull;
      shift[b].x -= (dx / d) * pull;
      shift[b].y -= (dy / d) * pull;
    }
    for (let i = 0; i < n; i++) {
      for (let j = i + 1; j < n; j++) {
        const dx = points[j].x - points[i].x;
        const dy = points[j].y - points[i].y;
        const d2 = dx * dx + dy * dy || 1;
        const push = Math.min(2000 / d2, 4);
        const d = Math.sqrt(d2);
        shift[i].x -= (dx / d) * push;
        shift[i].y -= (dy / d) * push;
        shift[j].x += (dx / d) * push;
        shift[j].y += (dy / d) * push;
      }
    }
    for (let i = 0; i < n; i++) {
      points[i].x = Math.min(SIZE - MARGIN, Math.max(MARGIN, points[i].x + shift[i].x));
      points[i].y = Math.min(SIZE - MARGIN, Math.max(MARGIN, points[i].y + shift[i].y));
    }
  }
  return points;
}

export const CANVAS_SIZE = SIZE;

import { describe, expect, it } from "vitest";

import type { SessionState } from "../src/types.js";
import {
  banner,
  chainRows,
  cycleSelection,
  layoutFor,
  legalMoves,
  moveForDigit,
  setText,
  statusLine,
  thresholdsLine,
} from "../src/view.js";

function sampleState(over: Partial<SessionState> = {}): SessionState {
  return {
    format: "muller-hurry/1",
    id: "abc",
    game: "triangle",
    status: "awaiting-human",
    humanPlayer: 1,
    engineStrategy: "sigma-star",
    sideToMove: 1,
    currentVertex: 2,
    history: [1, 2],
    chain: [
      { set: [2], score: 1, accumulator: [], owner: 0 },
      { set: [1, 2], score: 1, accumulator: [], owner: 1 },
    ],
    rule: { kind: "k3", k: 3, thresholds: { "1": 3, "2": 3, "3": 3 } },
    verdict: null,
    arena: {
      vertices: [
        { id: 0, owner: 1, name: "left" },
        { id: 1, owner: 0, name: "mid" },
        { id: 2, owner: 1, name: "right" },
      ],
      edges: [
        [0, 0],
        [0, 1],
        [1, 0],
        [1, 2],
        [2, 1],
        [2, 2],
      ],
      f0: [[0], [2], [0, 1, 2]],
      start: 1,
    },
    ...over,
  };
}

describe("chain rows", () => {
  it("mirror the server payload without rescoring", () => {
    const state = sampleState();
    const rows = chainRows(state);
    expect(rows.map((r) => r.payload)).toEqual(state.chain);
    expect(rows[0]).toMatchObject({ set: "{2}", score: 1, accumulator: "{}", owner: 0 });
    expect(rows[1]).toMatchObject({ set: "{1,2}", score: 1, accumulator: "{}", owner: 1 });
  });
});

describe("legal moves", () => {
  it("lists successors of the current vertex on the human turn", () => {
    expect(legalMoves(sampleState())).toEqual([1, 2]);
  });

  it("is empty when the engine moves or the game is over", () => {
    expect(legalMoves(sampleState({ status: "awaiting-engine" }))).toEqual([]);
    expect(
      legalMoves(sampleState({ status: "finished", verdict: { winner: 0, set: [0], step: 4 } })),
    ).toEqual([]);
  });
});

describe("banner", () => {
  it("is absent while running", () => {
    expect(banner(sampleState())).toBeNull();
  });

  it("names the winner, set and step", () => {
    const text = banner(
      sampleState({ status: "finished", verdict: { winner: 1, set: [1, 2], step: 9 } }),
    );
    expect(text).toContain("Player 1 wins");
    expect(text).toContain("{1,2}");
    expect(text).toContain("step 9");
    expect(text).toContain("you win");
  });
});

describe("status and thresholds", () => {
  it("describes whose move it is", () => {
    expect(statusLine(sampleState())).toContain("your move");
    expect(statusLine(sampleState({ status: "awaiting-engine" }))).toContain("sigma-star");
  });

  it("formats per-size thresholds", () => {
    const state = sampleState({
      rule: { kind: "mcnaughton", k: null, thresholds: { "1": 2, "2": 3, "3": 7 } },
    });
    expect(thresholdsLine(state)).toBe("mcnaughton (|F|=1: 2, |F|=2: 3, |F|=3: 7)");
  });
});

describe("keyboard mapping", () => {
  it("digits select legal vertices only", () => {
    expect(moveForDigit("1", [1, 2])).toBe(1);
    expect(moveForDigit("0", [1, 2])).toBeNull();
    expect(moveForDigit("x", [1, 2])).toBeNull();
  });

  it("arrows cycle through the legal moves", () => {
    expect(cycleSelection(null, [1, 2], 1)).toBe(1);
    expect(cycleSelection(1, [1, 2], 1)).toBe(2);
    expect(cycleSelection(2, [1, 2], 1)).toBe(1);
    expect(cycleSelection(null, [1, 2], -1)).toBe(2);
    expect(cycleSelection(7, [], 1)).toBeNull();
  });
});

describe("layout", () => {
  it("keeps every vertex on the canvas", () => {
    for (const [name, n] of [
      ["triangle", 3],
      ["loop4", 5],
      ["rand07", 4],
    ] as const) {
      const edges: [number, number][] = [];
      for (let v = 0; v < n; v++) edges.push([v, (v + 1) % n]);
      const points = layoutFor(name, n, edges);
      expect(points).toHaveLength(n);
      for (const p of points) {
        expect(p.x).toBeGreaterThan(0);
        expect(p.x).toBeLessThan(420);
        expect(p.y).toBeGreaterThan(0);
        expect(p.y).toBeLessThan(420);
      }
    }
  });

  it("is deterministic", () => {
    const edges: [number, number][] = [
      [0, 1],
      [1, 2],
      [2, 0],
      [3, 0],
    ];
    expect(layoutFor("rand01", 4, edges)).toEqual(layoutFor("rand01", 4, edges));
  });
});

describe("set formatting", () => {
  it("renders the empty set", () => {
    expect(setText([])).toBe("{}");
  });
});

// Session controller: polling play loop with a single in-flight request.
// Rendering is behind an interface so the scripted tests can drive a
// whole game headlessly.

import { GameApi } from "./api.js";
import type { CorpusGame, SessionState } from "./types.js";
import { cycleSelection, legalMoves, moveForDigit } from "./view.js";

export interface ViewState {
  session: SessionState | null;
  games: CorpusGame[];
  selectedGame: string;
  selectedMove: number | null;
  hint: number | null;
  pending: boolean;
  trouble: string | null;
}

export interface Renderer {
  render(view: ViewState): void;
}

export interface ControllerOptions {
  pollMillis?: number;
  humanPlayer?: number;
  engineStrategy?: string;
  ruleKind?: string;
}

const sleep = (ms: number) => new Promise((resolve) => setTimeout(resolve, ms));

export class GameController {
  readonly view: ViewState = {
    session: null,
    games: [],
    selectedGame: "triangle",
    selectedMove: null,
    hint: null,
    pending: false,
    trouble: null,
  };
  humanPlayer: number;
  engineStrategy: string;
  ruleKind: string;
  private readonly pollMillis: number;
  private loopToken = 0;

  constructor(
    private readonly api: GameApi,
    private readonly renderer: Renderer,
    options: ControllerOptions = {},
  ) {
    this.pollMillis = options.pollMillis ?? 1000;
    this.humanPlayer = options.humanPlayer ?? 1;
    this.engineStrategy = options.engineStrategy ?? "sigma-star";
    this.ruleKind = options.ruleKind ?? "k3";
  }

  private paint(): void {
    this.renderer.render(this.view);
  }

  async loadCorpus(): Promise<void> {
    const corpus = await this.api.corpus();
    this.view.games = corpus.games;
    if (!corpus.games.some((g) => g.name === this.view.selectedGame) && corpus.games.length > 0) {
      this.view.selectedGame = corpus.games[0].name;
    }
    this.paint();
  }

  selectGame(name: string): void {
    this.view.selectedGame = name;
    this.paint();
  }

  /** Create a session and run the play loop until the referee rules. */
  async startGame(): Promise<void> {
    const token = ++this.loopToken;
    this.view.trouble = null;
    this.view.hint = null;
    this.view.selectedMove = null;
    await this.guarded(async () => {
      this.view.session = await this.api.create({
        game: this.view.selectedGame,
        rule: { kind: this.ruleKind },
        humanPlayer: this.humanPlayer,
        engineStrategy: this.engineStrategy,
      });
    });
    void this.playLoop(token);
  }

  /** Poll and trigger engine steps until finished or superseded. */
  async playLoop(token: number): Promise<void> {
    while (this.loopToken === token) {
      const session = this.view.session;
      if (session === null || session.status === "finished") return;
      if (session.status === "awaiting-engine") {
        const moved = await this.guarded(async () => {
          this.view.session = await this.api.engineStep(session.id);
          this.view.selectedMove = null;
          this.view.hint = null;
        });
        if (!moved) return;
        if (this.view.session?.error) {
          this.view.trouble = this.view.session.error;
          this.paint();
          return; // strategy undefined: session stays paused
        }
        continue;
      }
      await sleep(this.pollMillis);
      if (this.loopToken !== token) return;
      const current = this.view.session;
      if (current !== null && current.status === "awaiting-human") {
        await this.guarded(async () => {
          this.view.session = await this.api.state(current.id);
        });
      }
    }
  }

  /** Submit the human move for a clicked (or keyboard-chosen) vertex. */
  async chooseMove(to: number): Promise<void> {
    const session = this.view.session;
    if (session === null || session.status !== "awaiting-human" || this.view.pending) return;
    if (!legalMoves(session).includes(to)) return;
    const token = this.loopToken;
    await this.guarded(async () => {
      this.view.session = await this.api.move(session.id, to);
      this.view.selectedMove = null;
      this.view.hint = null;
    });
    if (this.loopToken === token) void this.playLoop(token);
  }

  async requestHint(): Promise<void> {
    const session = this.view.session;
    if (session === null || session.status === "finished") return;
    await this.guarded(async () => {
      this.view.hint = await this.api.hint(session.id);
    });
  }

  /** Keyboard driving: digits pick a successor, arrows cycle, Enter moves. */
  async handleKey(key: string): Promise<void> {
    const session = this.view.session;
    if (session === null) return;
    const legal = legalMoves(session);
    const digit = moveForDigit(key, legal);
    if (digit !== null) {
      await this.chooseMove(digit);
      return;
    }
    if (key === "ArrowRight" || key === "ArrowDown") {
      this.view.selectedMove = cycleSelection(this.view.selectedMove, legal, 1);
      this.paint();
    } else if (key === "ArrowLeft" || key === "ArrowUp") {
      this.view.selectedMove = cycleSelection(this.view.selectedMove, legal, -1);
      this.paint();
    } else if (key === "Enter" && this.view.selectedMove !== null) {
      await this.chooseMove(this.view.selectedMove);
    } else if (key === "h") {
      await this.requestHint();
    }
  }

  /** Run one request with the pending flag set; false means it failed. */
  private async guarded(work: () => Promise<void>): Promise<boolean> {
    if (this.view.pending) return false;
    this.view.pending = true;
    this.paint();
    try {
      await work();
      this.view.trouble = null;
      return true;
    } catch (err) {
      this.view.trouble = err instanceof Error ? err.message : String(err);
      return false;
    } finally {
      this.view.pending = false;
      this.paint();
    }
  }
}

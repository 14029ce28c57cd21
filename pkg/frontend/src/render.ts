// DOM renderer: SVG arena (circles for Player 0, squares for Player 1),
// the live score-chain table, history, rule thresholds and the verdict
// banner.  All data comes straight from the server payload.

import type { ViewState } from "./app.js";
import type { SessionState } from "./types.js";
import {
  CANVAS_SIZE,
  banner,
  chainRows,
  historyText,
  layoutFor,
  legalMoves,
  statusLine,
  thresholdsLine,
} from "./view.js";

const SVG_NS = "http://www.w3.org/2000/svg";
const VERTEX_RADIUS = 22;

export interface Hooks {
  onVertexClick(v: number): void;
  onGameSelect(name: string): void;
  onNewGame(): void;
  onHint(): void;
}

export class DomRenderer {
  constructor(
    private readonly root: HTMLElement,
    private readonly hooks: Hooks,
  ) {}

  render(view: ViewState): void {
    this.renderPicker(view);
    this.renderStatus(view);
    this.renderArena(view);
    this.renderChain(view.session);
    this.renderBanner(view.session);
  }

  private el<K extends keyof HTMLElementTagNameMap>(tag: K, cls?: string): HTMLElementTagNameMap[K] {
    const node = document.createElement(tag);
    if (cls) node.className = cls;
    return node;
  }

  private slot(id: string): HTMLElement {
    let node = this.root.querySelector<HTMLElement>(`#${id}`);
    if (!node) {
      node = this.el("div");
      node.id = id;
      this.root.appendChild(node);
    }
    return node;
  }

  private renderPicker(view: ViewState): void {
    const slot = this.slot("picker");
    slot.replaceChildren();
    const select = this.el("select");
    select.id = "game-select";
    select.setAttribute("aria-label", "game");
    for (const game of view.games) {
      const option = this.el("option");
      option.value = game.name;
      option.textContent = `${game.name} (${game.vertices} vertices)`;
      option.selected = game.name === view.selectedGame;
      select.appendChild(option);
    }
    select.addEventListener("change", () => this.hooks.onGameSelect(select.value));
    const start = this.el("button");
    start.id = "new-game";
    start.textContent = "new game";
    start.addEventListener("click", () => this.hooks.onNewGame());
    const hint = this.el("button");
    hint.id = "hint";
    hint.textContent = "hint (h)";
    hint.disabled = view.session === null || view.session.status === "finished";
    hint.addEventListener("click", () => this.hooks.onHint());
    slot.append(select, start, hint);
  }

  private renderStatus(view: ViewState): void {
    const slot = this.slot("status");
    slot.replaceChildren();
    const session = view.session;
    const line = this.el("p", "status-line");
    line.setAttribute("role", "status");
    if (session === null) {
      line.textContent = "pick a game and press new game";
    } else {
      line.textContent =
        statusLine(session) +
        (view.pending ? " …" : "") +
        (view.hint !== null ? ` | hint: move to ${session.arena.vertices[view.hint]?.name ?? view.hint}` : "");
    }
    slot.appendChild(line);
    if (session?.warning) {
      const warn = this.el("p", "warning");
      warn.textContent = session.warning;
      slot.appendChild(warn);
    }
    if (view.trouble) {
      const trouble = this.el("p", "trouble");
      trouble.textContent = view.trouble;
      slot.appendChild(trouble);
    }
    if (session) {
      const rule = this.el("p", "rule-line");
      rule.textContent = `stops: ${thresholdsLine(session)}`;
      const history = this.el("p", "history-line");
      history.textContent = `history: ${historyText(session)}`;
      slot.append(rule, history);
    }
  }

  private renderArena(view: ViewState): void {
    const slot = this.slot("arena");
    slot.replaceChildren();
    const session = view.session;
    if (session === null) return;
    const arena = session.arena;
    const points = layoutFor(session.game, arena.vertices.length, arena.edges);
    const legal = new Set(legalMoves(session));
    const finished = session.status === "finished";
    const stopSet = new Set(session.verdict?.set ?? []);

    const svg = document.createElementNS(SVG_NS, "svg");
    svg.setAttribute("viewBox", `0 0 ${CANVAS_SIZE} ${CANVAS_SIZE}`);
    svg.setAttribute("width", String(CANVAS_SIZE));
    svg.setAttribute("role", "img");
    svg.setAttribute("aria-label", "game arena");

    const defs = document.createElementNS(SVG_NS, "defs");
    defs.innerHTML =
      '<marker id="arrow" viewBox="0 0 10 10" refX="9" refY="5" ' +
      'markerWidth="7" markerHeight="7" orient="auto-start-reverse">' +
      '<path d="M 0 0 L 10 5 L 0 10 z" fill="#777"/></marker>';
    svg.appendChild(defs);

    for (const [a, b] of arena.edges) {
      svg.appendChild(this.edgePath(points[a], points[b], a === b));
    }
    for (const vertex of arena.vertices) {
      const { x, y } = points[vertex.id];
      const group = document.createElementNS(SVG_NS, "g");
      const isCurrent = vertex.id === session.currentVertex;
      const isLegal = legal.has(vertex.id);
      const shape =
        vertex.owner === 0
          ? this.circle(x, y)
          : this.square(x, y);
      shape.classList.add("vertex");
      if (isCurrent) shape.classList.add("current");
      if (isLegal && !finished) shape.classList.add("legal");
      if (view.selectedMove === vertex.id) shape.classList.add("selected");
      if (finished && stopSet.has(vertex.id)) shape.classList.add("stop-set");
      if (isLegal && !finished) {
        shape.addEventListener("click", () => this.hooks.onVertexClick(vertex.id));
        shape.setAttribute("tabindex", "0");
        shape.setAttribute("aria-label", `move to ${vertex.name}`);
      }
      group.appendChild(shape);
      const label = document.createElementNS(SVG_NS, "text");
      label.setAttribute("x", String(x));
      label.setAttribute("y", String(y + 5));
      label.setAttribute("text-anchor", "middle");
      label.textContent = vertex.name;
      group.appendChild(label);
      svg.appendChild(group);
    }
    slot.appendChild(svg);
  }

  private edgePath(a: { x: number; y: number }, b: { x: number; y: number }, loop: boolean) {
    const path = document.createElementNS(SVG_NS, "path");
    path.setAttribute("class", "edge");
    path.setAttribute("marker-end", "url(#arrow)");
    if (loop) {
      const r = VERTEX_RADIUS;
      path.setAttribute(
        "d",
        `M ${a.x - r * 0.6} ${a.y - r * 0.9} C ${a.x - r * 2.4} ${a.y - r * 3.2}, ` +
          `${a.x + r * 1.6} ${a.y - r * 3.4}, ${a.x + r * 0.55} ${a.y - r * 0.95}`,
      );
    } else {
      const dx = b.x - a.x;
      const dy = b.y - a.y;
      const d = Math.hypot(dx, dy) || 1;
      const sx = a.x + (dx / d) * VERTEX_RADIUS;
      const sy = a.y + (dy / d) * VERTEX_RADIUS;
      const ex = b.x - (dx / d) * (VERTEX_RADIUS + 4);
      const ey = b.y - (dy / d) * (VERTEX_RADIUS + 4);
      const bend = 18;
      const mx = (sx + ex) / 2 - (dy / d) * bend;
      const my = (sy + ey) / 2 + (dx / d) * bend;
      path.setAttribute("d", `M ${sx} ${sy} Q ${mx} ${my} ${ex} ${ey}`);
    }
    return path;
  }

  private circle(x: number, y: number) {
    const c = document.createElementNS(SVG_NS, "circle");
    c.setAttribute("cx", String(x));
    c.setAttribute("cy", String(y));
    c.setAttribute("r", String(VERTEX_RADIUS));
    return c;
  }

  private square(x: number, y: number) {
    const r = VERTEX_RADIUS;
    const s = document.createElementNS(SVG_NS, "rect");
    s.setAttribute("x", String(x - r));
    s.setAttribute("y", String(y - r));
    s.setAttribute("width", String(2 * r));
    s.setAttribute("height", String(2 * r));
    return s;
  }

  private renderChain(session: SessionState | null): void {
    const slot = this.slot("chain");
    slot.replaceChildren();
    if (session === null) return;
    const caption = this.el("h2");
    caption.textContent = "score chain";
    const table = this.el("table");
    table.id = "chain-table";
    const head = this.el("tr");
    for (const title of ["set", "score", "accumulator", "owner"]) {
      const th = this.el("th");
      th.textContent = title;
      head.appendChild(th);
    }
    table.appendChild(head);
    for (const row of chainRows(session)) {
      const tr = this.el("tr");
      tr.className = `owner-${row.owner}`;
      for (const cell of [row.set, String(row.score), row.accumulator, `Player ${row.owner}`]) {
        const td = this.el("td");
        td.textContent = cell;
        tr.appendChild(td);
      }
      table.appendChild(tr);
    }
    slot.append(caption, table);
  }

  private renderBanner(session: SessionState | null): void {
    const slot = this.slot("banner");
    slot.replaceChildren();
    const text = session === null ? null : banner(session);
    if (text !== null) {
      const box = this.el("div", "verdict-banner");
      box.setAttribute("role", "alert");
      box.textContent = text;
      slot.appendChild(box);
    }
  }
}

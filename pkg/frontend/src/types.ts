// Server JSON contract. Field names are part of the protocol; the client
// never rescores anything, it renders these payloads verbatim.

export interface ChainEntryPayload {
  set: number[];
  score: number;
  accumulator: number[];
  owner: number;
}

export interface VertexPayload {
  id: number;
  owner: number;
  name: string;
}

export interface ArenaPayload {
  vertices: VertexPayload[];
  edges: [number, number][];
  f0: number[][];
  start: number | null;
}

export interface RulePayload {
  kind: string;
  k: number | null;
  thresholds: Record<string, number | null>;
}

export interface VerdictPayload {
  winner: number;
  set: number[];
  step: number;
}

export type SessionStatus = "awaiting-human" | "awaiting-engine" | "finished";

export interface SessionState {
  format: string;
  id: string;
  game: string;
  status: SessionStatus;
  humanPlayer: number;
  engineStrategy: string;
  sideToMove: number | null;
  currentVertex: number;
  history: number[];
  chain: ChainEntryPayload[];
  rule: RulePayload;
  verdict: VerdictPayload | null;
  arena: ArenaPayload;
  warning?: string;
  error?: string;
}

export interface CorpusGame {
  name: string;
  vertices: number;
  start: number | null;
  arena: ArenaPayload;
}

export interface CorpusPayload {
  format: string;
  games: CorpusGame[];
}

export interface CreateRequest {
  game: string;
  rule: { kind: string; k?: number };
  humanPlayer: number;
  engineStrategy: string;
  start?: number;
}

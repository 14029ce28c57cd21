import type { CorpusPayload, CreateRequest, SessionState } from "./types.js";

export class ApiError extends Error {
  constructor(
    readonly status: number,
    readonly code: string,
    message: string,
  ) {
    super(message);
  }
}

async function request<T>(base: string, method: string, path: string, body?: unknown): Promise<T> {
  const response = await fetch(base + path, {
    method,
    headers: body === undefined ? undefined : { "Content-Type": "application/json" },
    body: body === undefined ? undefined : JSON.stringify(body),
  });
  const payload = await response.json();
  if (!response.ok) {
    throw new ApiError(response.status, payload.error ?? "error", payload.message ?? "request failed");
  }
  return payload as T;
}

export class GameApi {
  constructor(readonly base: string = "") {}

  corpus(): Promise<CorpusPayload> {
    return request(this.base, "GET", "/corpus");
  }

  create(body: CreateRequest): Promise<SessionState> {
    return request(this.base, "POST", "/games", body);
  }

  state(id: string): Promise<SessionState> {
    return request(this.base, "GET", `/games/${id}`);
  }

  move(id: string, to: number): Promise<SessionState> {
    return request(this.base, "POST", `/games/${id}/move`, { to });
  }

  engineStep(id: string): Promise<SessionState> {
    return request(this.base, "POST", `/games/${id}/engine-step`);
  }

  async hint(id: string): Promise<number | null> {
    try {
      const payload = await request<{ move: number }>(this.base, "GET", `/games/${id}/hint`);
      return payload.move;
    } catch (err) {
      if (err instanceof ApiError) return null;
      throw err;
    }
  }
}

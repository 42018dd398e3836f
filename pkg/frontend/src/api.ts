/** Thin typed client over the gateway API; fetch is injectable for tests. */

import {
  ApiErrorBody,
  ApiRequestError,
  Chunk,
  Persona,
  PersonaCard,
  SessionEvent,
  TurnResponse,
} from "./types.js";

export type FetchLike = (url: string, init?: RequestInit) => Promise<Response>;

export class ApiClient {
  constructor(
    private baseUrl: string,
    private fetchFn: FetchLike = (url, init) => fetch(url, init),
  ) {}

  private async request<T>(path: string, init?: RequestInit): Promise<T> {
    const resp = await this.fetchFn(`${this.baseUrl}${path}`, init);
    if (!resp.ok) {
      let body: ApiErrorBody = { code: "internal", message: `HTTP ${resp.status}` };
      try {
        body = (await resp.json()) as ApiErrorBody;
      } catch {
        // non-JSON error body; keep the fallback
      }
      throw new ApiRequestError(resp.status, body.code, body.message);
    }
    return (await resp.json()) as T;
  }

  createSession(): Promise<{ session_id: string }> {
    return this.request("/sessions", { method: "POST" });
  }

  postTurn(sessionId: string, text: string): Promise<TurnResponse> {
    return this.request(`/sessions/${encodeURIComponent(sessionId)}/turns`, {
      method: "POST",
      headers: { "content-type": "application/json" },
      body: JSON.stringify({ text }),
    });
  }

  getEvents(sessionId: string): Promise<{ events: SessionEvent[] }> {
    return this.request(`/sessions/${encodeURIComponent(sessionId)}/events`);
  }

  getPersona(personaId: string): Promise<Persona> {
    return this.request(`/personas/${encodeURIComponent(personaId)}`);
  }

  getCard(personaId: string): Promise<PersonaCard> {
    return this.request(`/personas/${encodeURIComponent(personaId)}/card`);
  }

  getChunk(chunkId: string): Promise<Chunk> {
    return this.request(`/chunks/${encodeURIComponent(chunkId)}`);
  }

  health(): Promise<{ status: string; index_count: number; provider_ids: string[] }> {
    return this.request("/healthz");
  }

  prevalence(): Promise<Record<string, Record<string, number>>> {
    return this.request("/stats/prevalence");
  }
}

/** Loader for the recorded gateway session bundle. */

import { readFileSync } from "node:fs";
import { dirname, join } from "node:path";
import { fileURLToPath } from "node:url";

import { Chunk, Persona, PersonaCard, SessionEvent, TurnResponse } from "../src/types.js";

export interface SessionBundle {
  session_id: string;
  turns: { text: string; status: number; body: TurnResponse }[];
  events: SessionEvent[];
  personas: Record<string, Persona>;
  cards: Record<string, PersonaCard>;
  chunks: Record<string, Chunk>;
  healthz: { status: string; index_count: number; provider_ids: string[] };
  prevalence: Record<string, Record<string, number>>;
}

export function loadBundle(): SessionBundle {
  const here = dirname(fileURLToPath(import.meta.url));
  const raw = readFileSync(join(here, "fixtures", "session_script.json"), "utf-8");
  return JSON.parse(raw) as SessionBundle;
}

/** fetch double that serves the recorded bundle, turns in recorded order. */
export function bundleFetch(bundle: SessionBundle): (url: string, init?: RequestInit) => Promise<Response> {
  let turnIndex = 0;
  return async (url: string, init?: RequestInit) => {
    const path = url.replace(/^https?:\/\/[^/]+/, "");
    const json = (body: unknown, status = 200) =>
      new Response(JSON.stringify(body), {
        status,
        headers: { "content-type": "application/json" },
      });

    if (init?.method === "POST" && path === "/sessions") {
      return json({ session_id: bundle.session_id });
    }
    if (init?.method === "POST" && path === `/sessions/${bundle.session_id}/turns`) {
      const recorded = bundle.turns[turnIndex++];
      if (!recorded) return json({ code: "internal", message: "script exhausted" }, 500);
      const sent = JSON.parse(String(init.body)) as { text: string };
      if (sent.text !== recorded.text) {
        return json(
          { code: "internal", message: `expected ${recorded.text}, got ${sent.text}` },
          500,
        );
      }
      return json(recorded.body, recorded.status);
    }
    if (path === `/sessions/${bundle.session_id}/events`) {
      return json({ events: bundle.events });
    }
    const personaMatch = path.match(/^\/personas\/([^/]+)$/);
    if (personaMatch) {
      const id = decodeURIComponent(personaMatch[1]!);
      const persona = bundle.personas[id];
      return persona ? json(persona) : json({ code: "not_found", message: "no persona" }, 404);
    }
    const cardMatch = path.match(/^\/personas\/([^/]+)\/card$/);
    if (cardMatch) {
      const id = decodeURIComponent(cardMatch[1]!);
      const card = bundle.cards[id];
      return card ? json(card) : json({ code: "not_found", message: "no persona" }, 404);
    }
    const chunkMatch = path.match(/^\/chunks\/(.+)$/);
    if (chunkMatch) {
      const id = decodeURIComponent(chunkMatch[1]!);
      const chunk = bundle.chunks[id];
      return chunk ? json(chunk) : json({ code: "not_found", message: "no chunk" }, 404);
    }
    if (path === "/healthz") return json(bundle.healthz);
    if (path === "/stats/prevalence") return json(bundle.prevalence);
    return json({ code: "not_found", message: `no route ${path}` }, 404);
  };
}

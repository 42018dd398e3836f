/** Browser bootstrap: the only module that touches the DOM or the network
 * directly. Everything rendered is derived from ViewState + fetched data. */

import { ApiClient } from "./api.js";
import {
  ViewState,
  beginSend,
  failSend,
  initialState,
  markStale,
  messagesFromEvents,
  personaIdsFromEvents,
  reconcileTurn,
  selectPersona,
} from "./state.js";
import { renderCardRail, renderDetailPane, renderMessages } from "./render.js";
import { ApiRequestError, Chunk } from "./types.js";

declare global {
  interface Window {
    PERSONAMINE_API_BASE?: string;
  }
}

const api = new ApiClient(window.PERSONAMINE_API_BASE ?? "http://127.0.0.1:8000");

let state: ViewState = initialState();
const chunkCache = new Map<string, Chunk>();
const openSources = new Set<string>();

function el(id: string): HTMLElement {
  const node = document.getElementById(id);
  if (!node) throw new Error(`missing #${id}`);
  return node;
}

function render(): void {
  el("chat").innerHTML = renderMessages(state.messages);
  el("rail").innerHTML = renderCardRail(state.cards, state.staleCardIds);
  const sources: Record<string, Chunk> = {};
  for (const id of openSources) {
    const chunk = chunkCache.get(id);
    if (chunk) sources[id] = chunk;
  }
  el("detail").innerHTML = state.selectedPersona
    ? renderDetailPane(state.selectedPersona, { openSources: sources })
    : `<div class="detail-empty">Select a persona card to see its details.</div>`;
  const send = el("send") as HTMLButtonElement;
  send.disabled = state.sending;
  send.classList.toggle("spinning", state.sending);
  const log = el("chat");
  log.scrollTop = log.scrollHeight;
}

async function sendTurn(text: string): Promise<void> {
  const sessionId = state.sessionId;
  if (!sessionId || !text.trim()) return;
  try {
    state = beginSend(state, text);
  } catch {
    return; // send already in flight; button is disabled anyway
  }
  render();
  try {
    const resp = await api.postTurn(sessionId, text);
    state = reconcileTurn(state, resp);
  } catch (err) {
    state = failSend(state, err);
  }
  render();
}

async function openPersona(personaId: string): Promise<void> {
  try {
    // Always fetched fresh; the rail card may be stale.
    const persona = await api.getPersona(personaId);
    openSources.clear();
    state = selectPersona(state, persona);
  } catch (err) {
    if (err instanceof ApiRequestError && err.status === 404) {
      state = markStale(state, personaId);
    }
  }
  render();
}

async function toggleSource(chunkId: string): Promise<void> {
  if (openSources.has(chunkId)) {
    openSources.delete(chunkId);
  } else {
    if (!chunkCache.has(chunkId)) {
      try {
        chunkCache.set(chunkId, await api.getChunk(chunkId));
      } catch {
        return;
      }
    }
    openSources.add(chunkId);
  }
  render();
}

async function resumeOrCreate(): Promise<void> {
  const fromHash = new URLSearchParams(location.hash.slice(1)).get("s");
  if (fromHash) {
    try {
      const { events } = await api.getEvents(fromHash);
      state = initialState(fromHash);
      state = { ...state, messages: messagesFromEvents(events) };
      for (const pid of personaIdsFromEvents(events)) {
        try {
          const card = await api.getCard(pid);
          state = { ...state, cards: [...state.cards, card] };
        } catch {
          state = markStale(state, pid);
        }
      }
      render();
      return;
    } catch {
      // fall through to a fresh session
    }
  }
  const { session_id } = await api.createSession();
  state = initialState(session_id);
  location.hash = `s=${session_id}`;
  render();
}

export function boot(): void {
  const form = el("composer") as HTMLFormElement;
  form.addEventListener("submit", (event) => {
    event.preventDefault();
    const input = el("input") as HTMLInputElement;
    const text = input.value;
    input.value = "";
    void sendTurn(text);
  });
  el("rail").addEventListener("click", (event) => {
    const card = (event.target as HTMLElement).closest<HTMLElement>(".persona-card");
    if (card?.dataset.personaId) void openPersona(card.dataset.personaId);
  });
  el("detail").addEventListener("click", (event) => {
    const toggle = (event.target as HTMLElement).closest<HTMLElement>(".source-toggle");
    if (toggle?.dataset.chunkId) void toggleSource(toggle.dataset.chunkId);
  });
  void resumeOrCreate();
}

if (typeof document !== "undefined" && document.getElementById("composer")) {
  boot();
}

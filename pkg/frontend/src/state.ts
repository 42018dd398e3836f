/** ViewState and its pure transitions. The UI renders only what's here. */

import {
  ApiRequestError,
  Persona,
  PersonaCard,
  SessionEvent,
  TurnResponse,
} from "./types.js";

export type MessageKind = "normal" | "pending" | "failed" | "guidance" | "error";

export interface Message {
  role: "student" | "system";
  text: string;
  kind: MessageKind;
}

export interface ViewState {
  sessionId: string | null;
  messages: Message[];
  cards: PersonaCard[];
  selectedPersona: Persona | null;
  sending: boolean;
  staleCardIds: string[];
}

export function initialState(sessionId: string | null = null): ViewState {
  return {
    sessionId,
    messages: [],
    cards: [],
    selectedPersona: null,
    sending: false,
    staleCardIds: [],
  };
}

/** Optimistically append the student message and lock the send box. */
export function beginSend(state: ViewState, text: string): ViewState {
  if (state.sending) {
    throw new Error("a turn is already in flight for this session");
  }
  return {
    ...state,
    sending: true,
    messages: [...state.messages, { role: "student", text, kind: "pending" }],
  };
}

function settlePending(messages: Message[], kind: MessageKind): Message[] {
  const out = [...messages];
  for (let i = out.length - 1; i >= 0; i--) {
    const msg = out[i];
    if (msg && msg.kind === "pending") {
      out[i] = { ...msg, kind };
      break;
    }
  }
  return out;
}

/** Reconcile the optimistic message with the server reply. */
export function reconcileTurn(state: ViewState, resp: TurnResponse): ViewState {
  const messages = settlePending(state.messages, "normal");
  const replyKind: MessageKind =
    resp.error === "no_evidence" || resp.error === "illegal_transition"
      ? "guidance"
      : "normal";
  messages.push({ role: "system", text: resp.reply, kind: replyKind });
  let cards = state.cards;
  if (resp.persona_card && !cards.some((c) => c.persona_id === resp.persona_card!.persona_id)) {
    cards = [...cards, resp.persona_card];
  }
  return { ...state, sending: false, messages, cards };
}

/** A failed POST: 409 keeps the spinner (another turn is still in flight). */
export function failSend(state: ViewState, error: unknown): ViewState {
  if (error instanceof ApiRequestError && error.status === 409) {
    return state; // stay locked until the in-flight turn resolves
  }
  const messages = settlePending(state.messages, "failed");
  const text =
    error instanceof ApiRequestError ? error.message : "request failed; try again";
  messages.push({ role: "system", text, kind: "error" });
  return { ...state, sending: false, messages };
}

export function selectPersona(state: ViewState, persona: Persona): ViewState {
  return { ...state, selectedPersona: persona };
}

export function clearSelection(state: ViewState): ViewState {
  return { ...state, selectedPersona: null };
}

export function markStale(state: ViewState, personaId: string): ViewState {
  if (state.staleCardIds.includes(personaId)) return state;
  return { ...state, staleCardIds: [...state.staleCardIds, personaId] };
}

/** Rebuild the transcript from the server event log (page reload path). */
export function messagesFromEvents(events: SessionEvent[]): Message[] {
  const out: Message[] = [];
  for (const event of events) {
    if (event.event === "student_turn" && typeof event.text === "string") {
      out.push({ role: "student", text: event.text, kind: "normal" });
    } else if (event.event === "system_reply" && typeof event.text === "string") {
      out.push({ role: "system", text: event.text, kind: "normal" });
    }
  }
  return out;
}

export function personaIdsFromEvents(events: SessionEvent[]): string[] {
  return events
    .filter((e) => e.event === "persona_added" && typeof e.persona_id === "string")
    .map((e) => e.persona_id as string);
}

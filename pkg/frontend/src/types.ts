/** Wire types mirroring the gateway's JSON (snake_case preserved). */

export interface PersonaCard {
  persona_id: string;
  display_name: string;
  dimension: string;
  quote: string;
  photo: string | null;
}

export interface Quote {
  text: string;
  source_chunk_id: string;
}

export interface Persona {
  persona_id: string;
  display_name: string;
  photo: string | null;
  biography: string;
  pain_points: string[];
  requirements: string[];
  quotes: Quote[];
  dimension: string;
  vr_category: string;
  evidence_chunk_ids: string[];
  provider_trace: Record<string, string>;
}

export interface Chunk {
  chunk_id: string;
  review_id: string;
  span: [number, number];
  text: string;
  category: string;
  dimensions: string[];
  app_id: string;
}

export interface TurnResponse {
  reply: string;
  state: string;
  error?: string;
  persona_card?: PersonaCard;
}

export interface SessionEvent {
  event: string;
  text?: string;
  ts?: string;
  intent?: string;
  persona_id?: string;
  value?: string;
  [key: string]: unknown;
}

export interface ApiErrorBody {
  code: string;
  message: string;
  detail?: unknown;
}

export class ApiRequestError extends Error {
  constructor(
    public status: number,
    public code: string,
    message: string,
  ) {
    super(message);
    this.name = "ApiRequestError";
  }
}

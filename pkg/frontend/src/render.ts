/** Pure HTML renderers: given state, return markup strings. */

import { Chunk, Persona, PersonaCard } from "./types.js";
import { Message } from "./state.js";

export function escapeHtml(text: string): string {
  return text
    .replace(/&/g, "&amp;")
    .replace(/</g, "&lt;")
    .replace(/>/g, "&gt;")
    .replace(/"/g, "&quot;")
    .replace(/'/g, "&#39;");
}

export function normalizeWs(text: string): string {
  return text.split(/\s+/).filter(Boolean).join(" ");
}

export function renderMessages(messages: Message[]): string {
  const items = messages.map((m) => {
    const cls = `msg msg-${m.role} msg-${m.kind}`;
    return `<li class="${cls}">${escapeHtml(m.text)}</li>`;
  });
  return `<ul class="chat-log">${items.join("")}</ul>`;
}

export function renderCardRail(cards: PersonaCard[], staleIds: string[] = []): string {
  if (cards.length === 0) {
    return `<div class="rail-empty">Personas you generate appear here.</div>`;
  }
  const items = cards.map((card) => {
    const stale = staleIds.includes(card.persona_id);
    return (
      `<button class="persona-card${stale ? " stale" : ""}" ` +
      `data-persona-id="${escapeHtml(card.persona_id)}">` +
      `<span class="card-photo">${escapeHtml(card.photo ?? "")}</span>` +
      `<span class="card-name">${escapeHtml(card.display_name)}</span>` +
      `<span class="card-dimension">${escapeHtml(card.dimension)}</span>` +
      `<span class="card-quote">${escapeHtml(card.quote)}</span>` +
      (stale ? `<span class="stale-badge">stale - refresh rail</span>` : "") +
      `</button>`
    );
  });
  return `<div class="card-rail">${items.join("")}</div>`;
}

/** Chunk text with the quote's substring match wrapped in <mark>. */
export function renderQuoteSource(chunkText: string, quoteText: string): string {
  const haystack = normalizeWs(chunkText);
  const needle = normalizeWs(quoteText);
  const idx = needle.length === 0 ? -1 : haystack.indexOf(needle);
  if (idx < 0) {
    return `<span class="quote-source-miss">${escapeHtml(haystack)}</span>`;
  }
  const before = haystack.slice(0, idx);
  const match = haystack.slice(idx, idx + needle.length);
  const after = haystack.slice(idx + needle.length);
  return (
    escapeHtml(before) + `<mark>${escapeHtml(match)}</mark>` + escapeHtml(after)
  );
}

export interface DetailOptions {
  /** chunk texts by id, for quotes whose source toggle is open */
  openSources?: Record<string, Chunk>;
}

export function renderDetailPane(persona: Persona, options: DetailOptions = {}): string {
  const open = options.openSources ?? {};
  const pains = persona.pain_points
    .map((p) => `<li class="pain-point">${escapeHtml(p)}</li>`)
    .join("");
  const reqs = persona.requirements
    .map((r) => `<li class="requirement">${escapeHtml(r)}</li>`)
    .join("");
  const quotes = persona.quotes
    .map((q, i) => {
      const chunk = open[q.source_chunk_id];
      const source = chunk
        ? `<div class="quote-source" data-chunk-id="${escapeHtml(q.source_chunk_id)}">` +
          renderQuoteSource(chunk.text, q.text) +
          `</div>`
        : "";
      return (
        `<li class="quote" data-quote-index="${i}">` +
        `<blockquote>${escapeHtml(q.text)}</blockquote>` +
        `<button class="source-toggle" data-chunk-id="${escapeHtml(q.source_chunk_id)}">source</button>` +
        source +
        `</li>`
      );
    })
    .join("");
  return (
    `<article class="persona-detail" data-persona-id="${escapeHtml(persona.persona_id)}">` +
    `<header>` +
    `<span class="detail-photo">${escapeHtml(persona.photo ?? "")}</span>` +
    `<h2 class="detail-name">${escapeHtml(persona.display_name)}</h2>` +
    `<p class="detail-meta">${escapeHtml(persona.dimension)} - ${escapeHtml(persona.vr_category)}</p>` +
    `</header>` +
    `<p class="detail-biography">${escapeHtml(persona.biography)}</p>` +
    `<h3>Pain points</h3><ul class="pain-points">${pains}</ul>` +
    `<h3>Requirements</h3><ul class="requirements">${reqs}</ul>` +
    `<h3>Grounded quotes</h3><ul class="quotes">${quotes}</ul>` +
    `</article>`
  );
}

// Pure HTML-string rendering so the view is testable without a DOM.
//
// Cards appear exactly in response order; the client never re-ranks.

import type { UiState } from "./reducer.js";
import { textDirection, toUiHit } from "./types.js";

export function escapeHtml(text: string): string {
  return text
    .replace(/&/g, "&amp;")
    .replace(/</g, "&lt;")
    .replace(/>/g, "&gt;")
    .replace(/"/g, "&quot;");
}

export function renderResults(state: UiState): string {
  const parts: string[] = [];
  if (state.banner) {
    const cls = state.banner.kind === "no-terms" ? "banner banner-no-terms" : "banner banner-error";
    const label =
      state.banner.kind === "no-terms"
        ? "No searchable terms in that query."
        : `Search failed: ${escapeHtml(state.banner.message)} — try again.`;
    parts.push(`<div class="${cls}" role="alert">${label}</div>`);
  }
  if (state.loading) {
    parts.push(`<div class="loading">Searching…</div>`);
  }
  if (state.banner?.kind === "no-terms") {
    return parts.join("\n");
  }
  if (!state.response) {
    if (!state.loading && !state.banner) {
      parts.push(`<div class="placeholder">Ask: what does the Qur'an say about …؟</div>`);
    }
    return parts.join("\n");
  }
  const { hits, provider_name, elapsed_ms } = state.response;
  if (hits.length === 0) {
    parts.push(`<div class="placeholder">No results.</div>`);
    return parts.join("\n");
  }
  parts.push(
    `<div class="meta">${hits.length} result(s) · ${escapeHtml(provider_name)} · ${elapsed_ms.toFixed(0)} ms</div>`,
  );
  for (const raw of hits) {
    const hit = toUiHit(raw);
    const excerptDir = textDirection(hit.tafsir_excerpt);
    parts.push(
      [
        `<article class="hit" data-key="${hit.verseKey}">`,
        `  <header>`,
        `    <a class="verse-link" href="#verse" data-surah="${hit.surah}" data-ayah="${hit.ayah}">${hit.verseKey}</a>`,
        `    <span class="tafsir-id">${escapeHtml(hit.tafsir_id)}</span>`,
        `    <span class="score-badge">${hit.scoreBadge}</span>`,
        `  </header>`,
        `  <p class="ayah" dir="${hit.textDir}" lang="ar">${escapeHtml(hit.ayah_text)}</p>`,
        `  <p class="excerpt" dir="${excerptDir}">${escapeHtml(hit.tafsir_excerpt)}</p>`,
        `</article>`,
      ].join("\n"),
    );
  }
  return parts.join("\n");
}

export function renderFilterOptions(tafsirs: { id: string; entries: number }[], selected: string | null): string {
  const options = [`<option value=""${selected ? "" : " selected"}>all tafsirs</option>`];
  for (const t of tafsirs) {
    const sel = t.id === selected ? " selected" : "";
    options.push(`<option value="${escapeHtml(t.id)}"${sel}>${escapeHtml(t.id)} (${t.entries})</option>`);
  }
  return options.join("\n");
}

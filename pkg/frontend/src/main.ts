// Browser bootstrap: wires the form, filter sidebar and results pane.

import { fetchInfo, fetchVerse } from "./api.js";
import { renderFilterOptions, renderResults, escapeHtml } from "./render.js";
import { SearchStore } from "./store.js";
import { textDirection } from "./types.js";

const base = ""; // same-origin service

const store = new SearchStore(base);
const form = document.getElementById("search-form") as HTMLFormElement;
const queryInput = document.getElementById("query") as HTMLInputElement;
const kInput = document.getElementById("k") as HTMLInputElement;
const filterSelect = document.getElementById("tafsir-filter") as HTMLSelectElement;
const results = document.getElementById("results") as HTMLElement;
const detail = document.getElementById("verse-detail") as HTMLElement;

store.subscribe((state) => {
  results.innerHTML = renderResults(state);
});

form.addEventListener("submit", (event) => {
  event.preventDefault();
  void store.submit(queryInput.value);
});

queryInput.addEventListener("input", () => {
  store.dispatch({ type: "SET_QUERY", query: queryInput.value });
  queryInput.dir = textDirection(queryInput.value || "a");
});

kInput.addEventListener("change", () => {
  const k = Math.max(1, Math.min(100, Number(kInput.value) || 10));
  kInput.value = String(k);
  store.dispatch({ type: "SET_K", k });
});

filterSelect.addEventListener("change", () => {
  store.dispatch({ type: "SET_FILTER", tafsir: filterSelect.value || null });
});

results.addEventListener("click", (event) => {
  const link = (event.target as HTMLElement).closest<HTMLAnchorElement>(".verse-link");
  if (!link) return;
  event.preventDefault();
  const surah = Number(link.dataset.surah);
  const ayah = Number(link.dataset.ayah);
  void fetchVerse(base, surah, ayah)
    .then((verse) => {
      detail.innerHTML = `<h3>${verse.surah}:${verse.ayah}</h3><p dir="${textDirection(verse.text)}" lang="ar">${escapeHtml(verse.text)}</p>`;
      detail.hidden = false;
    })
    .catch((err) => {
      detail.innerHTML = `<p class="banner banner-error">${escapeHtml(String(err))}</p>`;
      detail.hidden = false;
    });
});

void fetchInfo(base)
  .then((info) => {
    filterSelect.innerHTML = renderFilterOptions(info.tafsirs, null);
  })
  .catch(() => {
    filterSelect.innerHTML = renderFilterOptions([], null);
  });

import { describe, expect, it } from "vitest";

import { initialState, reduce, replay, type UiAction } from "../src/reducer.js";
import type { SearchResponse } from "../src/types.js";

function response(marker: string): SearchResponse {
  return {
    hits: [
      {
        tafsir_id: marker,
        surah: 102,
        ayah: 1,
        score: 0.9,
        ayah_text: "أَلْهَاكُمُ التَّكَاثُرُ",
        tafsir_excerpt: "شغلكم التفاخر",
      },
    ],
    elapsed_ms: 1.5,
    provider_name: "cbow",
  };
}

describe("reduce", () => {
  it("SUBMIT sets loading and keeps the query text for refinement", () => {
    const state = reduce(initialState, { type: "SUBMIT", seq: 1, query: "المال" });
    expect(state.loading).toBe(true);
    expect(state.query).toBe("المال");
    expect(state.inFlightSeq).toBe(1);
    expect(state.banner).toBeNull();
  });

  it("SUCCESS for the in-flight sequence replaces the response", () => {
    const afterSubmit = reduce(initialState, { type: "SUBMIT", seq: 1, query: "q" });
    const state = reduce(afterSubmit, { type: "SUCCESS", seq: 1, response: response("a") });
    expect(state.loading).toBe(false);
    expect(state.response?.hits[0].tafsir_id).toBe("a");
    expect(state.inFlightSeq).toBe(0);
  });

  it("stale SUCCESS is discarded unchanged", () => {
    const actions: UiAction[] = [
      { type: "SUBMIT", seq: 1, query: "first" },
      { type: "SUBMIT", seq: 2, query: "second" },
    ];
    const pending = replay(actions);
    const afterStale = reduce(pending, { type: "SUCCESS", seq: 1, response: response("old") });
    expect(afterStale).toBe(pending); // identical object: nothing applied
    const final = reduce(afterStale, { type: "SUCCESS", seq: 2, response: response("new") });
    expect(final.response?.hits[0].tafsir_id).toBe("new");
  });

  it("stale failures are discarded too", () => {
    const pending = replay([
      { type: "SUBMIT", seq: 1, query: "a" },
      { type: "SUBMIT", seq: 2, query: "b" },
    ]);
    expect(reduce(pending, { type: "FAILURE", seq: 1, message: "x" })).toBe(pending);
    expect(
      reduce(pending, { type: "NO_SEARCHABLE_TERMS", seq: 1, message: "x" }),
    ).toBe(pending);
  });

  it("NO_SEARCHABLE_TERMS clears results and raises the banner", () => {
    const pending = replay([
      { type: "SUBMIT", seq: 1, query: "q" },
      { type: "SUCCESS", seq: 1, response: response("a") },
      { type: "SUBMIT", seq: 2, query: "ًٌٍ" },
    ]);
    const state = reduce(pending, {
      type: "NO_SEARCHABLE_TERMS",
      seq: 2,
      message: "query is empty",
    });
    expect(state.response).toBeNull();
    expect(state.banner).toEqual({ kind: "no-terms", message: "query is empty" });
  });

  it("FAILURE keeps the previous results and shows a retriable banner", () => {
    const state = replay([
      { type: "SUBMIT", seq: 1, query: "q" },
      { type: "SUCCESS", seq: 1, response: response("a") },
      { type: "SUBMIT", seq: 2, query: "q2" },
      { type: "FAILURE", seq: 2, message: "network down" },
    ]);
    expect(state.banner?.kind).toBe("error");
    expect(state.response?.hits[0].tafsir_id).toBe("a");
  });

  it("replaying the same action history reproduces the same state", () => {
    const actions: UiAction[] = [
      { type: "SET_K", k: 5 },
      { type: "SET_FILTER", tafsir: "alkashaf" },
      { type: "SUBMIT", seq: 1, query: "المال" },
      { type: "SUCCESS", seq: 1, response: response("a") },
      { type: "SET_QUERY", query: "المال والاولاد" },
    ];
    expect(replay(actions)).toEqual(replay(actions));
  });
});

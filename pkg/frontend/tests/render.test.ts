import { describe, expect, it } from "vitest";

import { initialState, type UiState } from "../src/reducer.js";
import { renderFilterOptions, renderResults } from "../src/render.js";
import type { SearchHit } from "../src/types.js";

function hit(partial: Partial<SearchHit>): SearchHit {
  return {
    tafsir_id: "alkashaf",
    surah: 102,
    ayah: 1,
    score: 0.9,
    ayah_text: "أَلْهَاكُمُ التَّكَاثُرُ",
    tafsir_excerpt: "التباري في الكثرة",
    ...partial,
  };
}

function stateWith(hits: SearchHit[]): UiState {
  return {
    ...initialState,
    response: { hits, elapsed_ms: 2, provider_name: "cbow" },
  };
}

describe("renderResults", () => {
  it("renders one card per hit in response order", () => {
    const html = renderResults(
      stateWith([
        hit({ tafsir_id: "c3", ayah: 3, score: 0.1 }),
        hit({ tafsir_id: "a1", ayah: 1, score: 0.9 }),
        hit({ tafsir_id: "b2", ayah: 2, score: 0.5 }),
      ]),
    );
    const cards = html.match(/<article class="hit"/g) ?? [];
    expect(cards).toHaveLength(3);
    // never re-ranked client-side: c3 (lowest score) stays first
    expect(html.indexOf("c3")).toBeLessThan(html.indexOf("a1"));
    expect(html.indexOf("a1")).toBeLessThan(html.indexOf("b2"));
  });

  it("marks Arabic verse text right-to-left", () => {
    const html = renderResults(stateWith([hit({})]));
    expect(html).toContain('<p class="ayah" dir="rtl" lang="ar">');
  });

  it("latin-only text stays left-to-right", () => {
    const html = renderResults(
      stateWith([hit({ ayah_text: "english text", tafsir_excerpt: "notes" })]),
    );
    expect(html).toContain('dir="ltr"');
  });

  it("renders the score badge at two decimals", () => {
    const html = renderResults(stateWith([hit({ score: 0.704999 })]));
    expect(html).toContain('<span class="score-badge">0.70</span>');
  });

  it("shows the no-results placeholder for an empty hit list", () => {
    const html = renderResults(stateWith([]));
    expect(html).toContain("No results.");
  });

  it("shows the no-searchable-terms banner and no cards on 422 state", () => {
    const html = renderResults({
      ...initialState,
      banner: { kind: "no-terms", message: "query is empty" },
    });
    expect(html).toContain("banner-no-terms");
    expect(html).toContain("No searchable terms");
    expect(html).not.toContain("<article");
  });

  it("shows a retriable banner on failure state", () => {
    const html = renderResults({
      ...initialState,
      banner: { kind: "error", message: "boom" },
    });
    expect(html).toContain("banner-error");
    expect(html).toContain("try again");
  });

  it("escapes markup in server-provided text", () => {
    const html = renderResults(
      stateWith([hit({ ayah_text: '<script>alert("x")</script>' })]),
    );
    expect(html).not.toContain("<script>");
    expect(html).toContain("&lt;script&gt;");
  });

  it("verse links carry the key for the detail lookup", () => {
    const html = renderResults(stateWith([hit({ surah: 2, ayah: 30 })]));
    expect(html).toContain('data-surah="2"');
    expect(html).toContain('data-ayah="30"');
    expect(html).toContain(">2:30</a>");
  });
});

describe("renderFilterOptions", () => {
  it("lists all tafsirs plus the all option", () => {
    const html = renderFilterOptions(
      [
        { id: "alkashaf", entries: 8 },
        { id: "samarqandi", entries: 8 },
      ],
      "samarqandi",
    );
    expect(html).toContain("all tafsirs");
    expect(html).toContain('value="samarqandi" selected');
    expect(html).toContain("alkashaf (8)");
  });
});

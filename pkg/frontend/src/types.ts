// Wire types mirroring the search service responses.

export interface SearchHit {
  tafsir_id: string;
  surah: number;
  ayah: number;
  score: number;
  ayah_text: string;
  tafsir_excerpt: string;
}

export interface SearchResponse {
  hits: SearchHit[];
  elapsed_ms: number;
  provider_name: string;
}

export interface VerseDetail {
  surah: number;
  ayah: number;
  text: string;
}

export interface CorpusInfo {
  provider_name: string;
  dim: number;
  total_entries: number;
  tafsirs: { id: string; entries: number }[];
}

/** Display form of a hit: server order preserved, score pre-rendered. */
export interface UiHit extends SearchHit {
  verseKey: string;
  scoreBadge: string;
  textDir: "rtl" | "ltr";
}

export function toUiHit(hit: SearchHit): UiHit {
  return {
    ...hit,
    verseKey: `${hit.surah}:${hit.ayah}`,
    scoreBadge: hit.score.toFixed(2),
    textDir: textDirection(hit.ayah_text),
  };
}

/** Arabic (and other RTL-block) text renders right-to-left. */
export function textDirection(text: string): "rtl" | "ltr" {
  return /[֐-׿؀-ۿݐ-ݿ]/.test(text) ? "rtl" : "ltr";
}

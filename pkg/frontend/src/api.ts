// Thin fetch client for the search service; errors carry the server's code.

import type { CorpusInfo, SearchResponse, VerseDetail } from "./types.js";

export class ApiError extends Error {
  constructor(
    public status: number,
    public code: string,
    message: string,
  ) {
    super(message);
    this.name = "ApiError";
  }
}

async function throwFromResponse(res: Response): Promise<never> {
  let code = "http_error";
  let message = `HTTP ${res.status}`;
  try {
    const body = await res.json();
    if (body && typeof body.code === "string") code = body.code;
    if (body && typeof body.message === "string") message = body.message;
  } catch {
    // non-JSON error body; keep the defaults
  }
  throw new ApiError(res.status, code, message);
}

export interface SearchParams {
  query: string;
  k: number;
  tafsirs?: string[];
}

export async function searchVerses(
  base: string,
  params: SearchParams,
): Promise<SearchResponse> {
  const res = await fetch(`${base}/api/search`, {
    method: "POST",
    headers: { "Content-Type": "application/json" },
    body: JSON.stringify({
      query: params.query,
      k: params.k,
      ...(params.tafsirs && params.tafsirs.length ? { tafsirs: params.tafsirs } : {}),
    }),
  });
  if (!res.ok) await throwFromResponse(res);
  return (await res.json()) as SearchResponse;
}

export async function fetchVerse(
  base: string,
  surah: number,
  ayah: number,
): Promise<VerseDetail> {
  const res = await fetch(`${base}/api/verse/${surah}/${ayah}`);
  if (!res.ok) await throwFromResponse(res);
  return (await res.json()) as VerseDetail;
}

export async function fetchInfo(base: string): Promise<CorpusInfo> {
  const res = await fetch(`${base}/api/info`);
  if (!res.ok) await throwFromResponse(res);
  return (await res.json()) as CorpusInfo;
}

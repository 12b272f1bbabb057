// Pure UI state reducer: the view is a function of the action history.
//
// Every search submission carries a sequence number; result actions for a
// sequence other than the one in flight are stale and leave the state
// untouched, so only the latest submission can ever render.

import type { SearchResponse } from "./types.js";

export type Banner =
  | { kind: "no-terms"; message: string }
  | { kind: "error"; message: string };

export interface UiState {
  query: string;
  tafsirFilter: string | null;
  k: number;
  response: SearchResponse | null;
  loading: boolean;
  banner: Banner | null;
  inFlightSeq: number; // 0 when idle
}

export const initialState: UiState = {
  query: "",
  tafsirFilter: null,
  k: 10,
  response: null,
  loading: false,
  banner: null,
  inFlightSeq: 0,
};

export type UiAction =
  | { type: "SET_QUERY"; query: string }
  | { type: "SET_FILTER"; tafsir: string | null }
  | { type: "SET_K"; k: number }
  | { type: "SUBMIT"; seq: number; query: string }
  | { type: "SUCCESS"; seq: number; response: SearchResponse }
  | { type: "NO_SEARCHABLE_TERMS"; seq: number; message: string }
  | { type: "FAILURE"; seq: number; message: string };

export function reduce(state: UiState, action: UiAction): UiState {
  switch (action.type) {
    case "SET_QUERY":
      return { ...state, query: action.query };

    case "SET_FILTER":
      return { ...state, tafsirFilter: action.tafsir };

    case "SET_K":
      return { ...state, k: action.k };

    case "SUBMIT":
      // query text is kept so the user can refine it after the results land
      return {
        ...state,
        query: action.query,
        loading: true,
        banner: null,
        inFlightSeq: action.seq,
      };

    case "SUCCESS":
      if (action.seq !== state.inFlightSeq) return state; // stale
      return {
        ...state,
        response: action.response,
        loading: false,
        banner: null,
        inFlightSeq: 0,
      };

    case "NO_SEARCHABLE_TERMS":
      if (action.seq !== state.inFlightSeq) return state; // stale
      return {
        ...state,
        response: null,
        loading: false,
        banner: { kind: "no-terms", message: action.message },
        inFlightSeq: 0,
      };

    case "FAILURE":
      if (action.seq !== state.inFlightSeq) return state; // stale
      // keep the previous results visible; the banner invites a retry
      return {
        ...state,
        loading: false,
        banner: { kind: "error", message: action.message },
        inFlightSeq: 0,
      };
  }
}

export function replay(actions: UiAction[], from: UiState = initialState): UiState {
  return actions.reduce(reduce, from);
}

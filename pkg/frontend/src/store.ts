// Store: owns the state, numbers submissions, dispatches result actions.

import { ApiError, searchVerses } from "./api.js";
import { initialState, reduce, type UiAction, type UiState } from "./reducer.js";

export type Listener = (state: UiState) => void;

export class SearchStore {
  private state: UiState = initialState;
  private seq = 0;
  private listeners: Listener[] = [];

  constructor(private base: string) {}

  getState(): UiState {
    return this.state;
  }

  subscribe(listener: Listener): () => void {
    this.listeners.push(listener);
    return () => {
      this.listeners = this.listeners.filter((l) => l !== listener);
    };
  }

  dispatch(action: UiAction): void {
    this.state = reduce(this.state, action);
    for (const listener of this.listeners) listener(this.state);
  }

  /** Submit a search; a newer submission supersedes any pending one. */
  async submit(query: string): Promise<void> {
    const trimmed = query.trim();
    if (!trimmed) return;
    const seq = ++this.seq;
    this.dispatch({ type: "SUBMIT", seq, query });
    const { k, tafsirFilter } = this.state;
    try {
      const response = await searchVerses(this.base, {
        query: trimmed,
        k,
        tafsirs: tafsirFilter ? [tafsirFilter] : undefined,
      });
      this.dispatch({ type: "SUCCESS", seq, response });
    } catch (err) {
      if (err instanceof ApiError && err.status === 422) {
        this.dispatch({ type: "NO_SEARCHABLE_TERMS", seq, message: err.message });
      } else {
        const message = err instanceof Error ? err.message : String(err);
        this.dispatch({ type: "FAILURE", seq, message });
      }
    }
  }
}

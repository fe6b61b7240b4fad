/** Client-side session state. Holds only server responses and form
 * selections; anything analytic is reconstructible from the responses. */

import type {
  JobStatusResponse,
  SweepResponse,
  UploadResponse,
} from "./types.js";

export interface ExplorationState {
  sessionId: string | null;
  upload: UploadResponse | null;
  maxDists: number[];
  nbinsList: number[];
  sweep: SweepResponse | null;
  selectedModels: number[];
  /** Latest status per model index for the current bootstrap round. */
  jobs: Map<number, JobStatusResponse>;
  /** Monotone counter; stale responses from superseded requests are
   * dropped (last write wins). */
  requestId: number;
}

export function initialState(): ExplorationState {
  return {
    sessionId: null,
    upload: null,
    maxDists: [2000, 1500, 1000, 500],
    nbinsList: [13],
    sweep: null,
    selectedModels: [],
    jobs: new Map(),
    requestId: 0,
  };
}

export function parseNumberList(text: string): number[] {
  const values = text
    .split(",")
    .map((tok) => tok.trim())
    .filter((tok) => tok.length > 0)
    .map(Number);
  if (values.length === 0 || values.some((v) => !Number.isFinite(v))) {
    throw new Error(`expected a comma-separated list of numbers, got "${text}"`);
  }
  return values;
}

/** Job polling with exponential backoff until a terminal state. */

import type { ApiClient } from "./api.js";
import type { JobStatusResponse } from "./types.js";

export interface PollOptions {
  initialDelayMs?: number;
  maxDelayMs?: number;
  backoffFactor?: number;
  sleep?: (ms: number) => Promise<void>;
}

const defaultSleep = (ms: number) =>
  new Promise<void>((resolve) => setTimeout(resolve, ms));

/**
 * Poll a bootstrap job until it reaches `done` or `failed`.
 *
 * `onUpdate` fires for every status response, including the terminal
 * one, so callers can show live accepted/discarded counts.
 */
export async function pollJob(
  api: ApiClient,
  jobId: string,
  onUpdate: (status: JobStatusResponse) => void,
  options: PollOptions = {},
): Promise<JobStatusResponse> {
  const {
    initialDelayMs = 250,
    maxDelayMs = 4000,
    backoffFactor = 1.5,
    sleep = defaultSleep,
  } = options;

  let delay = initialDelayMs;
  for (;;) {
    const status = await api.jobStatus(jobId);
    onUpdate(status);
    if (status.state === "done" || status.state === "failed") {
      return status;
    }
    await sleep(delay);
    delay = Math.min(delay * backoffFactor, maxDelayMs);
  }
}

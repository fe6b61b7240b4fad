import { describe, expect, it } from "vitest";

import { ApiClient, ApiError, type FetchLike } from "../src/api.js";
import type { JobStatusResponse } from "../src/types.js";
import { loadFixture } from "./helpers.js";

interface Recorded {
  url: string;
  init?: RequestInit;
}

function clientReturning(
  status: number,
  body: unknown,
  calls: Recorded[],
): ApiClient {
  const fetchImpl: FetchLike = async (url, init) => {
    calls.push({ url, init });
    return new Response(JSON.stringify(body), { status });
  };
  return new ApiClient("http://svc", fetchImpl);
}

describe("ApiClient", () => {
  it("posts the sweep request to the session endpoint", async () => {
    const calls: Recorded[] = [];
    const api = clientReturning(200, loadFixture("sweep"), calls);
    await api.runSweep("abc", [1000, 800, 600], [13]);
    expect(calls).toHaveLength(1);
    expect(calls[0].url).toBe("http://svc/datasets/abc/variograms");
    expect(calls[0].init?.method).toBe("POST");
    expect(JSON.parse(calls[0].init?.body as string)).toEqual({
      max_dists: [1000, 800, 600],
      nbins_list: [13],
    });
  });

  it("posts bootstrap settings with server field names", async () => {
    const calls: Recorded[] = [];
    const api = clientReturning(200, loadFixture("bootstrap_launch_1"), calls);
    const resp = await api.launchBootstrap("abc", 2, 500, 3, 42);
    expect(resp.job_id).toBeTruthy();
    expect(JSON.parse(calls[0].init?.body as string)).toEqual({
      model_index: 2,
      B: 500,
      threshold_factor: 3,
      seed: 42,
    });
  });

  it("fetches job status without a body", async () => {
    const calls: Recorded[] = [];
    const api = clientReturning(
      200,
      loadFixture<JobStatusResponse>("job_done_1"),
      calls,
    );
    const status = await api.jobStatus("j1");
    expect(status.state).toBe("done");
    expect(calls[0].url).toBe("http://svc/jobs/j1");
    expect(calls[0].init).toBeUndefined();
  });

  it("raises ApiError carrying the server detail payload", async () => {
    const api = clientReturning(
      422,
      { detail: { kind: "resource", message: "acceptance rate too low" } },
      [],
    );
    const err = await api
      .launchBootstrap("abc", 1, 10, 0.01, 0)
      .then(() => null)
      .catch((e: unknown) => e);
    expect(err).toBeInstanceOf(ApiError);
    expect((err as ApiError).status).toBe(422);
    expect((err as ApiError).message).toBe("acceptance rate too low");
  });

  it("raises ApiError for plain-string details", async () => {
    const api = clientReturning(404, { detail: "unknown session abc" }, []);
    const err = await api
      .distanceInfo("abc")
      .then(() => null)
      .catch((e: unknown) => e);
    expect((err as ApiError).status).toBe(404);
    expect((err as ApiError).detail).toBe("unknown session abc");
  });
});

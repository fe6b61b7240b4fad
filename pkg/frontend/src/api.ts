/** Thin typed wrapper over the varioscope service endpoints. */

import type {
  ApiErrorPayload,
  BootstrapLaunchResponse,
  DistanceInfoResponse,
  JobStatusResponse,
  RegressionResponse,
  SweepResponse,
  UploadResponse,
} from "./types.js";

export class ApiError extends Error {
  constructor(
    public readonly status: number,
    public readonly detail: ApiErrorPayload["detail"],
  ) {
    super(typeof detail === "string" ? detail : detail.message);
    this.name = "ApiError";
  }
}

export type FetchLike = (url: string, init?: RequestInit) => Promise<Response>;

export class ApiClient {
  constructor(
    private readonly baseUrl: string = "",
    private readonly fetchImpl: FetchLike = (url, init) => fetch(url, init),
  ) {}

  private async request<T>(path: string, init?: RequestInit): Promise<T> {
    const resp = await this.fetchImpl(this.baseUrl + path, init);
    const body = await resp.json();
    if (!resp.ok) {
      throw new ApiError(resp.status, (body as ApiErrorPayload).detail);
    }
    return body as T;
  }

  private postJson<T>(path: string, payload: unknown): Promise<T> {
    return this.request<T>(path, {
      method: "POST",
      headers: { "Content-Type": "application/json" },
      body: JSON.stringify(payload),
    });
  }

  uploadDataset(file: File): Promise<UploadResponse> {
    const form = new FormData();
    form.append("file", file);
    return this.request<UploadResponse>("/datasets", {
      method: "POST",
      body: form,
    });
  }

  distanceInfo(sessionId: string): Promise<DistanceInfoResponse> {
    return this.request<DistanceInfoResponse>(
      `/datasets/${sessionId}/distance-info`,
    );
  }

  runSweep(
    sessionId: string,
    maxDists: number[],
    nbinsList: number[],
  ): Promise<SweepResponse> {
    return this.postJson<SweepResponse>(`/datasets/${sessionId}/variograms`, {
      max_dists: maxDists,
      nbins_list: nbinsList,
    });
  }

  runRegression(
    sessionId: string,
    response: string,
    predictors: string[],
  ): Promise<RegressionResponse> {
    return this.postJson<RegressionResponse>(
      `/datasets/${sessionId}/regressions`,
      { response, predictors },
    );
  }

  launchBootstrap(
    sessionId: string,
    modelIndex: number,
    B: number,
    thresholdFactor: number,
    seed: number,
  ): Promise<BootstrapLaunchResponse> {
    return this.postJson<BootstrapLaunchResponse>(
      `/datasets/${sessionId}/bootstrap`,
      {
        model_index: modelIndex,
        B,
        threshold_factor: thresholdFactor,
        seed,
      },
    );
  }

  jobStatus(jobId: string): Promise<JobStatusResponse> {
    return this.request<JobStatusResponse>(`/jobs/${jobId}`);
  }
}

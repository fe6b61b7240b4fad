/** Shapes of the JSON payloads served by the varioscope HTTP API. */

export interface MissingnessReport {
  n_total: number;
  n_missing_outcome: number;
  observed: [number, number][];
  missing: [number, number][];
}

export interface UploadResponse {
  schema_version: number;
  session_id: string;
  n: number;
  missingness: MissingnessReport;
  columns: string[];
}

export interface DistanceInfoResponse {
  schema_version: number;
  summary: {
    min: number;
    q1: number;
    median: number;
    mean: number;
    q3: number;
    max: number;
  };
  histogram: { lower: number; upper: number; count: number }[];
  n_below: Record<string, number>;
}

export interface ModelRow {
  index: number;
  "max.dist": number;
  nbins: number;
  "nbins.used": number;
  nugget: number | null;
  "partial.sill": number | null;
  shape: number | null;
  "prac.range": number | null;
  RSV: number | null;
  "rel.bias": number | null;
  converged: boolean;
  error: string | null;
}

/** Column order of the model comparison table, as served. */
export const MODEL_TABLE_COLUMNS = [
  "index",
  "max.dist",
  "nbins",
  "nbins.used",
  "nugget",
  "partial.sill",
  "shape",
  "prac.range",
  "RSV",
  "rel.bias",
] as const;

export type ModelTableColumn = (typeof MODEL_TABLE_COLUMNS)[number];

export interface VariogramBin {
  lower: number;
  upper: number;
  mean_dist: number;
  n_pairs: number;
  gamma_hat: number;
}

export interface ModelArrays {
  bins: VariogramBin[];
  curve: { h: number[]; gamma: number[] } | null;
}

export interface SweepResponse {
  schema_version: number;
  request: { max_dists: number[]; nbins_list: number[] };
  table: { dataset_label: string; rows: ModelRow[] };
  models: (ModelArrays | null)[];
  sweep_index: number;
}

export interface RegressionResponse {
  schema_version: number;
  summary: {
    coefficients: Record<string, number>;
    std_errors: Record<string, number>;
    t_values: Record<string, number>;
    p_values: Record<string, number>;
    residual_sd: number;
    df_residual: number;
    r_squared: number;
    adj_r_squared: number;
    n_used: number;
  };
  residual_session_id: string;
  n_residuals: number;
}

export interface BootstrapLaunchResponse {
  schema_version: number;
  job_id: string;
}

export interface UncertaintyRow {
  parameter: string;
  estimate: number;
  std_error: number;
}

export interface UncertaintyResult {
  schema_version: number;
  rows: UncertaintyRow[];
  n_accepted: number;
  n_discarded: number;
  discard_reasons: Record<string, number>;
  seed_used: number;
}

export type JobState = "queued" | "running" | "done" | "failed";

export interface JobStatusResponse {
  schema_version: number;
  job_id: string;
  session_id: string;
  state: JobState;
  progress: { accepted: number; discarded: number };
  result: UncertaintyResult | null;
  error: { kind: string; message: string } | null;
}

export interface ApiErrorPayload {
  detail: string | { kind: string; message: string };
}

/** DOM wiring for the exploration page (index.html). */

import { ApiClient, ApiError } from "./api.js";
import { coordsPlotSvg, distanceHistogramSvg } from "./charts.js";
import { pollJob } from "./poll.js";
import {
  renderDistanceSummary,
  renderErrorPanel,
  renderJobProgress,
  renderMissingness,
  renderModelCards,
  renderRegressionSummary,
  renderUncertaintyComparison,
} from "./render.js";
import { initialState, parseNumberList } from "./state.js";

const api = new ApiClient(
  new URLSearchParams(window.location.search).get("api") ?? "",
);
const state = initialState();

function el<T extends HTMLElement>(id: string): T {
  const node = document.getElementById(id);
  if (!node) throw new Error(`missing element #${id}`);
  return node as T;
}

function showError(err: unknown): void {
  const detail =
    err instanceof ApiError ? err.detail : String((err as Error).message ?? err);
  const panel = el<HTMLDivElement>("errors");
  panel.innerHTML = renderErrorPanel(detail);
  panel
    .querySelector(".dismiss")
    ?.addEventListener("click", () => (panel.innerHTML = ""));
}

function selectedModelIndices(): number[] {
  return [...document.querySelectorAll<HTMLInputElement>(".boot-select")]
    .filter((box) => box.checked)
    .map((box) => Number(box.value));
}

async function handleUpload(): Promise<void> {
  const input = el<HTMLInputElement>("file-input");
  const file = input.files?.[0];
  if (!file) return;
  const upload = await api.uploadDataset(file);
  state.sessionId = upload.session_id;
  state.upload = upload;
  state.sweep = null;
  state.jobs = new Map();
  el("dataset-view").innerHTML =
    renderMissingness(upload.missingness) + coordsPlotSvg(upload.missingness);
  el("cards").innerHTML = "";
  el("uncertainty").innerHTML = "";
  const info = await api.distanceInfo(upload.session_id);
  el("distance-view").innerHTML =
    renderDistanceSummary(info) + distanceHistogramSvg(info);
}

async function handleSweep(): Promise<void> {
  if (!state.sessionId) throw new Error("upload a dataset first");
  state.maxDists = parseNumberList(el<HTMLInputElement>("max-dists").value);
  state.nbinsList = parseNumberList(el<HTMLInputElement>("nbins-list").value);
  const requestId = ++state.requestId;
  const sweep = await api.runSweep(
    state.sessionId,
    state.maxDists,
    state.nbinsList,
  );
  if (requestId !== state.requestId) return;
  state.sweep = sweep;
  el("cards").innerHTML = renderModelCards(sweep);
}

async function handleRegression(): Promise<void> {
  if (!state.sessionId) throw new Error("upload a dataset first");
  const response = el<HTMLInputElement>("reg-response").value.trim();
  const predictors = el<HTMLInputElement>("reg-predictors")
    .value.split(",")
    .map((p) => p.trim())
    .filter((p) => p.length > 0);
  const result = await api.runRegression(state.sessionId, response, predictors);
  el("regression-view").innerHTML = renderRegressionSummary(result);
  // Switch the session to the residual dataset for subsequent sweeps.
  state.sessionId = result.residual_session_id;
  state.sweep = null;
  el("cards").innerHTML = "";
}

async function handleBootstrap(): Promise<void> {
  if (!state.sessionId || !state.sweep) {
    throw new Error("run a variogram sweep first");
  }
  state.selectedModels = selectedModelIndices();
  if (state.selectedModels.length === 0) {
    throw new Error("select at least one model card to compare");
  }
  const B = Number(el<HTMLInputElement>("boot-b").value);
  const tau = Number(el<HTMLInputElement>("boot-tau").value);
  const seed = Number(el<HTMLInputElement>("boot-seed").value);
  state.jobs = new Map();
  const runs = state.selectedModels.map(async (modelIndex) => {
    const launch = await api.launchBootstrap(
      state.sessionId!,
      modelIndex,
      B,
      tau,
      seed,
    );
    await pollJob(api, launch.job_id, (status) => {
      state.jobs.set(modelIndex, status);
      el("job-progress").innerHTML = [...state.jobs.values()]
        .map(renderJobProgress)
        .join("");
      el("uncertainty").innerHTML = renderUncertaintyComparison(state.jobs);
      const failure = status.error;
      if (failure) showError(failure);
    });
  });
  await Promise.all(runs);
}

function wire(id: string, handler: () => Promise<void>): void {
  el(id).addEventListener("click", () => {
    handler().catch(showError);
  });
}

wire("upload-btn", handleUpload);
wire("sweep-btn", handleSweep);
wire("reg-btn", handleRegression);
wire("boot-btn", handleBootstrap);

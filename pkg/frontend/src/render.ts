/** Pure HTML renderers. Every statistic shown comes verbatim from a
 * server response; nothing numeric is recomputed on the client. */

import {
  MODEL_TABLE_COLUMNS,
  type DistanceInfoResponse,
  type JobStatusResponse,
  type MissingnessReport,
  type ModelRow,
  type RegressionResponse,
  type SweepResponse,
} from "./types.js";
import { variogramCardSvg } from "./charts.js";

export function escapeHtml(text: string): string {
  return text
    .replace(/&/g, "&amp;")
    .replace(/</g, "&lt;")
    .replace(/>/g, "&gt;")
    .replace(/"/g, "&quot;");
}

/**
 * Render a server value as table-cell text. Numbers use the default
 * JavaScript string conversion, which round-trips the JSON value
 * exactly; null (a failed or undefined statistic) shows as NA.
 */
export function cellText(value: number | string | null): string {
  if (value === null) return "NA";
  return String(value);
}

export function renderMissingness(report: MissingnessReport): string {
  return `<p class="missingness">${cellText(report.n_total)} records, ` +
    `${cellText(report.n_missing_outcome)} with missing outcome ` +
    `(marked in red on the map).</p>`;
}

export function renderDistanceSummary(info: DistanceInfoResponse): string {
  const s = info.summary;
  const cells = (["min", "q1", "median", "mean", "q3", "max"] as const)
    .map((k) => `<td>${cellText(s[k])}</td>`)
    .join("");
  const below = Object.entries(info.n_below)
    .map(([t, c]) => `<li>${cellText(c)} pairs closer than ${escapeHtml(t)} m</li>`)
    .join("");
  return (
    `<table class="distance-summary"><thead><tr>` +
    `<th>Min.</th><th>1st Qu.</th><th>Median</th><th>Mean</th>` +
    `<th>3rd Qu.</th><th>Max.</th></tr></thead>` +
    `<tbody><tr>${cells}</tr></tbody></table>` +
    (below ? `<ul class="n-below">${below}</ul>` : "")
  );
}

function modelTableRow(row: ModelRow): string {
  const cells = MODEL_TABLE_COLUMNS.map(
    (col) => `<td data-col="${col}">${cellText(row[col])}</td>`,
  ).join("");
  const cls = row.converged ? "model-row" : "model-row failed";
  return `<tr class="${cls}" data-index="${row.index}">${cells}</tr>`;
}

export function renderModelTable(rows: ModelRow[]): string {
  const head = MODEL_TABLE_COLUMNS.map((c) => `<th>${c}</th>`).join("");
  const body = rows.map(modelTableRow).join("");
  return (
    `<table class="model-table"><thead><tr>${head}</tr></thead>` +
    `<tbody>${body}</tbody></table>`
  );
}

/** One card per sweep entry: fitted-curve plot plus its table row. */
export function renderModelCards(sweep: SweepResponse): string {
  const head = MODEL_TABLE_COLUMNS.map((c) => `<th>${c}</th>`).join("");
  const cards = sweep.table.rows.map((row, i) => {
    const arrays = sweep.models[i];
    const plot = arrays
      ? variogramCardSvg(arrays)
      : `<p class="fit-error">${escapeHtml(row.error ?? "no fit")}</p>`;
    return (
      `<div class="model-card" data-index="${row.index}">` +
      `<h3>Model ${row.index}</h3>${plot}` +
      `<table class="model-table"><thead><tr>${head}</tr></thead>` +
      `<tbody>${modelTableRow(row)}</tbody></table>` +
      `<label><input type="checkbox" class="boot-select" ` +
      `value="${row.index}"> compare</label></div>`
    );
  });
  return `<div class="card-grid">${cards.join("")}</div>`;
}

export function renderRegressionSummary(resp: RegressionResponse): string {
  const s = resp.summary;
  const rows = Object.keys(s.coefficients)
    .map(
      (term) =>
        `<tr><th>${escapeHtml(term)}</th>` +
        `<td>${cellText(s.coefficients[term])}</td>` +
        `<td>${cellText(s.std_errors[term])}</td>` +
        `<td>${cellText(s.t_values[term])}</td>` +
        `<td>${cellText(s.p_values[term])}</td></tr>`,
    )
    .join("");
  return (
    `<table class="regression-summary"><thead><tr><th></th>` +
    `<th>Estimate</th><th>Std. Error</th><th>t value</th><th>Pr(&gt;|t|)</th>` +
    `</tr></thead><tbody>${rows}</tbody></table>` +
    `<p>Residual SD ${cellText(s.residual_sd)} on ` +
    `${cellText(s.df_residual)} degrees of freedom; ` +
    `R&sup2; ${cellText(s.r_squared)} (adjusted ${cellText(s.adj_r_squared)}). ` +
    `${cellText(s.n_used)} rows used; residual session ` +
    `<code>${escapeHtml(resp.residual_session_id)}</code>.</p>`
  );
}

export function renderJobProgress(status: JobStatusResponse): string {
  const p = status.progress;
  return (
    `<p class="job-progress" data-state="${status.state}">` +
    `Job <code>${escapeHtml(status.job_id)}</code>: ${status.state}, ` +
    `${cellText(p.accepted)} accepted / ${cellText(p.discarded)} discarded.</p>`
  );
}

/**
 * Side-by-side Estimate / Std. Error table for the bootstrap jobs of
 * the selected models, keyed by model index.
 */
export function renderUncertaintyComparison(
  jobsByModel: Map<number, JobStatusResponse>,
): string {
  const done = [...jobsByModel.entries()].filter(
    ([, s]) => s.state === "done" && s.result !== null,
  );
  if (done.length === 0) return "";
  const parameters = done[0][1].result!.rows.map((r) => r.parameter);
  const head = done
    .map(
      ([idx]) =>
        `<th colspan="2" data-model="${idx}">Model ${idx}</th>`,
    )
    .join("");
  const subhead = done
    .map(() => `<th>Estimate</th><th>Std. Error</th>`)
    .join("");
  const body = parameters
    .map((param, i) => {
      const cells = done
        .map(([idx, status]) => {
          const row = status.result!.rows[i];
          return (
            `<td data-model="${idx}" data-field="estimate">` +
            `${cellText(row.estimate)}</td>` +
            `<td data-model="${idx}" data-field="std_error">` +
            `${cellText(row.std_error)}</td>`
          );
        })
        .join("");
      return `<tr><th>${escapeHtml(param)}</th>${cells}</tr>`;
    })
    .join("");
  const footer = done
    .map(([idx, status]) => {
      const r = status.result!;
      return (
        `<li>Model ${idx}: ${cellText(r.n_accepted)} accepted, ` +
        `${cellText(r.n_discarded)} discarded, seed ${cellText(r.seed_used)}.</li>`
      );
    })
    .join("");
  return (
    `<table class="uncertainty-table"><thead>` +
    `<tr><th rowspan="2">Parameter</th>${head}</tr><tr>${subhead}</tr>` +
    `</thead><tbody>${body}</tbody></table><ul class="job-notes">${footer}</ul>`
  );
}

export function renderErrorPanel(
  detail: string | { kind: string; message: string },
): string {
  const message = typeof detail === "string" ? detail : detail.message;
  const kind = typeof detail === "string" ? "error" : detail.kind;
  return (
    `<div class="error-panel" data-kind="${escapeHtml(kind)}">` +
    `<span>${escapeHtml(message)}</span>` +
    `<button class="dismiss" type="button">dismiss</button></div>`
  );
}

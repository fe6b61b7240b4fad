import { describe, expect, it } from "vitest";

import { distanceHistogramSvg } from "../src/charts.js";
import {
  renderDistanceSummary,
  renderErrorPanel,
  renderJobProgress,
} from "../src/render.js";
import { parseNumberList } from "../src/state.js";
import type { DistanceInfoResponse, JobStatusResponse } from "../src/types.js";
import { loadFixture, tableCells } from "./helpers.js";

const distanceInfo = loadFixture<DistanceInfoResponse>("distance_info");
const jobRunning = loadFixture<JobStatusResponse>("job_running");

describe("distance views", () => {
  it("shows the six-number summary verbatim", () => {
    const [cells] = tableCells(renderDistanceSummary(distanceInfo));
    const s = distanceInfo.summary;
    expect(cells).toEqual(
      [s.min, s.q1, s.median, s.mean, s.q3, s.max].map(String),
    );
  });

  it("draws one bar per histogram bin", () => {
    const svg = distanceHistogramSvg(distanceInfo);
    expect(svg.match(/<rect/g)).toHaveLength(distanceInfo.histogram.length);
  });
});

describe("job progress line", () => {
  it("shows the live accepted/discarded counts", () => {
    const html = renderJobProgress(jobRunning);
    expect(html).toContain('data-state="running"');
    expect(html).toContain(String(jobRunning.progress.accepted));
    expect(html).toContain(String(jobRunning.progress.discarded));
  });
});

describe("error panel", () => {
  it("surfaces structured server errors with their kind", () => {
    const html = renderErrorPanel({
      kind: "numerical",
      message: "selected model failed to fit",
    });
    expect(html).toContain('data-kind="numerical"');
    expect(html).toContain("selected model failed to fit");
    expect(html).toContain("dismiss");
  });

  it("escapes markup in plain-string details", () => {
    const html = renderErrorPanel('bad column "<script>"');
    expect(html).not.toContain("<script>");
    expect(html).toContain("&lt;script&gt;");
  });
});

describe("parameter list parsing", () => {
  it("accepts comma-separated numbers with spaces", () => {
    expect(parseNumberList("2000, 1500,1000 , 500")).toEqual([
      2000, 1500, 1000, 500,
    ]);
  });

  it("rejects non-numeric input", () => {
    expect(() => parseNumberList("10, twenty")).toThrow(/comma-separated/);
    expect(() => parseNumberList("")).toThrow(/comma-separated/);
  });
});

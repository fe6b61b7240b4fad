/** SVG chart builders. The server supplies every plotted number
 * (coordinates, histogram counts, bin statistics, curve samples);
 * this module only maps them to pixels. */

import type {
  DistanceInfoResponse,
  MissingnessReport,
  ModelArrays,
} from "./types.js";

const WIDTH = 360;
const HEIGHT = 280;
const MARGIN = { top: 12, right: 12, bottom: 32, left: 48 };

interface Scale {
  (value: number): number;
}

function linearScale(
  domainMin: number,
  domainMax: number,
  rangeMin: number,
  rangeMax: number,
): Scale {
  const span = domainMax - domainMin || 1;
  return (value) =>
    rangeMin + ((value - domainMin) / span) * (rangeMax - rangeMin);
}

function svgOpen(label: string): string {
  return (
    `<svg class="chart" role="img" aria-label="${label}" ` +
    `viewBox="0 0 ${WIDTH} ${HEIGHT}" xmlns="http://www.w3.org/2000/svg">`
  );
}

function axes(): string {
  const x0 = MARGIN.left;
  const y0 = HEIGHT - MARGIN.bottom;
  return (
    `<line x1="${x0}" y1="${y0}" x2="${WIDTH - MARGIN.right}" y2="${y0}" ` +
    `stroke="black"/>` +
    `<line x1="${x0}" y1="${MARGIN.top}" x2="${x0}" y2="${y0}" stroke="black"/>`
  );
}

export function coordsPlotSvg(report: MissingnessReport): string {
  const all = [...report.observed, ...report.missing];
  const xs = all.map((p) => p[0]);
  const ys = all.map((p) => p[1]);
  const sx = linearScale(
    Math.min(...xs),
    Math.max(...xs),
    MARGIN.left,
    WIDTH - MARGIN.right,
  );
  const sy = linearScale(
    Math.min(...ys),
    Math.max(...ys),
    HEIGHT - MARGIN.bottom,
    MARGIN.top,
  );
  const observed = report.observed
    .map(
      ([x, y]) =>
        `<circle cx="${sx(x)}" cy="${sy(y)}" r="2.5" fill="steelblue"/>`,
    )
    .join("");
  const missing = report.missing
    .map(([x, y]) => {
      const cx = sx(x);
      const cy = sy(y);
      return (
        `<g class="missing-marker" stroke="red" stroke-width="1.5">` +
        `<line x1="${cx - 4}" y1="${cy - 4}" x2="${cx + 4}" y2="${cy + 4}"/>` +
        `<line x1="${cx - 4}" y1="${cy + 4}" x2="${cx + 4}" y2="${cy - 4}"/>` +
        `</g>`
      );
    })
    .join("");
  return svgOpen("coordinates") + axes() + observed + missing + "</svg>";
}

export function distanceHistogramSvg(info: DistanceInfoResponse): string {
  const bars = info.histogram;
  const maxCount = Math.max(...bars.map((b) => b.count));
  const sx = linearScale(
    bars[0].lower,
    bars[bars.length - 1].upper,
    MARGIN.left,
    WIDTH - MARGIN.right,
  );
  const sy = linearScale(0, maxCount, HEIGHT - MARGIN.bottom, MARGIN.top);
  const rects = bars
    .map((b) => {
      const x = sx(b.lower);
      const y = sy(b.count);
      return (
        `<rect x="${x}" y="${y}" width="${sx(b.upper) - x}" ` +
        `height="${HEIGHT - MARGIN.bottom - y}" ` +
        `fill="lightsteelblue" stroke="white"/>`
      );
    })
    .join("");
  return svgOpen("distance histogram") + axes() + rects + "</svg>";
}

export function variogramCardSvg(arrays: ModelArrays): string {
  const gammaValues = arrays.bins.map((b) => b.gamma_hat);
  const hValues = arrays.bins.map((b) => b.mean_dist);
  if (arrays.curve) {
    gammaValues.push(...arrays.curve.gamma);
    hValues.push(...arrays.curve.h);
  }
  const sx = linearScale(
    0,
    Math.max(...hValues),
    MARGIN.left,
    WIDTH - MARGIN.right,
  );
  const sy = linearScale(
    0,
    Math.max(...gammaValues),
    HEIGHT - MARGIN.bottom,
    MARGIN.top,
  );
  const points = arrays.bins
    .map(
      (b) =>
        `<circle class="emp-point" cx="${sx(b.mean_dist)}" ` +
        `cy="${sy(b.gamma_hat)}" r="3" fill="black"/>`,
    )
    .join("");
  let curve = "";
  if (arrays.curve) {
    const path = arrays.curve.h
      .map(
        (h, i) =>
          `${i === 0 ? "M" : "L"}${sx(h)},${sy(arrays.curve!.gamma[i])}`,
      )
      .join("");
    curve = `<path class="fit-curve" d="${path}" fill="none" stroke="firebrick" stroke-width="1.5"/>`;
  }
  return svgOpen("semi-variogram") + axes() + points + curve + "</svg>";
}

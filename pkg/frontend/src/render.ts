/** Pure view-model builders plus thin canvas painters.
 *
 * The geometry->polygon and field->series transforms are separated from the
 * canvas calls so they can be exercised headlessly.
 */

import { Grid, decodeF32 } from "./codec.js";
import { cpToCss } from "./colormap.js";
import { PredictResponse } from "./types.js";

export interface ContourCell {
  poly: Array<[number, number]>; // (x, z) top-view polygon
  color: string;
  cp: number;
}

export interface Polyline {
  x: Float32Array; // chord fraction, LE -> TE
  v: Float32Array;
}

export interface SectionSeries {
  upper: Polyline;
  lower: Polyline;
}

export interface ResultView {
  meshShape: number[];
  contour: ContourCell[];
  sectionCp: SectionSeries;
  sectionCfTau: SectionSeries;
  coefficients: { cl: string; cd: string; cmz: string };
  timingMs: number;
}

function gridOf(response: PredictResponse, payload: string): Grid {
  const [, h, w] = response.mesh_shape;
  return new Grid(decodeF32(payload, h * w), h, w);
}

function meshChannel(response: PredictResponse, channel: number): Grid {
  const [, h, w] = response.mesh_shape;
  const all = decodeF32(response.mesh, 3 * h * w);
  return new Grid(all.subarray(channel * h * w, (channel + 1) * h * w), h, w);
}

/** Upper-surface cells as top-view (x, z) quads colored by Cp. */
export function buildContour(response: PredictResponse): ContourCell[] {
  const [, h, w] = response.mesh_shape;
  const cp = gridOf(response, response.fields[0].cp);
  const x = meshChannel(response, 0);
  const z = meshChannel(response, 2);
  const cells: ContourCell[] = [];
  const half = Math.floor(h / 2);
  for (let i = half; i < h - 2; i++) {
    for (let j = 0; j < w - 1; j++) {
      cells.push({
        poly: [
          [x.at(i, j), z.at(i, j)],
          [x.at(i + 1, j), z.at(i + 1, j)],
          [x.at(i + 1, j + 1), z.at(i + 1, j + 1)],
          [x.at(i, j + 1), z.at(i, j + 1)],
        ],
        color: cpToCss(cp.at(i, j)),
        cp: cp.at(i, j),
      });
    }
  }
  return cells;
}

/** Chordwise series of one field column, split into lower/upper surfaces.
 *
 * The column index is floor(eta * W); the chordwise loop runs lower TE ->
 * LE -> upper TE with the closing TE cell last, so the lower run is
 * reversed to read LE -> TE like the upper one.
 */
export function buildSection(
  response: PredictResponse,
  payload: string,
  eta: number,
): SectionSeries {
  const [, h, w] = response.mesh_shape;
  const field = gridOf(response, payload).column(eta);
  const x = meshChannel(response, 0).column(eta);
  const half = Math.floor(h / 2);
  let xMin = Infinity;
  let xMax = -Infinity;
  for (const v of x) {
    xMin = Math.min(xMin, v);
    xMax = Math.max(xMax, v);
  }
  const chord = Math.max(xMax - xMin, 1e-12);
  const chordFrac = (v: number) => (v - xMin) / chord;

  const lower: Polyline = { x: new Float32Array(half), v: new Float32Array(half) };
  for (let i = 0; i < half; i++) {
    const src = half - 1 - i; // reverse: stored TE -> LE
    lower.x[i] = chordFrac(x[src]);
    lower.v[i] = field[src];
  }
  const nUp = h - 1 - half; // closing TE cell excluded
  const upper: Polyline = { x: new Float32Array(nUp), v: new Float32Array(nUp) };
  for (let i = 0; i < nUp; i++) {
    upper.x[i] = chordFrac(x[half + i]);
    upper.v[i] = field[half + i];
  }
  return { upper, lower };
}

export function buildResultView(response: PredictResponse, sectionEta: number): ResultView {
  const c = response.coefficients[0];
  return {
    meshShape: response.mesh_shape,
    contour: buildContour(response),
    sectionCp: buildSection(response, response.fields[0].cp, sectionEta),
    sectionCfTau: buildSection(response, response.fields[0].cf_tau, sectionEta),
    coefficients: {
      cl: c.cl.toPrecision(4),
      cd: c.cd.toPrecision(4),
      cmz: c.cmz.toPrecision(4),
    },
    timingMs: response.timing_ms,
  };
}

// ------------------------------------------------------------ canvas

export function paintContour(canvas: HTMLCanvasElement, cells: ContourCell[]): void {
  const ctx = canvas.getContext("2d");
  if (!ctx || cells.length === 0) return;
  let xMin = Infinity, xMax = -Infinity, zMin = Infinity, zMax = -Infinity;
  for (const cell of cells) {
    for (const [x, z] of cell.poly) {
      xMin = Math.min(xMin, x); xMax = Math.max(xMax, x);
      zMin = Math.min(zMin, z); zMax = Math.max(zMax, z);
    }
  }
  const pad = 10;
  const sx = (canvas.width - 2 * pad) / Math.max(xMax - xMin, 1e-9);
  const sz = (canvas.height - 2 * pad) / Math.max(zMax - zMin, 1e-9);
  const s = Math.min(sx, sz);
  ctx.clearRect(0, 0, canvas.width, canvas.height);
  for (const cell of cells) {
    ctx.beginPath();
    cell.poly.forEach(([x, z], i) => {
      const px = pad + (x - xMin) * s;
      const py = canvas.height - pad - (z - zMin) * s;
      if (i === 0) ctx.moveTo(px, py);
      else ctx.lineTo(px, py);
    });
    ctx.closePath();
    ctx.fillStyle = cell.color;
    ctx.strokeStyle = cell.color;
    ctx.fill();
    ctx.stroke();
  }
}

export function paintSeries(
  canvas: HTMLCanvasElement,
  series: SectionSeries,
  label: string,
  invertY = false,
): void {
  const ctx = canvas.getContext("2d");
  if (!ctx) return;
  ctx.clearRect(0, 0, canvas.width, canvas.height);
  const all = [...series.upper.v, ...series.lower.v];
  let lo = Math.min(...all);
  let hi = Math.max(...all);
  if (hi - lo < 1e-9) hi = lo + 1;
  const pad = 24;
  const px = (x: number) => pad + x * (canvas.width - 2 * pad);
  const py = (v: number) => {
    const t = (v - lo) / (hi - lo);
    const tt = invertY ? t : 1 - t;
    return pad + tt * (canvas.height - 2 * pad);
  };
  ctx.strokeStyle = "#888";
  ctx.strokeRect(pad, pad, canvas.width - 2 * pad, canvas.height - 2 * pad);
  const draw = (line: Polyline, color: string) => {
    ctx.beginPath();
    line.v.forEach((v, i) => {
      if (i === 0) ctx.moveTo(px(line.x[i]), py(v));
      else ctx.lineTo(px(line.x[i]), py(v));
    });
    ctx.strokeStyle = color;
    ctx.stroke();
  };
  draw(series.upper, "#c44");
  draw(series.lower, "#46a");
  ctx.fillStyle = "#222";
  ctx.font = "11px sans-serif";
  ctx.fillText(label, pad + 4, pad - 8);
}

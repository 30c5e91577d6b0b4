/**
 * Plot jobs: each kind consumes run outputs through the documented file
 * formats and renders a deterministic SVG.
 */

import { Snapshot, xCoord, yCoord, sampleAt } from "./snapshot";
import { Table, column } from "./series";
import { terminalTime } from "./detect";
import {
  HEIGHT, MARGIN, SvgDoc, WIDTH, diverging, extent, fmt, linearScale,
} from "./svg";

export type PlotKind = "surface" | "contour" | "peak_series" | "ce_bar" | "ce_series";

const PLOT_X0 = MARGIN.left;
const PLOT_X1 = WIDTH - MARGIN.right;
const PLOT_Y0 = HEIGHT - MARGIN.bottom;
const PLOT_Y1 = MARGIN.top;

/** Line chart of the tracked peak against slow time, with the detected
 * collapse time annotated when the series halves. */
export function renderPeakSeries(table: Table, title = "peak amplitude"): string {
  const t = column(table, "time");
  const p = column(table, "peak_value");
  const doc = new SvgDoc();
  const xs = linearScale(extent(t), [PLOT_X0, PLOT_X1]);
  const lo = Math.min(0, extent(p)[0]);
  const ys = linearScale([lo, extent(p)[1] * 1.05], [PLOT_Y0, PLOT_Y1]);
  doc.axes(xs, ys, "T", "peak");
  doc.polyline(t.map((tv, k) => [xs(tv), ys(p[k])] as [number, number]), "#153e75", 1.8);
  const terminal = terminalTime(t, p);
  doc.line(xs(terminal.time), PLOT_Y0, xs(terminal.time), PLOT_Y1,
           "#b02417", 1.2, "6,4");
  doc.text(xs(terminal.time) + 4, PLOT_Y1 + 14,
           `${terminal.kind} T=${fmt(terminal.time)}`, "start", 12);
  doc.text((PLOT_X0 + PLOT_X1) / 2, 24, title, "middle", 15);
  return doc.toString();
}

/** Bar chart of final entropy against the shear rate. */
export function renderCeBar(tables: Array<{ f1: number; ce: number }>): string {
  const doc = new SvgDoc();
  const f1s = tables.map((r) => r.f1);
  const ces = tables.map((r) => r.ce);
  const xs = linearScale([Math.min(...f1s) - 0.1, Math.max(...f1s) + 0.1],
                         [PLOT_X0, PLOT_X1]);
  const ys = linearScale([0, Math.max(...ces) * 1.1], [PLOT_Y0, PLOT_Y1]);
  doc.axes(xs, ys, "f1", "entropy");
  const bw = Math.min(34, (PLOT_X1 - PLOT_X0) / (tables.length * 2));
  let best = 0;
  tables.forEach((r, k) => { if (r.ce > tables[best].ce) best = k; });
  tables.forEach((r, k) => {
    const color = k === best ? "#b02417" : "#3566a8";
    doc.rect(xs(r.f1) - bw / 2, ys(r.ce), bw, PLOT_Y0 - ys(r.ce), color);
  });
  doc.text((PLOT_X0 + PLOT_X1) / 2, 24, "configurational entropy by shear rate", "middle", 15);
  return doc.toString();
}

/** Entropy against time as a line chart (one run). */
export function renderCeSeries(table: Table): string {
  const t = column(table, "T");
  const ce = column(table, "ce");
  const doc = new SvgDoc();
  const xs = linearScale(extent(t), [PLOT_X0, PLOT_X1]);
  const ys = linearScale([0, extent(ce)[1] * 1.1], [PLOT_Y0, PLOT_Y1]);
  doc.axes(xs, ys, "T", "entropy");
  doc.polyline(t.map((tv, k) => [xs(tv), ys(ce[k])] as [number, number]), "#356a2e", 1.8);
  doc.text((PLOT_X0 + PLOT_X1) / 2, 24, "configurational entropy", "middle", 15);
  return doc.toString();
}

/** Filled-cell rendering of a snapshot (map view, periodic x). */
export function renderContour(snap: Snapshot, levels = 10): string {
  const doc = new SvgDoc();
  const xs = linearScale([-snap.lx, snap.lx], [PLOT_X0, PLOT_X1]);
  const ys = linearScale([-snap.ly, snap.ly], [PLOT_Y0, PLOT_Y1]);
  const [lo, hi] = extent(Array.from(snap.values));
  const cw = (PLOT_X1 - PLOT_X0) / snap.nx;
  const rows = snap.ny + 1;
  const ch = (PLOT_Y0 - PLOT_Y1) / rows;
  for (let j = 0; j < rows; j++) {
    for (let i = 0; i < snap.nx; i++) {
      const v = (sampleAt(snap, j, i) - lo) / (hi - lo || 1);
      const level = Math.round(v * levels) / levels;
      doc.rect(xs(xCoord(snap, i)), ys(yCoord(snap, j)) - ch, cw + 0.5, ch + 0.5,
               diverging(level));
    }
  }
  doc.axes(xs, ys, "x", "y");
  doc.text((PLOT_X0 + PLOT_X1) / 2, 24,
           `${snap.fieldId} at T=${fmt(snap.time)}`, "middle", 15);
  return doc.toString();
}

/** Oblique-projected wireframe of a snapshot. */
export function renderSurface(snap: Snapshot, rowStride = 4): string {
  const doc = new SvgDoc();
  const [lo, hi] = extent(Array.from(snap.values));
  const zscale = 140 / (hi - lo || 1);
  const px = (i: number, j: number) =>
    90 + (i / snap.nx) * 620 + (j / (snap.ny + 1)) * 110;
  const py = (j: number, v: number) =>
    440 - (j / (snap.ny + 1)) * 190 - (v - lo) * zscale;
  for (let j = snap.ny; j >= 0; j -= rowStride) {
    const pts: Array<[number, number]> = [];
    for (let i = 0; i < snap.nx; i++) {
      pts.push([px(i, j), py(j, sampleAt(snap, j, i))]);
    }
    const shade = Math.round(140 - (j / (snap.ny + 1)) * 90);
    doc.polyline(pts, `rgb(30,${shade},${Math.min(220, shade + 90)})`, 1.0);
  }
  doc.text(WIDTH / 2, 24, `${snap.fieldId} surface at T=${fmt(snap.time)}`, "middle", 15);
  doc.text(WIDTH / 2, HEIGHT - 14, "x (periodic)", "middle", 12);
  return doc.toString();
}

/**
 * Deterministic SVG assembly: fixed-precision coordinates, no timestamps,
 * no randomness, so identical inputs produce byte-identical images.
 */

export const WIDTH = 860;
export const HEIGHT = 560;
export const MARGIN = { left: 70, right: 30, top: 40, bottom: 55 };

export function fmt(v: number): string {
  if (!Number.isFinite(v)) return "0";
  const s = v.toFixed(2);
  return s === "-0.00" ? "0.00" : s;
}

export function fmtTick(v: number): string {
  const a = Math.abs(v);
  if (a !== 0 && (a >= 1e4 || a < 1e-3)) return v.toExponential(1);
  const s = Number(v.toPrecision(6));
  return String(s);
}

export interface Scale {
  (v: number): number;
  domain: [number, number];
}

export function linearScale(domain: [number, number], range: [number, number]): Scale {
  const [d0, d1] = domain;
  const [r0, r1] = range;
  const span = d1 - d0 === 0 ? 1 : d1 - d0;
  const f = ((v: number) => r0 + ((v - d0) / span) * (r1 - r0)) as Scale;
  f.domain = domain;
  return f;
}

export function extent(values: number[]): [number, number] {
  let lo = Infinity;
  let hi = -Infinity;
  for (const v of values) {
    if (!Number.isFinite(v)) continue;
    if (v < lo) lo = v;
    if (v > hi) hi = v;
  }
  if (lo === Infinity) return [0, 1];
  if (lo === hi) return [lo - 1, hi + 1];
  return [lo, hi];
}

export function ticks(domain: [number, number], count = 6): number[] {
  const [lo, hi] = domain;
  const span = hi - lo;
  if (span <= 0) return [lo];
  const step0 = span / count;
  const mag = Math.pow(10, Math.floor(Math.log10(step0)));
  const norm = step0 / mag;
  const step = (norm >= 5 ? 5 : norm >= 2 ? 2 : 1) * mag;
  const start = Math.ceil(lo / step) * step;
  const out: number[] = [];
  for (let v = start; v <= hi + 1e-12 * span; v += step) {
    out.push(Math.abs(v) < step * 1e-9 ? 0 : v);
  }
  return out;
}

export class SvgDoc {
  private parts: string[] = [];

  constructor(width = WIDTH, height = HEIGHT) {
    this.parts.push(
      `<svg xmlns="http://www.w3.org/2000/svg" width="${width}" ` +
      `height="${height}" viewBox="0 0 ${width} ${height}">`,
      `<rect width="${width}" height="${height}" fill="white"/>`);
  }

  raw(s: string): void {
    this.parts.push(s);
  }

  polyline(pts: Array<[number, number]>, stroke: string, width = 1.5): void {
    const d = pts.map(([x, y]) => `${fmt(x)},${fmt(y)}`).join(" ");
    this.parts.push(
      `<polyline points="${d}" fill="none" stroke="${stroke}" stroke-width="${width}"/>`);
  }

  line(x1: number, y1: number, x2: number, y2: number, stroke: string,
       width = 1, dash = ""): void {
    const dashAttr = dash ? ` stroke-dasharray="${dash}"` : "";
    this.parts.push(
      `<line x1="${fmt(x1)}" y1="${fmt(y1)}" x2="${fmt(x2)}" y2="${fmt(y2)}"` +
      ` stroke="${stroke}" stroke-width="${width}"${dashAttr}/>`);
  }

  rect(x: number, y: number, w: number, h: number, fill: string): void {
    this.parts.push(
      `<rect x="${fmt(x)}" y="${fmt(y)}" width="${fmt(w)}" height="${fmt(h)}"` +
      ` fill="${fill}"/>`);
  }

  path(d: string, stroke: string, fill = "none", width = 1): void {
    this.parts.push(
      `<path d="${d}" stroke="${stroke}" fill="${fill}" stroke-width="${width}"/>`);
  }

  text(x: number, y: number, s: string, anchor = "middle", size = 13): void {
    this.parts.push(
      `<text x="${fmt(x)}" y="${fmt(y)}" text-anchor="${anchor}" ` +
      `font-family="sans-serif" font-size="${size}">${escapeXml(s)}</text>`);
  }

  axes(xs: Scale, ys: Scale, xlabel: string, ylabel: string): void {
    const { left, right, top, bottom } = MARGIN;
    const x0 = left;
    const x1 = WIDTH - right;
    const y0 = HEIGHT - bottom;
    const y1 = top;
    this.line(x0, y0, x1, y0, "black");
    this.line(x0, y0, x0, y1, "black");
    for (const t of ticks(xs.domain)) {
      const px = xs(t);
      this.line(px, y0, px, y0 + 5, "black");
      this.text(px, y0 + 20, fmtTick(t));
    }
    for (const t of ticks(ys.domain)) {
      const py = ys(t);
      this.line(x0 - 5, py, x0, py, "black");
      this.text(x0 - 9, py + 4, fmtTick(t), "end", 12);
    }
    this.text((x0 + x1) / 2, HEIGHT - 12, xlabel);
    this.raw(`<g transform="rotate(-90 18 ${(y0 + y1) / 2})">`);
    this.text(18, (y0 + y1) / 2, ylabel);
    this.raw("</g>");
  }

  toString(): string {
    return this.parts.join("\n") + "\n</svg>\n";
  }
}

function escapeXml(s: string): string {
  return s.replace(/&/g, "&amp;").replace(/</g, "&lt;").replace(/>/g, "&gt;");
}

/** Perceptually-ordered blue-to-red map for field values in [0, 1]. */
export function diverging(t: number): string {
  const clamp = Math.max(0, Math.min(1, t));
  const r = Math.round(255 * Math.min(1, 2 * clamp));
  const b = Math.round(255 * Math.min(1, 2 * (1 - clamp)));
  const g = Math.round(255 * (1 - Math.abs(2 * clamp - 1)) * 0.85);
  return `rgb(${r},${g},${b})`;
}

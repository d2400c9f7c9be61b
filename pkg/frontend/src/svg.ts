/**
 * Minimal deterministic SVG building blocks: linear scales, axes, paths,
 * and the sequential colormap used by the heatmaps. Pure string assembly;
 * identical inputs always produce identical bytes.
 */

export interface Scale {
  (value: number): number;
  domain: [number, number];
  range: [number, number];
}

export function linearScale(domain: [number, number], range: [number, number]): Scale {
  const [d0, d1] = domain;
  const [r0, r1] = range;
  const span = d1 - d0 === 0 ? 1 : d1 - d0;
  const scale = ((value: number) => r0 + ((value - d0) / span) * (r1 - r0)) as Scale;
  scale.domain = domain;
  scale.range = range;
  return scale;
}

/** Fixed-precision formatter; avoids float repr jitter in the output. */
export function fmt(value: number, digits = 2): string {
  const s = value.toFixed(digits);
  return s === "-0" || /^-0\.0*$/.test(s) ? s.slice(1) : s;
}

export function ticks(lo: number, hi: number, count = 5): number[] {
  if (!(hi > lo)) return [lo];
  const out: number[] = [];
  for (let i = 0; i < count; i++) {
    out.push(lo + ((hi - lo) * i) / (count - 1));
  }
  return out;
}

export function escapeText(text: string): string {
  return text.replace(/&/g, "&amp;").replace(/</g, "&lt;").replace(/>/g, "&gt;");
}

// dark-purple -> blue -> green -> yellow anchors: the low end of the scale
// is the dark end, so small values read as dark cells
const COLOR_STOPS: Array<[number, number, number]> = [
  [68, 1, 84],
  [59, 82, 139],
  [33, 145, 140],
  [94, 201, 98],
  [253, 231, 37],
];

export function sequentialColor(t: number): string {
  const clamped = Math.min(1, Math.max(0, t));
  const pos = clamped * (COLOR_STOPS.length - 1);
  const i = Math.min(COLOR_STOPS.length - 2, Math.floor(pos));
  const frac = pos - i;
  const mix = (a: number, b: number) => Math.round(a + (b - a) * frac);
  const [r, g, b] = [0, 1, 2].map((c) => mix(COLOR_STOPS[i][c], COLOR_STOPS[i + 1][c]));
  return `#${[r, g, b].map((v) => v.toString(16).padStart(2, "0")).join("")}`;
}

export const SERIES_COLORS = ["#4477aa", "#ee6677", "#228833", "#ccbb44", "#aa3377", "#66ccee"];

export function polylinePath(xs: number[], ys: number[]): string {
  return xs.map((x, i) => `${i === 0 ? "M" : "L"}${fmt(x)},${fmt(ys[i])}`).join("");
}

/** Closed band between an upper and lower series (for mean +/- std shading). */
export function bandPath(xs: number[], upper: number[], lower: number[]): string {
  const forward = xs.map((x, i) => `${i === 0 ? "M" : "L"}${fmt(x)},${fmt(upper[i])}`).join("");
  const backward = [...xs.keys()]
    .reverse()
    .map((i) => `L${fmt(xs[i])},${fmt(lower[i])}`)
    .join("");
  return `${forward}${backward}Z`;
}

export interface AxisLabels {
  x: string;
  y: string;
}

/** Left + bottom axes with tick marks and labels for one plot panel. */
export function axes(
  xScale: Scale,
  yScale: Scale,
  labels: AxisLabels,
  tickFmtDigits = 1,
): string {
  const [x0, x1] = xScale.range;
  const [yBottom, yTop] = yScale.range;
  const parts: string[] = [];
  parts.push(
    `<line x1="${fmt(x0)}" y1="${fmt(yBottom)}" x2="${fmt(x1)}" y2="${fmt(yBottom)}" stroke="#333"/>`,
    `<line x1="${fmt(x0)}" y1="${fmt(yBottom)}" x2="${fmt(x0)}" y2="${fmt(yTop)}" stroke="#333"/>`,
  );
  for (const t of ticks(xScale.domain[0], xScale.domain[1])) {
    const x = xScale(t);
    parts.push(
      `<line x1="${fmt(x)}" y1="${fmt(yBottom)}" x2="${fmt(x)}" y2="${fmt(yBottom + 4)}" stroke="#333"/>`,
      `<text x="${fmt(x)}" y="${fmt(yBottom + 16)}" font-size="10" text-anchor="middle">${fmt(t, tickFmtDigits)}</text>`,
    );
  }
  for (const t of ticks(yScale.domain[0], yScale.domain[1])) {
    const y = yScale(t);
    parts.push(
      `<line x1="${fmt(x0 - 4)}" y1="${fmt(y)}" x2="${fmt(x0)}" y2="${fmt(y)}" stroke="#333"/>`,
      `<text x="${fmt(x0 - 6)}" y="${fmt(y + 3)}" font-size="10" text-anchor="end">${fmt(t, tickFmtDigits)}</text>`,
    );
  }
  const xMid = (x0 + x1) / 2;
  const yMid = (yBottom + yTop) / 2;
  parts.push(
    `<text x="${fmt(xMid)}" y="${fmt(yBottom + 32)}" font-size="12" text-anchor="middle">${escapeText(labels.x)}</text>`,
    `<text x="${fmt(x0 - 38)}" y="${fmt(yMid)}" font-size="12" text-anchor="middle" transform="rotate(-90 ${fmt(x0 - 38)} ${fmt(yMid)})">${escapeText(labels.y)}</text>`,
  );
  return parts.join("\n");
}

export function svgDocument(width: number, height: number, body: string): string {
  return [
    `<svg xmlns="http://www.w3.org/2000/svg" width="${width}" height="${height}" viewBox="0 0 ${width} ${height}">`,
    `<rect width="${width}" height="${height}" fill="#ffffff"/>`,
    body,
    `</svg>`,
    ``,
  ].join("\n");
}

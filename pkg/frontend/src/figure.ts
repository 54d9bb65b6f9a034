/**
 * Minimal deterministic SVG figure builder: scales, axes, line series with
 * per-scheme markers and dash patterns, and a legend.
 *
 * Styles are a pure function of the scheme id so the same scheme looks the
 * same in every figure, regardless of which CSVs happen to be loaded.
 */

export interface Point {
  x: number;
  y: number;
}

export interface Series {
  /** Scheme id; selects the colour/marker/dash style. */
  scheme: string;
  /** Legend text (scheme id plus any qualifier such as the packing ratio). */
  label: string;
  points: Point[];
}

export interface SeriesStyle {
  color: string;
  dash: string;
  marker: "circle" | "square" | "diamond" | "triangle" | "cross";
}

const COLORS = [
  "#1f77b4",
  "#d62728",
  "#2ca02c",
  "#9467bd",
  "#ff7f0e",
  "#8c564b",
  "#17becf",
  "#7f7f7f",
];
const DASHES = ["", "7 3", "2 3", "8 3 2 3", "4 2"];
const MARKERS: SeriesStyle["marker"][] = [
  "circle",
  "square",
  "diamond",
  "triangle",
  "cross",
];

function fnv1a(text: string): number {
  let h = 0x811c9dc5;
  for (let i = 0; i < text.length; i++) {
    h ^= text.charCodeAt(i);
    h = Math.imul(h, 0x01000193) >>> 0;
  }
  return h >>> 0;
}

export function schemeStyle(scheme: string): SeriesStyle {
  const h = fnv1a(scheme);
  return {
    color: COLORS[h % COLORS.length],
    dash: DASHES[Math.floor(h / 7) % DASHES.length],
    marker: MARKERS[Math.floor(h / 37) % MARKERS.length],
  };
}

export type Scale = (value: number) => number;

export function linearScale(
  domain: [number, number],
  range: [number, number],
): Scale {
  const [d0, d1] = domain;
  const [r0, r1] = range;
  const span = d1 - d0 || 1;
  return (v) => r0 + ((v - d0) / span) * (r1 - r0);
}

export function log10Scale(
  domain: [number, number],
  range: [number, number],
): Scale {
  const inner = linearScale([Math.log10(domain[0]), Math.log10(domain[1])], range);
  return (v) => inner(Math.log10(v));
}

/** Evenly spaced "nice" ticks covering [lo, hi]. */
export function linearTicks(lo: number, hi: number, target = 8): number[] {
  if (!(hi > lo)) return [lo];
  const rawStep = (hi - lo) / target;
  const mag = Math.pow(10, Math.floor(Math.log10(rawStep)));
  const step = [1, 2, 2.5, 5, 10].map((m) => m * mag).find((s) => s >= rawStep)!;
  const ticks: number[] = [];
  for (let t = Math.ceil(lo / step) * step; t <= hi + 1e-9; t += step) {
    ticks.push(Number(t.toFixed(10)));
  }
  return ticks;
}

const esc = (s: string) =>
  s.replace(/&/g, "&amp;").replace(/</g, "&lt;").replace(/>/g, "&gt;").replace(/"/g, "&quot;");
const fmt = (v: number) => Number(v.toFixed(2)).toString();

function markerSvg(style: SeriesStyle, cx: number, cy: number, r = 3.5): string {
  const c = style.color;
  switch (style.marker) {
    case "circle":
      return `<circle class="marker" cx="${fmt(cx)}" cy="${fmt(cy)}" r="${r}" fill="none" stroke="${c}"/>`;
    case "square":
      return `<rect class="marker" x="${fmt(cx - r)}" y="${fmt(cy - r)}" width="${2 * r}" height="${2 * r}" fill="none" stroke="${c}"/>`;
    case "diamond":
      return `<path class="marker" d="M${fmt(cx)} ${fmt(cy - r)} L${fmt(cx + r)} ${fmt(cy)} L${fmt(cx)} ${fmt(cy + r)} L${fmt(cx - r)} ${fmt(cy)} Z" fill="none" stroke="${c}"/>`;
    case "triangle":
      return `<path class="marker" d="M${fmt(cx)} ${fmt(cy - r)} L${fmt(cx + r)} ${fmt(cy + r)} L${fmt(cx - r)} ${fmt(cy + r)} Z" fill="none" stroke="${c}"/>`;
    case "cross":
      return `<path class="marker" d="M${fmt(cx - r)} ${fmt(cy - r)} L${fmt(cx + r)} ${fmt(cy + r)} M${fmt(cx - r)} ${fmt(cy + r)} L${fmt(cx + r)} ${fmt(cy - r)}" stroke="${c}"/>`;
  }
}

export interface FigureSpec {
  width?: number;
  height?: number;
  xLabel: string;
  yLabel: string;
  xTicks: number[];
  /** y tick positions paired with their display text. */
  yTicks: { value: number; text: string }[];
  xScale: Scale;
  yScale: Scale;
  xDomain: [number, number];
  yDomain: [number, number];
  series: Series[];
  /** Optional horizontal reference line (e.g. a BER threshold). */
  hline?: { value: number; label: string };
}

export const MARGIN = { top: 20, right: 20, bottom: 45, left: 60 };

/** Assemble the complete SVG document. Pure: same spec, same bytes. */
export function renderFigure(spec: FigureSpec): string {
  const width = spec.width ?? 640;
  const height = spec.height ?? 480;
  const x0 = MARGIN.left;
  const x1 = width - MARGIN.right;
  const y0 = height - MARGIN.bottom;
  const y1 = MARGIN.top;

  const parts: string[] = [];
  parts.push(
    `<svg xmlns="http://www.w3.org/2000/svg" width="${width}" height="${height}" viewBox="0 0 ${width} ${height}" font-family="sans-serif" font-size="11">`,
  );
  parts.push(`<rect width="${width}" height="${height}" fill="white"/>`);

  // Grid and axis ticks.
  for (const t of spec.xTicks) {
    const px = spec.xScale(t);
    parts.push(
      `<line class="grid" x1="${fmt(px)}" y1="${y0}" x2="${fmt(px)}" y2="${y1}" stroke="#ddd"/>`,
    );
    parts.push(
      `<text class="x-tick" x="${fmt(px)}" y="${y0 + 16}" text-anchor="middle">${fmt(t)}</text>`,
    );
  }
  for (const { value, text } of spec.yTicks) {
    const py = spec.yScale(value);
    parts.push(
      `<line class="grid" x1="${x0}" y1="${fmt(py)}" x2="${x1}" y2="${fmt(py)}" stroke="#ddd"/>`,
    );
    parts.push(
      `<text class="y-tick" x="${x0 - 6}" y="${fmt(py + 4)}" text-anchor="end">${esc(text)}</text>`,
    );
  }
  parts.push(
    `<rect class="frame" x="${x0}" y="${y1}" width="${x1 - x0}" height="${y0 - y1}" fill="none" stroke="black"/>`,
  );
  parts.push(
    `<text class="x-label" x="${fmt((x0 + x1) / 2)}" y="${height - 8}" text-anchor="middle">${esc(spec.xLabel)}</text>`,
  );
  parts.push(
    `<text class="y-label" x="14" y="${fmt((y0 + y1) / 2)}" text-anchor="middle" transform="rotate(-90 14 ${fmt((y0 + y1) / 2)})">${esc(spec.yLabel)}</text>`,
  );

  if (spec.hline) {
    const py = spec.yScale(spec.hline.value);
    parts.push(
      `<line class="threshold" x1="${x0}" y1="${fmt(py)}" x2="${x1}" y2="${fmt(py)}" stroke="#555" stroke-dasharray="4 4"/>`,
    );
    parts.push(
      `<text class="threshold-label" x="${x1 - 4}" y="${fmt(py - 4)}" text-anchor="end" fill="#555">${esc(spec.hline.label)}</text>`,
    );
  }

  // Series, sorted by label so output is independent of input file order.
  const ordered = [...spec.series].sort((a, b) => a.label.localeCompare(b.label));
  for (const s of ordered) {
    const style = schemeStyle(s.scheme);
    const pts = s.points.map((p) => ({ px: spec.xScale(p.x), py: spec.yScale(p.y) }));
    const d = pts
      .map((p, i) => `${i === 0 ? "M" : "L"}${fmt(p.px)} ${fmt(p.py)}`)
      .join(" ");
    parts.push(`<g class="series" data-label="${esc(s.label)}">`);
    if (pts.length > 0) {
      parts.push(
        `<path class="series-line" d="${d}" fill="none" stroke="${style.color}" stroke-width="1.5"${style.dash ? ` stroke-dasharray="${style.dash}"` : ""}/>`,
      );
    }
    for (const p of pts) parts.push(markerSvg(style, p.px, p.py));
    parts.push(`</g>`);
  }

  // Legend, top-right inside the frame.
  const lx = x1 - 240;
  let ly = y1 + 14;
  parts.push(`<g class="legend">`);
  for (const s of ordered) {
    const style = schemeStyle(s.scheme);
    parts.push(
      `<line x1="${lx}" y1="${ly - 4}" x2="${lx + 28}" y2="${ly - 4}" stroke="${style.color}" stroke-width="1.5"${style.dash ? ` stroke-dasharray="${style.dash}"` : ""}/>`,
    );
    parts.push(markerSvg(style, lx + 14, ly - 4));
    parts.push(
      `<text class="legend-label" x="${lx + 34}" y="${ly}">${esc(s.label)}</text>`,
    );
    ly += 16;
  }
  parts.push(`</g>`);
  parts.push(`</svg>`);
  return parts.join("\n") + "\n";
}

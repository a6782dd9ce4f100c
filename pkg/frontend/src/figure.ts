/**
 * Deterministic SVG line figures with confidence bands.
 *
 * Rendering is a pure view of the parsed rows: no statistics are recomputed,
 * and identical inputs produce byte-identical SVG output.
 */

import { ResultRow, SchemaError } from "./schema.js";

export type FigureKind = "vs_n" | "vs_placement" | "vs_rho";

export interface FigureSpec {
  kind: FigureKind;
  rows: ResultRow[];
}

interface KindInfo {
  axisColumn: string;
  xLabel: string;
  title: string;
}

const KINDS: Record<FigureKind, KindInfo> = {
  vs_n: {
    axisColumn: "n_elements",
    xLabel: "number of RIS elements (elements)",
    title: "secrecy rate vs surface size",
  },
  vs_placement: {
    axisColumn: "d_tr",
    xLabel: "transmitter-to-RIS horizontal distance (meters)",
    title: "secrecy rate vs RIS placement",
  },
  vs_rho: {
    axisColumn: "rho",
    xLabel: "AN reflection element ratio (ratio)",
    title: "secrecy rate vs AN element split",
  },
};

const Y_LABEL = "secrecy rate (bits/s/Hz)";

// Fixed color cycle; groups are sorted by key so the assignment is stable.
const PALETTE = [
  "#1f77b4",
  "#ff7f0e",
  "#2ca02c",
  "#d62728",
  "#9467bd",
  "#8c564b",
  "#e377c2",
  "#7f7f7f",
  "#bcbd22",
  "#17becf",
  "#393b79",
  "#ad494a",
];

const WIDTH = 880;
const HEIGHT = 540;
const MARGIN = { top: 48, right: 250, bottom: 64, left: 72 };

export interface FigureGroup {
  key: string;
  label: string;
  points: ResultRow[];
}

function bitsLabel(bits: number | null): string {
  return bits === null ? "inf" : String(bits);
}

function groupLabel(row: ResultRow): string {
  if (row.variant !== "" && row.variant !== "base") {
    return row.variant;
  }
  const parts = [`${row.strategy}`, `${row.model}`, `b=${bitsLabel(row.bits)}`, `gamma=${fmt(row.gamma)}`];
  if (row.mu !== null) parts.push(`mu=${fmt(row.mu)}`);
  return parts.join(" ");
}

/** Split rows into one group per curve: identical design identity = one line. */
export function groupRows(rows: ResultRow[]): FigureGroup[] {
  const groups = new Map<string, FigureGroup>();
  for (const row of rows) {
    const key = [row.variant, row.strategy, row.model, bitsLabel(row.bits), row.gamma, row.mu ?? ""].join("|");
    let group = groups.get(key);
    if (group === undefined) {
      group = { key, label: groupLabel(row), points: [] };
      groups.set(key, group);
    }
    group.points.push(row);
  }
  const sorted = [...groups.values()].sort((a, b) => (a.key < b.key ? -1 : a.key > b.key ? 1 : 0));
  for (const group of sorted) {
    if (group.points.length === 0) {
      throw new SchemaError(`group '${group.label}' has no points`);
    }
    group.points.sort((a, b) => a.axisValue - b.axisValue);
  }
  return sorted;
}

/** Trim a number to a short deterministic label. */
export function fmt(value: number): string {
  if (value === 0) return "0";
  const fixed = value.toPrecision(6);
  return fixed.includes(".") ? fixed.replace(/\.?0+$/, "") : fixed;
}

function coord(value: number): string {
  return value.toFixed(2);
}

function niceStep(span: number, targetTicks: number): number {
  const raw = span / targetTicks;
  const power = Math.pow(10, Math.floor(Math.log10(raw)));
  for (const mult of [1, 2, 5, 10]) {
    if (mult * power >= raw) return mult * power;
  }
  return 10 * power;
}

function linearTicks(lo: number, hi: number, targetTicks: number): number[] {
  if (lo === hi) return [lo];
  const step = niceStep(hi - lo, targetTicks);
  const first = Math.ceil(lo / step) * step;
  const ticks: number[] = [];
  for (let v = first; v <= hi + 1e-9 * step; v += step) {
    ticks.push(Math.abs(v) < 1e-12 ? 0 : v);
  }
  return ticks;
}

function escapeXml(text: string): string {
  return text.replace(/&/g, "&amp;").replace(/</g, "&lt;").replace(/>/g, "&gt;").replace(/"/g, "&quot;");
}

/** Render the figure to SVG text; throws SchemaError on kind/axis mismatch. */
export function renderFigure(spec: FigureSpec): string {
  const info = KINDS[spec.kind];
  if (info === undefined) {
    throw new SchemaError(`unknown figure kind '${spec.kind}'`);
  }
  for (const row of spec.rows) {
    if (row.axis !== info.axisColumn) {
      throw new SchemaError(
        `kind '${spec.kind}' plots axis '${info.axisColumn}' but the CSV carries axis '${row.axis}'`,
      );
    }
  }
  const groups = groupRows(spec.rows);

  const xs = spec.rows.map((r) => r.axisValue);
  let xLo = Math.min(...xs);
  let xHi = Math.max(...xs);
  if (xLo === xHi) {
    xLo -= 1;
    xHi += 1;
  }
  const yHiData = Math.max(...spec.rows.map((r) => r.ciHigh), 0);
  const yHi = yHiData > 0 ? yHiData * 1.05 : 1;
  const yLo = 0;

  const plotW = WIDTH - MARGIN.left - MARGIN.right;
  const plotH = HEIGHT - MARGIN.top - MARGIN.bottom;
  const sx = (v: number) => MARGIN.left + ((v - xLo) / (xHi - xLo)) * plotW;
  const sy = (v: number) => MARGIN.top + plotH - ((v - yLo) / (yHi - yLo)) * plotH;

  const parts: string[] = [];
  parts.push(`<svg xmlns="http://www.w3.org/2000/svg" width="${WIDTH}" height="${HEIGHT}" viewBox="0 0 ${WIDTH} ${HEIGHT}">`);
  parts.push(`<rect width="${WIDTH}" height="${HEIGHT}" fill="#ffffff"/>`);
  parts.push(
    `<text x="${coord(MARGIN.left)}" y="28" font-family="sans-serif" font-size="16" fill="#222222">${escapeXml(info.title)}</text>`,
  );

  // Axes and ticks.
  const axisColor = "#444444";
  const x0 = MARGIN.left;
  const x1 = MARGIN.left + plotW;
  const y0 = MARGIN.top + plotH;
  parts.push(`<line x1="${coord(x0)}" y1="${coord(y0)}" x2="${coord(x1)}" y2="${coord(y0)}" stroke="${axisColor}"/>`);
  parts.push(`<line x1="${coord(x0)}" y1="${coord(MARGIN.top)}" x2="${coord(x0)}" y2="${coord(y0)}" stroke="${axisColor}"/>`);

  const uniqueXs = [...new Set(xs)].sort((a, b) => a - b);
  const xTicks = uniqueXs.length <= 12 ? uniqueXs : linearTicks(xLo, xHi, 6);
  for (const tick of xTicks) {
    const px = sx(tick);
    parts.push(`<line x1="${coord(px)}" y1="${coord(y0)}" x2="${coord(px)}" y2="${coord(y0 + 5)}" stroke="${axisColor}"/>`);
    parts.push(
      `<text x="${coord(px)}" y="${coord(y0 + 20)}" font-family="sans-serif" font-size="11" fill="#222222" text-anchor="middle">${fmt(tick)}</text>`,
    );
  }
  for (const tick of linearTicks(yLo, yHi, 6)) {
    const py = sy(tick);
    parts.push(`<line x1="${coord(x0 - 5)}" y1="${coord(py)}" x2="${coord(x0)}" y2="${coord(py)}" stroke="${axisColor}"/>`);
    parts.push(`<line x1="${coord(x0)}" y1="${coord(py)}" x2="${coord(x1)}" y2="${coord(py)}" stroke="#dddddd"/>`);
    parts.push(
      `<text x="${coord(x0 - 9)}" y="${coord(py + 4)}" font-family="sans-serif" font-size="11" fill="#222222" text-anchor="end">${fmt(tick)}</text>`,
    );
  }
  parts.push(
    `<text x="${coord(x0 + plotW / 2)}" y="${coord(HEIGHT - 16)}" font-family="sans-serif" font-size="13" fill="#222222" text-anchor="middle">${escapeXml(info.xLabel)}</text>`,
  );
  parts.push(
    `<text x="20" y="${coord(MARGIN.top + plotH / 2)}" font-family="sans-serif" font-size="13" fill="#222222" text-anchor="middle" transform="rotate(-90 20 ${coord(MARGIN.top + plotH / 2)})">${escapeXml(Y_LABEL)}</text>`,
  );

  // One line + CI band per group; single-point groups draw just the marker.
  groups.forEach((group, index) => {
    const color = PALETTE[index % PALETTE.length];
    const pts = group.points;
    if (pts.length > 1) {
      const upper = pts.map((p) => `${coord(sx(p.axisValue))},${coord(sy(p.ciHigh))}`);
      const lower = [...pts].reverse().map((p) => `${coord(sx(p.axisValue))},${coord(sy(p.ciLow))}`);
      parts.push(`<polygon points="${upper.join(" ")} ${lower.join(" ")}" fill="${color}" fill-opacity="0.15" stroke="none"/>`);
      const line = pts.map((p) => `${coord(sx(p.axisValue))},${coord(sy(p.meanCs))}`).join(" ");
      parts.push(`<polyline points="${line}" fill="none" stroke="${color}" stroke-width="2"/>`);
    }
    for (const p of pts) {
      parts.push(`<circle cx="${coord(sx(p.axisValue))}" cy="${coord(sy(p.meanCs))}" r="3" fill="${color}"/>`);
    }
  });

  // Legend.
  const legendX = MARGIN.left + plotW + 16;
  groups.forEach((group, index) => {
    const color = PALETTE[index % PALETTE.length];
    const ly = MARGIN.top + 8 + index * 20;
    parts.push(`<rect x="${coord(legendX)}" y="${coord(ly - 10)}" width="12" height="12" fill="${color}"/>`);
    parts.push(
      `<text x="${coord(legendX + 18)}" y="${coord(ly)}" font-family="sans-serif" font-size="12" fill="#222222">${escapeXml(group.label)}</text>`,
    );
  });

  parts.push("</svg>");
  return parts.join("\n") + "\n";
}

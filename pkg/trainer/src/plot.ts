/** Infection-speed plot: trace CSV in, self-contained SVG line chart out. */

import { readFileSync, writeFileSync } from "node:fs";

export interface TracePoint {
  step: number;
  infected: number;
}

export function parseTraceCsv(text: string): TracePoint[] {
  const lines = text.split("\n").filter((l) => l !== "");
  if (lines.length === 0 || lines[0].trim() !== "step,infected") {
    throw new Error('trace file must start with the header "step,infected"');
  }
  return lines.slice(1).map((line, i) => {
    const m = /^(\d+),(\d+)$/.exec(line.trim());
    if (!m) throw new Error(`trace row ${i + 2} is malformed: "${line}"`);
    return { step: Number(m[1]), infected: Number(m[2]) };
  });
}

const WIDTH = 640;
const HEIGHT = 400;
const MARGIN = { left: 64, right: 16, top: 24, bottom: 44 };

function ticks(lo: number, hi: number, n: number): number[] {
  if (lo === hi) return [lo];
  const out: number[] = [];
  for (let i = 0; i <= n; i++) out.push(lo + ((hi - lo) * i) / n);
  return out;
}

export function renderSpeedSvg(points: TracePoint[]): string {
  if (points.length === 0) throw new Error("trace has no rows to plot");
  const xs = points.map((p) => p.step);
  const ys = points.map((p) => p.infected);
  const xLo = Math.min(...xs);
  const xHi = Math.max(...xs);
  const yLo = 0;
  const yHi = Math.max(...ys);
  const plotW = WIDTH - MARGIN.left - MARGIN.right;
  const plotH = HEIGHT - MARGIN.top - MARGIN.bottom;
  const px = (x: number) => MARGIN.left + (xHi === xLo ? plotW / 2 : ((x - xLo) / (xHi - xLo)) * plotW);
  const py = (y: number) => MARGIN.top + plotH - (yHi === yLo ? plotH / 2 : ((y - yLo) / (yHi - yLo)) * plotH);

  const parts: string[] = [];
  parts.push(
    `<svg xmlns="http://www.w3.org/2000/svg" width="${WIDTH}" height="${HEIGHT}" ` +
      `viewBox="0 0 ${WIDTH} ${HEIGHT}" font-family="monospace" font-size="12">`,
  );
  parts.push(`<rect width="${WIDTH}" height="${HEIGHT}" fill="white"/>`);

  for (const t of ticks(xLo, xHi, 6)) {
    const x = px(t);
    parts.push(`<line x1="${x.toFixed(1)}" y1="${MARGIN.top}" x2="${x.toFixed(1)}" y2="${MARGIN.top + plotH}" stroke="#eee"/>`);
    parts.push(`<text x="${x.toFixed(1)}" y="${MARGIN.top + plotH + 18}" text-anchor="middle">${Math.round(t)}</text>`);
  }
  for (const t of ticks(yLo, yHi, 5)) {
    const y = py(t);
    parts.push(`<line x1="${MARGIN.left}" y1="${y.toFixed(1)}" x2="${MARGIN.left + plotW}" y2="${y.toFixed(1)}" stroke="#eee"/>`);
    parts.push(`<text x="${MARGIN.left - 6}" y="${(y + 4).toFixed(1)}" text-anchor="end">${Math.round(t)}</text>`);
  }
  parts.push(
    `<line x1="${MARGIN.left}" y1="${MARGIN.top + plotH}" x2="${MARGIN.left + plotW}" y2="${MARGIN.top + plotH}" stroke="black"/>`,
  );
  parts.push(`<line x1="${MARGIN.left}" y1="${MARGIN.top}" x2="${MARGIN.left}" y2="${MARGIN.top + plotH}" stroke="black"/>`);
  parts.push(
    `<text x="${MARGIN.left + plotW / 2}" y="${HEIGHT - 8}" text-anchor="middle">step</text>`,
  );
  parts.push(
    `<text x="14" y="${MARGIN.top + plotH / 2}" text-anchor="middle" ` +
      `transform="rotate(-90 14 ${MARGIN.top + plotH / 2})">infected</text>`,
  );

  if (points.length === 1) {
    parts.push(`<circle cx="${px(xs[0]).toFixed(1)}" cy="${py(ys[0]).toFixed(1)}" r="3" fill="crimson"/>`);
  } else {
    const path = points.map((p) => `${px(p.step).toFixed(1)},${py(p.infected).toFixed(1)}`).join(" ");
    parts.push(`<polyline points="${path}" fill="none" stroke="crimson" stroke-width="1.5"/>`);
  }
  parts.push("</svg>");
  return parts.join("\n") + "\n";
}

export function plotSpeed(tracePath: string, outPath: string): number {
  const points = parseTraceCsv(readFileSync(tracePath, "utf8"));
  writeFileSync(outPath, renderSpeedSvg(points), "utf8");
  return points.length;
}

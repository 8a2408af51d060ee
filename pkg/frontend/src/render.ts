/** SVG rendering for the operator console: the pd and ppv curves against
 * pfa, a marker pair driven by the threshold slider, and the posterior
 * trajectory of the active session. */

import type { ConsoleState } from "./state.js";
import type { RocPoint, TrajectoryPoint } from "./types.js";

const W = 560;
const H = 360;
const PAD = 40;

function x(pfa: number): number {
  return PAD + pfa * (W - 2 * PAD);
}

function y(p: number): number {
  return H - PAD - p * (H - 2 * PAD);
}

function polyline(points: RocPoint[], pick: (pt: RocPoint) => number, stroke: string): string {
  const coords = points.map((pt) => `${x(pt.pfa).toFixed(1)},${y(pick(pt)).toFixed(1)}`);
  return `<polyline fill="none" stroke="${stroke}" stroke-width="1.5" points="${coords.join(" ")}"/>`;
}

function axes(): string {
  const ticks: string[] = [];
  for (let v = 0; v <= 1.001; v += 0.25) {
    ticks.push(
      `<line x1="${x(v)}" y1="${H - PAD}" x2="${x(v)}" y2="${H - PAD + 4}" stroke="#888"/>`,
      `<text x="${x(v)}" y="${H - PAD + 16}" font-size="10" text-anchor="middle" fill="#555">${v.toFixed(2)}</text>`,
      `<line x1="${PAD - 4}" y1="${y(v)}" x2="${PAD}" y2="${y(v)}" stroke="#888"/>`,
      `<text x="${PAD - 7}" y="${y(v) + 3}" font-size="10" text-anchor="end" fill="#555">${v.toFixed(2)}</text>`,
    );
  }
  return [
    `<line x1="${PAD}" y1="${H - PAD}" x2="${W - PAD}" y2="${H - PAD}" stroke="#444"/>`,
    `<line x1="${PAD}" y1="${PAD}" x2="${PAD}" y2="${H - PAD}" stroke="#444"/>`,
    `<text x="${W / 2}" y="${H - 6}" font-size="11" text-anchor="middle" fill="#333">pfa</text>`,
    ...ticks,
  ].join("");
}

export function renderChart(state: ConsoleState): string {
  if (!state.curve || state.curve.length === 0) {
    return `<svg width="${W}" height="${H}"><text x="${W / 2}" y="${H / 2}" text-anchor="middle" fill="#777">no curve loaded</text></svg>`;
  }
  const marker = state.readout
    ? `<circle cx="${x(state.readout.pfa)}" cy="${y(state.readout.pd)}" r="4" fill="#1f77b4"/>` +
      `<circle cx="${x(state.readout.pfa)}" cy="${y(state.readout.ppv)}" r="4" fill="#ff7f0e"/>`
    : "";
  return [
    `<svg width="${W}" height="${H}" viewBox="0 0 ${W} ${H}">`,
    axes(),
    polyline(state.curve, (pt) => pt.pd, "#1f77b4"),
    polyline(state.curve, (pt) => pt.ppv, "#ff7f0e"),
    marker,
    `<text x="${W - PAD}" y="${PAD - 8}" font-size="11" text-anchor="end" fill="#1f77b4">pd</text>`,
    `<text x="${W - PAD - 30}" y="${PAD - 8}" font-size="11" text-anchor="end" fill="#ff7f0e">ppv</text>`,
    `</svg>`,
  ].join("");
}

export function renderTrajectory(trajectory: TrajectoryPoint[]): string {
  const width = 560;
  const height = 140;
  const pad = 24;
  if (trajectory.length === 0) {
    return `<svg width="${width}" height="${height}"></svg>`;
  }
  const step = trajectory.length > 1 ? (width - 2 * pad) / (trajectory.length - 1) : 0;
  const ty = (p: number) => height - pad - p * (height - 2 * pad);
  const coords = trajectory.map((pt, i) => `${(pad + i * step).toFixed(1)},${ty(pt.posterior).toFixed(1)}`);
  const dots = trajectory
    .map((pt, i) => `<circle cx="${(pad + i * step).toFixed(1)}" cy="${ty(pt.posterior).toFixed(1)}" r="3" fill="#2ca02c"/>`)
    .join("");
  return [
    `<svg width="${width}" height="${height}" viewBox="0 0 ${width} ${height}">`,
    `<line x1="${pad}" y1="${ty(0)}" x2="${width - pad}" y2="${ty(0)}" stroke="#444"/>`,
    `<line x1="${pad}" y1="${ty(1)}" x2="${width - pad}" y2="${ty(1)}" stroke="#ddd" stroke-dasharray="3 3"/>`,
    `<polyline fill="none" stroke="#2ca02c" stroke-width="1.5" points="${coords.join(" ")}"/>`,
    dots,
    `</svg>`,
  ].join("");
}

export function renderReadout(state: ConsoleState): string {
  if (!state.readout) return "move the slider once a curve is loaded";
  const pt = state.readout;
  return (
    `threshold ${pt.threshold.toFixed(4)}  ` +
    `pfa ${pt.pfa.toFixed(4)}  ` +
    `pd ${pt.pd.toFixed(4)}  ` +
    `ppv ${pt.ppv.toFixed(4)}`
  );
}

/** Browser wiring: binds the controller to the DOM.  Configuration is a
 * single query parameter, ?service=http://host:port (defaults to the
 * page origin). */

import { ServiceClient } from "./api.js";
import { ConsoleController } from "./controller.js";
import { nearestIndexByThreshold } from "./nearest.js";
import { renderChart, renderReadout, renderTrajectory } from "./render.js";
import type { ConsoleState } from "./state.js";

function el<T extends HTMLElement>(id: string): T {
  const node = document.getElementById(id);
  if (!node) throw new Error(`missing element #${id}`);
  return node as T;
}

const params = new URLSearchParams(window.location.search);
const baseUrl = params.get("service") ?? window.location.origin;
const client = new ServiceClient(baseUrl);

const chart = el<HTMLDivElement>("chart");
const readout = el<HTMLDivElement>("readout");
const slider = el<HTMLInputElement>("slider");
const banner = el<HTMLDivElement>("banner");
const trajectory = el<HTMLDivElement>("trajectory");
const sessionLabel = el<HTMLDivElement>("session-label");
const recordPositive = el<HTMLButtonElement>("record-positive");
const recordNegative = el<HTMLButtonElement>("record-negative");

function redraw(state: ConsoleState): void {
  chart.innerHTML = renderChart(state);
  readout.textContent = renderReadout(state);
  trajectory.innerHTML = renderTrajectory(state.trajectory);
  banner.textContent = state.banner ?? "";
  banner.style.display = state.banner ? "block" : "none";
  const haveSession = state.session !== null;
  recordPositive.disabled = !haveSession || state.busy;
  recordNegative.disabled = !haveSession || state.busy;
  if (state.session) {
    sessionLabel.textContent =
      `session ${state.session.id.slice(0, 8)}  revision ${state.session.revision}  ` +
      `current ${state.session.current.toFixed(4)}`;
  } else {
    sessionLabel.textContent = "no session";
  }
  if (state.curve && state.curve.length > 0) {
    slider.min = String(state.curve[0].threshold);
    slider.max = String(state.curve[state.curve.length - 1].threshold);
    slider.step = "any";
    slider.disabled = false;
    // keep the handle on the readout's grid point
    const index = nearestIndexByThreshold(state.curve, state.sliderThreshold);
    slider.value = String(state.curve[index].threshold);
  } else {
    slider.disabled = true;
  }
}

const controller = new ConsoleController(client, redraw);

slider.addEventListener("input", () => {
  controller.moveSlider(Number(slider.value));
});
recordPositive.addEventListener("click", () => void controller.recordOutcome("positive"));
recordNegative.addEventListener("click", () => void controller.recordOutcome("negative"));

el<HTMLButtonElement>("load-curve").addEventListener("click", () => {
  const snr = Number(el<HTMLInputElement>("snr").value);
  const prior = Number(el<HTMLInputElement>("prior").value);
  void controller.loadCurve(snr, prior);
});

el<HTMLButtonElement>("start-session").addEventListener("click", () => {
  const prior = Number(el<HTMLInputElement>("session-prior").value);
  const pd = Number(el<HTMLInputElement>("session-pd").value);
  const pfa = Number(el<HTMLInputElement>("session-pfa").value);
  void controller.startSession(prior, { pd, pfa });
});

el<HTMLButtonElement>("refresh-session").addEventListener("click", () => {
  const id = controller.state.session?.id;
  if (id) void controller.attachSession(id);
});

redraw(controller.state);

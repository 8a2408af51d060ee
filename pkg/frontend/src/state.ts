/** Console state and its pure transitions.
 *
 * Invariants:
 *  - the readout is the cached curve point nearest the slider threshold,
 *    recomputed on every slider change, never interpolated;
 *  - the trajectory mirrors the service's session (prior at revision 0,
 *    one served posterior per accepted measurement);
 *  - no Bayesian arithmetic happens here or anywhere else client-side.
 */

import { nearestByThreshold } from "./nearest.js";
import type { RocPoint, SessionSummary, TrajectoryPoint } from "./types.js";

export interface ConsoleState {
  curve: RocPoint[] | null;
  sliderThreshold: number;
  readout: RocPoint | null;
  session: SessionSummary | null;
  trajectory: TrajectoryPoint[];
  banner: string | null;
  busy: boolean;
}

export function initialState(): ConsoleState {
  return {
    curve: null,
    sliderThreshold: 0,
    readout: null,
    session: null,
    trajectory: [],
    banner: null,
    busy: false,
  };
}

export function withCurve(state: ConsoleState, curve: RocPoint[]): ConsoleState {
  const sliderThreshold = curve.length > 0 ? curve[0].threshold : 0;
  return {
    ...state,
    curve,
    sliderThreshold,
    readout: curve.length > 0 ? nearestByThreshold(curve, sliderThreshold) : null,
    banner: null,
  };
}

export function withSlider(state: ConsoleState, threshold: number): ConsoleState {
  if (!state.curve || state.curve.length === 0) {
    return { ...state, sliderThreshold: threshold, readout: null };
  }
  return {
    ...state,
    sliderThreshold: threshold,
    readout: nearestByThreshold(state.curve, threshold),
  };
}

/** Replace the session wholesale from a full GET (used on load and after
 * a revision conflict): the trajectory is rebuilt from the served looks. */
export function withSession(state: ConsoleState, session: SessionSummary): ConsoleState {
  const trajectory: TrajectoryPoint[] = [{ revision: 0, posterior: session.prior }];
  for (const [index, look] of (session.looks ?? []).entries()) {
    trajectory.push({ revision: index + 1, posterior: look.posterior });
  }
  return { ...state, session, trajectory, banner: null };
}

/** Append one acknowledged measurement: the summary's served current
 * becomes the next trajectory point. */
export function withMeasurement(state: ConsoleState, summary: SessionSummary): ConsoleState {
  return {
    ...state,
    session: summary,
    trajectory: [
      ...state.trajectory,
      { revision: summary.revision, posterior: summary.current },
    ],
    banner: null,
  };
}

export function withBanner(state: ConsoleState, banner: string): ConsoleState {
  return { ...state, banner };
}

export function withBusy(state: ConsoleState, busy: boolean): ConsoleState {
  return { ...state, busy };
}

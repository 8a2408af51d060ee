/** Nearest-grid-point lookup on the cached curve.  The readout is always
 * an element of the served array, never an interpolation, so displayed
 * numbers stay exactly what the service sent. */

import type { RocPoint } from "./types.js";

/** Index of the point whose threshold is closest to the slider value.
 * The curve is sorted by ascending threshold, so binary search the lower
 * bound and compare the two neighbors. */
export function nearestIndexByThreshold(curve: RocPoint[], threshold: number): number {
  if (curve.length === 0) throw new Error("empty curve");
  let lo = 0;
  let hi = curve.length - 1;
  while (lo < hi) {
    const mid = (lo + hi) >> 1;
    if (curve[mid].threshold < threshold) lo = mid + 1;
    else hi = mid;
  }
  if (lo > 0 && threshold - curve[lo - 1].threshold <= curve[lo].threshold - threshold) {
    return lo - 1;
  }
  return lo;
}

export function nearestByThreshold(curve: RocPoint[], threshold: number): RocPoint {
  return curve[nearestIndexByThreshold(curve, threshold)];
}

/** Nearest point by false-alarm rate (pfa falls as threshold rises). */
export function nearestByPfa(curve: RocPoint[], pfa: number): RocPoint {
  let best = curve[0];
  let bestDist = Math.abs(best.pfa - pfa);
  for (const point of curve) {
    const dist = Math.abs(point.pfa - pfa);
    if (dist < bestDist) {
      best = point;
      bestDist = dist;
    }
  }
  return best;
}

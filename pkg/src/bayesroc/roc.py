"""PPV-enhanced receiver operating characteristics.

A conventional ROC traces (pfa, pd) as the threshold sweeps.  Adding the
positive predictive value, the posterior probability that a detection is
real given an assumed prior, turns the curve into something an operator
can act on directly: pick the threshold whose PPV they are willing to
live with.  PPV is literally the positive Bayesian update, so the same
kernel serves both names.
"""

from __future__ import annotations

import json
import math
from dataclasses import dataclass
from typing import Sequence, Tuple

from .bayes import DetectorCharacteristic, probability, update_positive
from .signal import SignalModel

__all__ = [
    "UnachievableTarget",
    "ppv",
    "OperatingPoint",
    "RocCurve",
    "roc_curve",
    "operating_point_at_pfa",
    "threshold_for_ppv",
    "SweepTable",
    "posterior_sweep",
]

# pfa grid endpoints for generated curves; both ends stay clear of the
# singular limits at 0 and 1.
_PFA_GRID_HIGH = 0.999
_PFA_GRID_LOW = 0.001

# Threshold search ceiling for the PPV solver: where pfa falls to 1e-12.
_SOLVER_PFA_FLOOR = 1e-12


class UnachievableTarget(ValueError):
    """Requested PPV lies outside what the model can reach.

    ``achievable`` holds the open (low, high) range of reachable values.
    """

    def __init__(self, message: str, achievable: Tuple[float, float]):
        super().__init__(message)
        self.achievable = achievable


def ppv(pd: float, pfa: float, prior: float) -> float:
    """Positive predictive value: pd*prior / [pd*prior + pfa*(1-prior)].

    Identical to the positive Bayesian update, shared implementation and
    all; a detector sitting exactly on the chance diagonal returns the
    prior unchanged.
    """
    return update_positive(prior, DetectorCharacteristic(pd, pfa))


@dataclass(frozen=True)
class OperatingPoint:
    """One threshold setting: its pd, pfa and the PPV at the curve prior."""

    threshold: float
    pd: float
    pfa: float
    ppv: float


@dataclass(frozen=True)
class RocCurve:
    """Operating points ordered by strictly increasing threshold.

    Along the curve pd and pfa fall while ppv rises (the Rician/Rayleigh
    pair has a monotone likelihood ratio).
    """

    model: SignalModel
    prior: float
    points: Tuple[OperatingPoint, ...]

    def to_csv(self) -> str:
        """CSV with header threshold,pfa,pd,ppv at 6 decimal places.

        The ppv column is recomputed from the rounded pd/pfa so that a
        consumer re-deriving ppv from the parsed columns reproduces the
        file to well within 1e-6.
        """
        lines = ["threshold,pfa,pd,ppv"]
        for pt in self.points:
            pd6 = round(pt.pd, 6)
            pfa6 = round(pt.pfa, 6)
            ppv6 = ppv(pd6, pfa6, self.prior)
            lines.append(f"{pt.threshold:.6f},{pfa6:.6f},{pd6:.6f},{ppv6:.6f}")
        return "\n".join(lines) + "\n"

    def to_json_obj(self) -> list:
        """JSON-ready array of point objects, full float precision."""
        return [
            {"threshold": pt.threshold, "pfa": pt.pfa, "pd": pt.pd, "ppv": pt.ppv}
            for pt in self.points
        ]

    def to_json(self) -> str:
        return json.dumps(self.to_json_obj())


def _point_at_threshold(model: SignalModel, prior: float, threshold: float) -> OperatingPoint:
    pd = model.pd(threshold)
    pfa = model.pfa(threshold)
    return OperatingPoint(threshold=threshold, pd=pd, pfa=pfa, ppv=ppv(pd, pfa, prior))


def roc_curve(model: SignalModel, prior: float, n_points: int = 200) -> RocCurve:
    """Sample the PPV-enhanced ROC on a uniform pfa grid.

    The grid runs from pfa 0.999 down to 0.001 (thresholds ascending),
    each threshold solved exactly from the model's noise tail.
    """
    prior = probability(prior)
    if not 0.0 < prior < 1.0:
        raise ValueError("curve prior must be strictly between 0 and 1")
    if n_points < 2:
        raise ValueError("a curve needs at least 2 points")
    step = (_PFA_GRID_HIGH - _PFA_GRID_LOW) / (n_points - 1)
    points = []
    for k in range(n_points):
        pfa_target = _PFA_GRID_HIGH - k * step
        t = model.threshold_at_pfa(pfa_target)
        points.append(_point_at_threshold(model, prior, t))
    return RocCurve(model=model, prior=prior, points=tuple(points))


def operating_point_at_pfa(model: SignalModel, prior: float, pfa: float) -> OperatingPoint:
    """Exact operating point at a requested false-alarm rate (no interpolation)."""
    prior = probability(prior)
    pfa = float(pfa)
    if math.isnan(pfa) or not 0.0 < pfa <= 1.0:
        raise ValueError(f"pfa must be in (0, 1], got {pfa!r}")
    t = model.threshold_at_pfa(pfa)
    return _point_at_threshold(model, prior, t)


def threshold_for_ppv(model: SignalModel, prior: float, target_ppv: float) -> OperatingPoint:
    """Solve the threshold whose PPV hits the target, by bisection.

    PPV climbs monotonically from the prior (threshold 0, where pd = pfa
    = 1) toward 1, so bisection over [0, t_max] is robust; t_max is the
    threshold where pfa reaches 1e-12, which also caps the practically
    achievable PPV.  Raises UnachievableTarget outside the reachable
    range, for an uninformative model (snr or separation 0) included.
    """
    prior = probability(prior)
    if not 0.0 < prior < 1.0:
        raise ValueError("prior must be strictly between 0 and 1")
    target_ppv = probability(target_ppv)

    t_max = model.threshold_at_pfa(_SOLVER_PFA_FLOOR)
    top = _point_at_threshold(model, prior, t_max)
    achievable = (prior, top.ppv if model.informative else prior)
    if not model.informative or not achievable[0] < target_ppv <= achievable[1]:
        raise UnachievableTarget(
            f"target ppv {target_ppv:.6g} is outside the achievable range "
            f"({achievable[0]:.6g}, {achievable[1]:.6g})",
            achievable=achievable,
        )

    lo, hi = 0.0, t_max
    point = top
    while hi - lo > 1e-12:
        mid = 0.5 * (lo + hi)
        point = _point_at_threshold(model, prior, mid)
        if abs(point.ppv - target_ppv) <= 1e-9:
            return point
        if point.ppv < target_ppv:
            lo = mid
        else:
            hi = mid
    return point


@dataclass(frozen=True)
class SweepTable:
    """Posterior-vs-pd rows for several fixed false-alarm rates.

    ``columns[i][j]`` is the posterior after a positive return at
    pd = pd_values[j] for a detector with pfa = pfa_values[i].
    """

    prior: float
    pfa_values: Tuple[float, ...]
    pd_values: Tuple[float, ...]
    columns: Tuple[Tuple[float, ...], ...]


def posterior_sweep(
    pfa_values: Sequence[float],
    prior: float,
    n_points: int = 101,
) -> SweepTable:
    """Posterior after one positive return, swept over pd for each pfa.

    pd runs on a uniform grid over [0, 1]; low priors and high
    false-alarm rates both drag the posterior down.
    """
    prior = probability(prior)
    if not 0.0 < prior < 1.0:
        raise ValueError("prior must be strictly between 0 and 1")
    pfa_values = tuple(float(v) for v in pfa_values)
    for v in pfa_values:
        if math.isnan(v) or not 0.0 < v <= 1.0:
            raise ValueError(f"each pfa must be in (0, 1], got {v!r}")
    if n_points < 2:
        raise ValueError("sweep needs at least 2 pd points")
    pd_values = tuple(k / (n_points - 1) for k in range(n_points))
    columns = tuple(
        tuple(update_positive(prior, DetectorCharacteristic(pd, pfa)) for pd in pd_values)
        for pfa in pfa_values
    )
    return SweepTable(prior=prior, pfa_values=pfa_values, pd_values=pd_values, columns=columns)

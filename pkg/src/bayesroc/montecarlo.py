"""Seedable Monte Carlo oracle for the analytic detection formulas.

Each trial draws target presence from the prior, then an envelope
amplitude from the matching distribution (Rician when present, Rayleigh
when absent, or the Gaussian pair for that model), and classifies it
against the threshold into the four confusion-matrix cells.  Because the
underlying stream is counter-based (see ``_mc_py``), a report depends
only on (config, seed): reruns and any worker partitioning produce
byte-identical JSON.

The per-trial loop lives in a compiled extension when available, with a
bit-identical pure-Python fallback selected at import time.  Set
``BAYESROC_PURE_PYTHON=1`` to force the fallback; ``benchmarks/bench_mc.py``
compares the two.
"""

from __future__ import annotations

import json
import math
import os
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass
from typing import Dict, Optional, Tuple

from . import _mc_py
from .bayes import DetectorCharacteristic, probability
from .signal import GaussianEqualVariance, RayleighRician, SignalModel

if os.environ.get("BAYESROC_PURE_PYTHON"):
    _kernels = _mc_py
    BACKEND = "python"
else:
    try:
        from . import _mc as _kernels  # type: ignore[no-redef]

        BACKEND = "cython"
    except ImportError:
        _kernels = _mc_py
        BACKEND = "python"

__all__ = [
    "BACKEND",
    "TrialStream",
    "sample_rayleigh",
    "sample_rician",
    "SimulationConfig",
    "SimulationReport",
    "simulate",
    "SequenceCell",
    "SequenceTable",
    "simulate_sequences",
    "simulate_sequences_abstract",
]


class TrialStream:
    """Counter-based random stream for one trial.

    Draw j of trial i under a given seed is mix64(seed + ((i << 32) + j)
    * GAMMA); see ``_mc_py`` for the constants.  The kernels inline this
    arithmetic; this class is the reference implementation and the
    sampling surface for callers who want raw variates.
    """

    __slots__ = ("seed", "_base", "_next")

    def __init__(self, seed: int, trial: int = 0):
        self.seed = _check_seed(seed)
        if trial < 0:
            raise ValueError("trial index must be nonnegative")
        self._base = (trial << 32) & _mc_py.MASK64
        self._next = 0

    def uniform(self) -> float:
        """Next uniform draw in [0, 1)."""
        value = _mc_py.uniform(self.seed, self._base + self._next)
        self._next += 1
        return value

    def normal_pair(self) -> Tuple[float, float]:
        """Next standard normal pair (polar rejection method)."""
        z1, z2, self._next = _mc_py._polar_pair(self.seed, self._base, self._next)
        return z1, z2


def sample_rayleigh(stream: TrialStream) -> float:
    """One noise-envelope amplitude: sqrt(-2 ln U), U uniform in (0, 1]."""
    return math.sqrt(-2.0 * math.log(1.0 - stream.uniform()))


def sample_rician(stream: TrialStream, snr: float) -> float:
    """One signal-plus-noise amplitude: sqrt((snr + Z1)^2 + Z2^2)."""
    if snr < 0.0:
        raise ValueError("snr must be nonnegative")
    z1, z2 = stream.normal_pair()
    a = snr + z1
    return math.sqrt(a * a + z2 * z2)


def _check_seed(seed: int) -> int:
    seed = int(seed)
    if not 0 <= seed < 2 ** 64:
        raise ValueError("seed must be a 64-bit unsigned integer")
    return seed


def _kind_param(model: SignalModel) -> Tuple[int, float]:
    if isinstance(model, RayleighRician):
        return _mc_py.KIND_RAYLEIGH_RICIAN, model.snr
    if isinstance(model, GaussianEqualVariance):
        return _mc_py.KIND_GAUSSIAN, model.separation
    raise TypeError(f"unsupported signal model: {model!r}")


def _model_echo(model: SignalModel) -> dict:
    if isinstance(model, RayleighRician):
        return {"kind": "rayleigh_rician", "snr": model.snr}
    return {"kind": "gaussian_equal_variance", "separation": model.separation}


@dataclass(frozen=True)
class SimulationConfig:
    """Everything a run depends on; equal configs give equal reports."""

    model: SignalModel
    threshold: float
    prior: float
    trials: int
    seed: int

    def __post_init__(self):
        _kind_param(self.model)
        object.__setattr__(self, "threshold", float(self.threshold))
        if math.isnan(self.threshold) or math.isinf(self.threshold):
            raise ValueError("threshold must be finite")
        if isinstance(self.model, RayleighRician) and self.threshold < 0.0:
            raise ValueError("envelope thresholds must be nonnegative")
        object.__setattr__(self, "prior", probability(self.prior))
        object.__setattr__(self, "trials", int(self.trials))
        if self.trials < 1:
            raise ValueError("trials must be >= 1")
        object.__setattr__(self, "seed", _check_seed(self.seed))

    def echo(self) -> dict:
        return {
            "model": _model_echo(self.model),
            "threshold": self.threshold,
            "prior": self.prior,
            "trials": self.trials,
            "seed": self.seed,
        }


def _ratio(num: int, den: int) -> Optional[float]:
    return num / den if den > 0 else None


def _ci3(p: Optional[float], n: int) -> Optional[float]:
    if p is None:
        return None
    return 3.0 * math.sqrt(p * (1.0 - p) / n)


@dataclass(frozen=True)
class SimulationReport:
    """Confusion-matrix tallies plus the empirical rates they imply.

    Rates whose denominator is empty (e.g. pfa with prior 1) are None.
    The 3-sigma halfwidths are binomial, computed from the empirical rate
    and its own denominator.
    """

    config: SimulationConfig
    true_positives: int
    false_positives: int
    missed_detections: int
    true_negatives: int

    @property
    def empirical_pd(self) -> Optional[float]:
        return _ratio(self.true_positives, self.true_positives + self.missed_detections)

    @property
    def empirical_pfa(self) -> Optional[float]:
        return _ratio(self.false_positives, self.false_positives + self.true_negatives)

    @property
    def empirical_ppv(self) -> Optional[float]:
        return _ratio(self.true_positives, self.true_positives + self.false_positives)

    def to_json_obj(self) -> dict:
        n_present = self.true_positives + self.missed_detections
        n_absent = self.false_positives + self.true_negatives
        n_flagged = self.true_positives + self.false_positives
        return {
            "config": self.config.echo(),
            "counts": {
                "true_positives": self.true_positives,
                "false_positives": self.false_positives,
                "missed_detections": self.missed_detections,
                "true_negatives": self.true_negatives,
            },
            "estimates": {
                "pd": self.empirical_pd,
                "pfa": self.empirical_pfa,
                "ppv": self.empirical_ppv,
            },
            "ci_halfwidth_3sigma": {
                "pd": _ci3(self.empirical_pd, n_present),
                "pfa": _ci3(self.empirical_pfa, n_absent),
                "ppv": _ci3(self.empirical_ppv, n_flagged),
            },
        }

    def to_json(self) -> str:
        return json.dumps(self.to_json_obj(), sort_keys=True)


def _chunk_ranges(total: int, workers: int):
    workers = max(1, min(int(workers), total))
    q, r = divmod(total, workers)
    start = 0
    for w in range(workers):
        count = q + (1 if w < r else 0)
        yield start, count
        start += count


def simulate(config: SimulationConfig, workers: int = 1) -> SimulationReport:
    """Run the confusion-matrix experiment; deterministic given the seed.

    Workers each own a contiguous trial range and integer tallies are
    summed in range order, so the result is identical for any worker
    count.
    """
    kind, param = _kind_param(config.model)
    chunks = list(_chunk_ranges(config.trials, workers))

    def run(chunk):
        start, count = chunk
        return _kernels.simulate_block(
            config.seed, start, count, config.prior, kind, param, config.threshold
        )

    if len(chunks) == 1:
        results = [run(chunks[0])]
    else:
        with ThreadPoolExecutor(max_workers=len(chunks)) as pool:
            results = list(pool.map(run, chunks))

    tp = sum(r[0] for r in results)
    fp = sum(r[1] for r in results)
    md = sum(r[2] for r in results)
    tn = sum(r[3] for r in results)
    return SimulationReport(
        config=config,
        true_positives=tp,
        false_positives=fp,
        missed_detections=md,
        true_negatives=tn,
    )


@dataclass(frozen=True)
class SequenceCell:
    """Episodes that produced one outcome pattern, and how many held a target."""

    episodes: int
    target_present: int

    @property
    def fraction_present(self) -> float:
        return self.target_present / self.episodes


SequenceTable = Dict[Tuple[int, int], SequenceCell]


def _merge_sequence_results(results, looks: int) -> SequenceTable:
    episodes = [0] * (looks + 1)
    present = [0] * (looks + 1)
    for ep, pr in results:
        for k in range(looks + 1):
            episodes[k] += ep[k]
            present[k] += pr[k]
    table: SequenceTable = {}
    for n_pos in range(looks + 1):
        if episodes[n_pos] > 0:
            table[(n_pos, looks - n_pos)] = SequenceCell(
                episodes=episodes[n_pos], target_present=present[n_pos]
            )
    return table


def simulate_sequences(
    config: SimulationConfig, looks_per_episode: int, workers: int = 1
) -> SequenceTable:
    """Group fixed-length look episodes by (positives, negatives) pattern.

    Presence is drawn once per episode; the looks are then independent
    threshold tests conditioned on it.  The fraction of target-present
    episodes in each pattern is the empirical counterpart of the
    closed-form N-look posterior.  ``config.trials`` counts episodes.
    """
    if looks_per_episode < 1:
        raise ValueError("looks_per_episode must be >= 1")
    kind, param = _kind_param(config.model)
    chunks = list(_chunk_ranges(config.trials, workers))

    def run(chunk):
        start, count = chunk
        return _kernels.sequence_block(
            config.seed, start, count, config.prior, kind, param,
            config.threshold, looks_per_episode,
        )

    if len(chunks) == 1:
        results = [run(chunks[0])]
    else:
        with ThreadPoolExecutor(max_workers=len(chunks)) as pool:
            results = list(pool.map(run, chunks))
    return _merge_sequence_results(results, looks_per_episode)


def simulate_sequences_abstract(
    detector: DetectorCharacteristic,
    prior: float,
    episodes: int,
    seed: int,
    looks_per_episode: int,
    workers: int = 1,
) -> SequenceTable:
    """Sequence experiment with direct Bernoulli looks at (pd, pfa).

    Bypasses the amplitude model entirely, so discrepancies here point at
    the belief arithmetic rather than the signal statistics.
    """
    if looks_per_episode < 1:
        raise ValueError("looks_per_episode must be >= 1")
    prior = probability(prior)
    seed = _check_seed(seed)
    episodes = int(episodes)
    if episodes < 1:
        raise ValueError("episodes must be >= 1")
    chunks = list(_chunk_ranges(episodes, workers))

    def run(chunk):
        start, count = chunk
        return _kernels.abstract_sequence_block(
            seed, start, count, prior, detector.pd, detector.pfa, looks_per_episode
        )

    if len(chunks) == 1:
        results = [run(chunks[0])]
    else:
        with ThreadPoolExecutor(max_workers=len(chunks)) as pool:
            results = list(pool.map(run, chunks))
    return _merge_sequence_results(results, looks_per_episode)

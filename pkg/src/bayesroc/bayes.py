"""Exact Bayesian belief arithmetic over binary threshold detectors.

A detector is summarized by two rates: ``pd``, the chance it fires when a
target is really there, and ``pfa``, the chance it fires when nothing is
there.  Starting from a prior probability of target presence, each
above/below-threshold outcome multiplies the prior odds by a likelihood
ratio (pd/pfa on a positive return, (1-pd)/(1-pfa) on a negative one).
Sequences of looks are folded in log-odds so that arbitrarily long runs
stay finite and accurate.

All functions are pure and all types immutable; values can be shared
freely between threads.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from enum import Enum
from typing import Iterable, Tuple

__all__ = [
    "IndeterminateLikelihood",
    "IndeterminateUpdate",
    "probability",
    "odds",
    "odds_from_prob",
    "prob_from_odds",
    "log_odds_from_prob",
    "prob_from_log_odds",
    "DetectorCharacteristic",
    "MeasurementOutcome",
    "likelihood",
    "complementary_likelihood",
    "update_positive",
    "update_negative",
    "log_odds_after_n_looks",
    "posterior_after_n_looks",
    "LookRecord",
    "BeliefState",
    "fold_sequence",
    "apply_look",
]


class IndeterminateLikelihood(ValueError):
    """Raised for 0/0 likelihood ratios, which carry no evidential meaning."""


class IndeterminateUpdate(ValueError):
    """Raised when an update conditions on an event of probability zero.

    Carries ``look_index`` when raised while folding a sequence.
    """

    def __init__(self, message: str, look_index: int | None = None):
        super().__init__(message)
        self.look_index = look_index


def probability(value: float) -> float:
    """Validate a probability; rejects NaN and values outside [0, 1]."""
    value = float(value)
    if math.isnan(value) or not 0.0 <= value <= 1.0:
        raise ValueError(f"probability must be in [0, 1], got {value!r}")
    return value


def odds(value: float) -> float:
    """Validate an odds value; nonnegative, +inf allowed (certainty)."""
    value = float(value)
    if math.isnan(value) or value < 0.0:
        raise ValueError(f"odds must be >= 0 (or +inf), got {value!r}")
    return value


def odds_from_prob(p: float) -> float:
    """p/(1-p); certainty (p = 1) maps to +inf."""
    p = probability(p)
    if p == 1.0:
        return math.inf
    return p / (1.0 - p)


def prob_from_odds(o: float) -> float:
    """o/(1+o); +inf maps to 1.  Exact inverse of odds_from_prob for p < 1."""
    o = odds(o)
    if math.isinf(o):
        return 1.0
    return o / (1.0 + o)


def log_odds_from_prob(p: float) -> float:
    """ln(p/(1-p)); -inf at p = 0, +inf at p = 1."""
    p = probability(p)
    if p == 0.0:
        return -math.inf
    if p == 1.0:
        return math.inf
    return math.log(p) - math.log1p(-p)


def prob_from_log_odds(log_odds: float) -> float:
    """Stable sigmoid; saturates to exactly 0.0 / 1.0 in the far tails."""
    if math.isnan(log_odds):
        raise ValueError("log-odds must not be NaN")
    if log_odds >= 0.0:
        return 1.0 / (1.0 + math.exp(-log_odds))
    e = math.exp(log_odds)
    return e / (1.0 + e)


@dataclass(frozen=True)
class DetectorCharacteristic:
    """One measurement channel at a fixed threshold: (pd, pfa).

    pd > pfa is not required; the arithmetic is defined either way (a
    detector with pd < pfa is merely evidence in the other direction).
    """

    pd: float
    pfa: float

    def __post_init__(self):
        object.__setattr__(self, "pd", probability(self.pd))
        object.__setattr__(self, "pfa", probability(self.pfa))


class MeasurementOutcome(Enum):
    """Positive means the return exceeded the chosen threshold."""

    POSITIVE = "positive"
    NEGATIVE = "negative"


def likelihood(det: DetectorCharacteristic) -> float:
    """Likelihood ratio pd/pfa applied to prior odds on a positive return.

    pfa = 0 with pd > 0 gives +inf (a detection then proves presence).
    """
    if det.pfa == 0.0:
        if det.pd == 0.0:
            raise IndeterminateLikelihood("pd = pfa = 0: likelihood 0/0 is undefined")
        return math.inf
    return det.pd / det.pfa


def complementary_likelihood(det: DetectorCharacteristic) -> float:
    """Likelihood ratio (1-pd)/(1-pfa) applied on a negative return."""
    if det.pfa == 1.0:
        if det.pd == 1.0:
            raise IndeterminateLikelihood(
                "pd = pfa = 1: complementary likelihood 0/0 is undefined"
            )
        return math.inf
    return (1.0 - det.pd) / (1.0 - det.pfa)


def update_positive(prior: float, det: DetectorCharacteristic) -> float:
    """Posterior presence probability after an above-threshold return.

    pd*prior / [pd*prior + pfa*(1-prior)].  Priors 0 and 1 are absorbing.
    """
    prior = probability(prior)
    if prior == 0.0 or prior == 1.0:
        return prior
    numer = det.pd * prior
    denom = numer + det.pfa * (1.0 - prior)
    if denom == 0.0:
        raise IndeterminateUpdate(
            "positive update with pd = pfa = 0 conditions on a zero-probability event"
        )
    return numer / denom


def update_negative(prior: float, det: DetectorCharacteristic) -> float:
    """Posterior presence probability after a below-threshold return.

    (1-pd)*prior / [(1-pd)*prior + (1-pfa)*(1-prior)].
    """
    prior = probability(prior)
    if prior == 0.0 or prior == 1.0:
        return prior
    numer = (1.0 - det.pd) * prior
    denom = numer + (1.0 - det.pfa) * (1.0 - prior)
    if denom == 0.0:
        raise IndeterminateUpdate(
            "negative update with pd = pfa = 1 conditions on a zero-probability event"
        )
    return numer / denom


def _log_or_neg_inf(x: float) -> float:
    return math.log(x) if x > 0.0 else -math.inf


def _llr(det: DetectorCharacteristic, outcome: MeasurementOutcome) -> float:
    """Log-likelihood ratio one look adds to the belief's log-odds."""
    if outcome is MeasurementOutcome.POSITIVE:
        if det.pd == 0.0 and det.pfa == 0.0:
            raise IndeterminateUpdate(
                "positive update with pd = pfa = 0 conditions on a zero-probability event"
            )
        return _log_or_neg_inf(det.pd) - _log_or_neg_inf(det.pfa)
    if det.pd == 1.0 and det.pfa == 1.0:
        raise IndeterminateUpdate(
            "negative update with pd = pfa = 1 conditions on a zero-probability event"
        )
    return _log_or_neg_inf(1.0 - det.pd) - _log_or_neg_inf(1.0 - det.pfa)


def log_odds_after_n_looks(
    prior: float,
    det: DetectorCharacteristic,
    n_positive: int,
    n_negative: int,
) -> float:
    """Closed-form belief log-odds after a batch of looks.

    prior log-odds + n_positive * ln(pd/pfa) + n_negative *
    ln((1-pd)/(1-pfa)).  Finite and accurate for counts up to 1e6; this is
    the quantity to compare when the posterior itself saturates.
    """
    prior = probability(prior)
    if n_positive < 0 or n_negative < 0:
        raise ValueError("look counts must be nonnegative")
    total = log_odds_from_prob(prior)
    if math.isinf(total):
        return total  # absorbing endpoints
    if n_positive > 0:
        total += n_positive * _llr(det, MeasurementOutcome.POSITIVE)
    if n_negative > 0:
        total += n_negative * _llr(det, MeasurementOutcome.NEGATIVE)
    if math.isnan(total):
        # Opposing infinite log-likelihoods (e.g. a perfect detector
        # reporting both outcomes): no well-defined limit.
        raise IndeterminateUpdate("conflicting certain evidence in look counts")
    return total


def posterior_after_n_looks(
    prior: float,
    det: DetectorCharacteristic,
    n_positive: int,
    n_negative: int,
) -> float:
    """Closed-form posterior after n_positive hits and n_negative misses.

    Computed in log-odds (see log_odds_after_n_looks) so large counts
    neither overflow nor lose accuracy; the returned probability
    saturates to exactly 0 or 1 once the log-odds leave the float range.
    """
    return prob_from_log_odds(log_odds_after_n_looks(prior, det, n_positive, n_negative))


@dataclass(frozen=True)
class LookRecord:
    """One applied measurement and the belief it produced."""

    outcome: MeasurementOutcome
    detector: DetectorCharacteristic
    posterior_after: float


@dataclass(frozen=True)
class BeliefState:
    """A prior plus the ordered look history that evolved it.

    The authoritative running value is ``current_log_odds``, a sum of
    per-look log-likelihood ratios: chaining in log-odds keeps long or
    lopsided sequences exact even where the probability itself rounds to
    1.0.  Each look's ``posterior_after`` is the probability image of the
    chain at that step, so replaying the looks through the single-update
    functions reproduces ``current`` to within 1e-12 in log-odds.

    ``current`` is the posterior after the last look (the prior itself
    when no looks have been taken).  States are immutable; applying a
    look returns a new state.
    """

    initial_prior: float
    looks: Tuple[LookRecord, ...] = ()
    current_log_odds: float = None  # type: ignore[assignment]

    def __post_init__(self):
        object.__setattr__(self, "initial_prior", probability(self.initial_prior))
        object.__setattr__(self, "looks", tuple(self.looks))
        if self.current_log_odds is None:
            if self.looks:
                raise ValueError("current_log_odds is required when looks are given")
            object.__setattr__(
                self, "current_log_odds", log_odds_from_prob(self.initial_prior)
            )
        elif not self.looks and self.current_log_odds != log_odds_from_prob(self.initial_prior):
            raise ValueError("a fresh belief's log-odds must match its prior")

    @property
    def current(self) -> float:
        if self.looks:
            return self.looks[-1].posterior_after
        return self.initial_prior


def apply_look(
    belief: BeliefState,
    outcome: MeasurementOutcome,
    det: DetectorCharacteristic,
) -> BeliefState:
    """Return a new belief state with one more look folded in.

    Exact-certainty beliefs (log-odds of +/-inf, reached only through a
    0/1 prior or infinitely informative evidence) are absorbing; finite
    log-odds always move, even while the displayed probability sits at
    1.0.
    """
    if math.isinf(belief.current_log_odds):
        new_log_odds = belief.current_log_odds
    else:
        new_log_odds = belief.current_log_odds + _llr(det, outcome)
    posterior = prob_from_log_odds(new_log_odds)
    record = LookRecord(outcome=outcome, detector=det, posterior_after=posterior)
    return BeliefState(belief.initial_prior, belief.looks + (record,), new_log_odds)


def fold_sequence(
    prior: float,
    looks: Iterable[Tuple[MeasurementOutcome, DetectorCharacteristic]],
) -> BeliefState:
    """Fold an ordered sequence of (outcome, detector) looks over a prior.

    Detectors may differ per look.  An indeterminate update is re-raised
    with the index of the offending look attached.
    """
    state = BeliefState(prior)
    for index, (outcome, det) in enumerate(looks):
        try:
            state = apply_look(state, outcome, det)
        except IndeterminateUpdate as exc:
            raise IndeterminateUpdate(f"look {index}: {exc}", look_index=index) from exc
    return state

"""Bayesian detection toolkit.

Turns conventional detector characteristics (pd, pfa) into posterior
probabilities of target presence, generates PPV-enhanced ROC curves for
Rayleigh-noise / Rician-signal detectors, folds sequential looks into an
evolving belief, and validates the closed forms with a seeded Monte
Carlo simulator.  A CLI (``bayesroc``) and a small session-keeping HTTP
service (``bayesroc-service``) sit on top of the library.
"""

from .bayes import (
    BeliefState,
    DetectorCharacteristic,
    IndeterminateLikelihood,
    IndeterminateUpdate,
    LookRecord,
    MeasurementOutcome,
    apply_look,
    complementary_likelihood,
    fold_sequence,
    likelihood,
    odds_from_prob,
    posterior_after_n_looks,
    prob_from_odds,
    update_negative,
    update_positive,
)
from .montecarlo import (
    BACKEND,
    SimulationConfig,
    SimulationReport,
    simulate,
    simulate_sequences,
    simulate_sequences_abstract,
)
from .roc import (
    OperatingPoint,
    RocCurve,
    UnachievableTarget,
    operating_point_at_pfa,
    posterior_sweep,
    ppv,
    roc_curve,
    threshold_for_ppv,
)
from .signal import (
    GaussianEqualVariance,
    RayleighRician,
    SignalModel,
    bessel_i0,
    bessel_i0e,
    marcum_q1,
    pd_of_threshold,
    pfa_of_threshold,
    rayleigh_pdf,
    rician_pdf,
    snr_for_pd,
    threshold_of_pfa,
)

__version__ = "0.1.0"

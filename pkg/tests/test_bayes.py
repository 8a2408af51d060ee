"""Belief-arithmetic tests.

Expected values come from three places: hand arithmetic on the closed
forms (exact fractions like 7/8 and 49/52), reference worked-example
probabilities checked to their printed precision, and property tests
over randomized inputs.
"""

import math

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from bayesroc.bayes import (
    BeliefState,
    DetectorCharacteristic,
    IndeterminateLikelihood,
    IndeterminateUpdate,
    MeasurementOutcome,
    apply_look,
    complementary_likelihood,
    fold_sequence,
    likelihood,
    log_odds_after_n_looks,
    odds_from_prob,
    posterior_after_n_looks,
    prob_from_odds,
    probability,
    update_negative,
    update_positive,
)

POS = MeasurementOutcome.POSITIVE
NEG = MeasurementOutcome.NEGATIVE

interior = st.floats(min_value=1e-6, max_value=1.0 - 1e-6)


def log_odds(p: float) -> float:
    return math.log(p) - math.log1p(-p)


class TestProbabilityValidation:
    def test_rejects_nan(self):
        with pytest.raises(ValueError):
            probability(float("nan"))

    @pytest.mark.parametrize("bad", [-0.1, 1.1, math.inf, -math.inf])
    def test_rejects_out_of_range(self, bad):
        with pytest.raises(ValueError):
            probability(bad)

    def test_detector_validates_both_fields(self):
        with pytest.raises(ValueError):
            DetectorCharacteristic(0.5, 1.5)
        with pytest.raises(ValueError):
            DetectorCharacteristic(-0.5, 0.5)

    def test_pd_below_pfa_is_allowed(self):
        det = DetectorCharacteristic(0.2, 0.9)
        assert update_positive(0.5, det) < 0.5


class TestOdds:
    def test_even_odds(self):
        assert odds_from_prob(0.5) == 1.0

    def test_seven_to_one(self):
        # 0.875 / 0.125
        assert odds_from_prob(0.875) == pytest.approx(7.0, rel=1e-15)

    def test_certainty_is_infinite(self):
        assert odds_from_prob(1.0) == math.inf

    def test_prob_from_odds(self):
        assert prob_from_odds(1.0) == 0.5
        assert prob_from_odds(7.0) == pytest.approx(0.875, rel=1e-15)
        assert prob_from_odds(0.0) == 0.0
        assert prob_from_odds(math.inf) == 1.0

    @given(interior)
    def test_round_trip(self, p):
        assert prob_from_odds(odds_from_prob(p)) == pytest.approx(p, rel=1e-15)


class TestLikelihoods:
    def test_ninety(self):
        assert likelihood(DetectorCharacteristic(0.9, 0.01)) == pytest.approx(90.0, rel=1e-15)

    def test_uninformative(self):
        assert likelihood(DetectorCharacteristic(0.7, 0.7)) == 1.0
        assert complementary_likelihood(DetectorCharacteristic(0.5, 0.5)) == 1.0

    def test_zero_false_alarms(self):
        assert likelihood(DetectorCharacteristic(0.5, 0.0)) == math.inf

    def test_perfect_detector_never_misses(self):
        assert complementary_likelihood(DetectorCharacteristic(1.0, 0.2)) == 0.0

    def test_complementary_value(self):
        # 0.3 / 0.9
        det = DetectorCharacteristic(0.7, 0.1)
        assert complementary_likelihood(det) == pytest.approx(1.0 / 3.0, rel=1e-15)

    def test_zero_over_zero_raises(self):
        with pytest.raises(IndeterminateLikelihood):
            likelihood(DetectorCharacteristic(0.0, 0.0))
        with pytest.raises(IndeterminateLikelihood):
            complementary_likelihood(DetectorCharacteristic(1.0, 1.0))


class TestSingleLookUpdates:
    def test_reference_first_posteriors(self):
        # 0.5 prior, one positive look: printed to three decimals as
        # 0.989, 0.986 and 0.875.
        assert update_positive(0.5, DetectorCharacteristic(0.9, 0.01)) == pytest.approx(
            0.989, abs=1e-3
        )
        assert update_positive(0.5, DetectorCharacteristic(0.7, 0.1)) == pytest.approx(
            0.875, rel=1e-15
        )

    def test_uninformative_leaves_prior(self):
        assert update_positive(0.5, DetectorCharacteristic(0.3, 0.3)) == 0.5
        assert update_negative(0.5, DetectorCharacteristic(0.4, 0.4)) == 0.5

    def test_reference_negative_posteriors(self):
        assert update_negative(0.925, DetectorCharacteristic(0.7, 0.1)) == pytest.approx(
            0.804, abs=1e-3
        )
        assert update_negative(0.994, DetectorCharacteristic(0.9, 0.01)) == pytest.approx(
            0.944, abs=1e-3
        )

    def test_absorbing_endpoints(self):
        det = DetectorCharacteristic(0.7, 0.1)
        for update in (update_positive, update_negative):
            assert update(0.0, det) == 0.0
            assert update(1.0, det) == 1.0

    def test_indeterminate_updates(self):
        with pytest.raises(IndeterminateUpdate):
            update_positive(0.5, DetectorCharacteristic(0.0, 0.0))
        with pytest.raises(IndeterminateUpdate):
            update_negative(0.5, DetectorCharacteristic(1.0, 1.0))

    def test_certain_evidence_drives_to_endpoint(self):
        assert update_positive(0.5, DetectorCharacteristic(0.5, 0.0)) == 1.0
        assert update_positive(0.5, DetectorCharacteristic(0.0, 0.5)) == 0.0
        assert update_negative(0.5, DetectorCharacteristic(1.0, 0.2)) == 0.0

    @given(interior, interior, interior)
    def test_direction_follows_detector_sign(self, prior, pd, pfa):
        det = DetectorCharacteristic(pd, pfa)
        post = update_positive(prior, det)
        neg = update_negative(prior, det)
        if pd > pfa + 1e-9:
            assert post > prior
            assert neg < prior
        elif pfa > pd + 1e-9:
            assert post < prior
            assert neg > prior

    @given(interior, interior, interior)
    def test_odds_form_equivalence(self, prior, pd, pfa):
        # The two routes agree to 1e-12 in log-odds wherever that is
        # resolvable; closer to the endpoints a single probability ulp
        # exceeds that, so bit-adjacency is the strongest possible claim.
        def agree(a, b):
            if abs(a - b) <= 4 * math.ulp(max(a, b)):
                return True
            return log_odds(a) == pytest.approx(log_odds(b), abs=1e-12)

        det = DetectorCharacteristic(pd, pfa)
        direct = update_positive(prior, det)
        via_odds = prob_from_odds(likelihood(det) * odds_from_prob(prior))
        assert agree(direct, via_odds)

        direct_neg = update_negative(prior, det)
        via_odds_neg = prob_from_odds(complementary_likelihood(det) * odds_from_prob(prior))
        assert agree(direct_neg, via_odds_neg)

    @given(interior, interior, interior)
    def test_total_probability(self, prior, pd, pfa):
        # P(+) Posterior(+) + P(-) Posterior(-) = prior
        det = DetectorCharacteristic(pd, pfa)
        p_pos = pd * prior + pfa * (1.0 - prior)
        total = p_pos * update_positive(prior, det)
        if p_pos < 1.0:
            total += (1.0 - p_pos) * update_negative(prior, det)
        assert total == pytest.approx(prior, rel=1e-12)


class TestNLookClosedForm:
    def test_single_positive_matches_single_update(self):
        det = DetectorCharacteristic(0.9, 0.01)
        value = posterior_after_n_looks(0.5, det, 1, 0)
        assert value == pytest.approx(90.0 / 91.0, rel=1e-14)  # 0.98901...
        assert value == pytest.approx(0.989, abs=1e-3)

    def test_no_looks_returns_prior(self):
        det = DetectorCharacteristic(0.6, 0.2)
        assert posterior_after_n_looks(0.5, det, 0, 0) == pytest.approx(0.5, rel=1e-15)

    def test_two_pos_one_neg(self):
        # odds: 7^2 * (1/3) = 49/3, posterior 49/52
        det = DetectorCharacteristic(0.7, 0.1)
        assert posterior_after_n_looks(0.5, det, 2, 1) == pytest.approx(
            49.0 / 52.0, rel=1e-14
        )

    def test_huge_counts_stay_finite(self):
        det = DetectorCharacteristic(0.7, 0.1)
        assert posterior_after_n_looks(0.5, det, 10 ** 6, 0) == 1.0
        assert posterior_after_n_looks(0.5, det, 0, 10 ** 6) == 0.0
        # balanced huge counts cancel in log-odds
        balanced = posterior_after_n_looks(0.5, DetectorCharacteristic(0.5, 0.5), 10 ** 6, 10 ** 6)
        assert balanced == pytest.approx(0.5, rel=1e-9)

    def test_absorbing_endpoints(self):
        det = DetectorCharacteristic(0.7, 0.1)
        assert posterior_after_n_looks(0.0, det, 5, 3) == 0.0
        assert posterior_after_n_looks(1.0, det, 5, 3) == 1.0

    def test_indeterminate_factors(self):
        with pytest.raises(IndeterminateUpdate):
            posterior_after_n_looks(0.5, DetectorCharacteristic(0.0, 0.0), 1, 0)
        with pytest.raises(IndeterminateUpdate):
            posterior_after_n_looks(0.5, DetectorCharacteristic(1.0, 1.0), 0, 1)
        # conflicting certain evidence: perfect detector claims both outcomes
        with pytest.raises(IndeterminateUpdate):
            posterior_after_n_looks(0.5, DetectorCharacteristic(1.0, 0.0), 1, 1)

    def test_negative_counts_rejected(self):
        with pytest.raises(ValueError):
            posterior_after_n_looks(0.5, DetectorCharacteristic(0.7, 0.1), -1, 0)


class TestFoldSequence:
    def test_empty_fold(self):
        state = fold_sequence(0.5, [])
        assert state.current == 0.5
        assert state.looks == ()

    def test_single_positive(self):
        det = DetectorCharacteristic(0.9, 0.01)
        state = fold_sequence(0.5, [(POS, det)])
        assert state.current == pytest.approx(0.989, abs=1e-3)

    def test_plus_plus_minus(self):
        det = DetectorCharacteristic(0.7, 0.1)
        state = fold_sequence(0.5, [(POS, det), (POS, det), (NEG, det)])
        assert [rec.posterior_after for rec in state.looks] == pytest.approx(
            [0.875, 0.98, 49.0 / 52.0], rel=1e-12
        )
        assert state.current == pytest.approx(
            posterior_after_n_looks(0.5, det, 2, 1), rel=1e-14
        )

    def test_heterogeneous_detectors(self):
        d1 = DetectorCharacteristic(0.9, 0.01)
        d2 = DetectorCharacteristic(0.6, 0.3)
        state = fold_sequence(0.4, [(POS, d1), (NEG, d2)])
        expected = update_negative(update_positive(0.4, d1), d2)
        assert log_odds(state.current) == pytest.approx(log_odds(expected), abs=1e-12)

    def test_error_carries_look_index(self):
        det_ok = DetectorCharacteristic(0.7, 0.1)
        det_bad = DetectorCharacteristic(0.0, 0.0)
        with pytest.raises(IndeterminateUpdate) as exc_info:
            fold_sequence(0.5, [(POS, det_ok), (POS, det_bad)])
        assert exc_info.value.look_index == 1

    @settings(max_examples=50)
    @given(
        st.floats(min_value=0.01, max_value=0.99),
        st.floats(min_value=0.01, max_value=0.99),
        st.floats(min_value=0.01, max_value=0.99),
        st.lists(st.booleans(), min_size=0, max_size=30),
    )
    def test_fold_matches_closed_form_any_order(self, prior, pd, pfa, pattern):
        det = DetectorCharacteristic(pd, pfa)
        looks = [(POS if bit else NEG, det) for bit in pattern]
        state = fold_sequence(prior, looks)
        n_pos = sum(pattern)
        closed = log_odds_after_n_looks(prior, det, n_pos, len(pattern) - n_pos)
        if not looks:
            assert state.current == prior
        else:
            assert state.current_log_odds == pytest.approx(closed, abs=1e-10)
            assert state.current == pytest.approx(
                posterior_after_n_looks(prior, det, n_pos, len(pattern) - n_pos),
                abs=1e-12,
            )

    def test_replay_reproduces_current(self):
        det = DetectorCharacteristic(0.8, 0.2)
        state = BeliefState(0.3)
        for outcome in (POS, NEG, POS, POS):
            state = apply_look(state, outcome, det)
        replayed = fold_sequence(
            state.initial_prior, [(rec.outcome, rec.detector) for rec in state.looks]
        )
        assert replayed.current == state.current

import io
import random
from fractions import Fraction

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from chancelab.confirmation import (
    ChanceHypothesis,
    ConfirmationError,
    CredenceState,
    DeficientTrueModel,
    LambdaNotLessThanOne,
    NotAnHStarPair,
    ZeroEvidence,
    anticipation_limit,
    bayes_update,
    decay_envelope,
    draw_cells,
    hstar_pair_roles,
    lemma_lambda,
    make_credence_state,
    principal_likelihood,
    run_trajectory,
    trajectory_to_csv,
)
from chancelab.measures import (
    deficiency,
    dyadic_tail_measure,
    hstar,
    make_partition_measure,
    mass,
)

from strategies import partition_measures

SHAMAN = dyadic_tail_measure(Fraction(1, 2), "under-filled-halving")
ADDITIVE = dyadic_tail_measure(Fraction(1), "coin-geometric")


def shaman_pair(p=Fraction(1, 2)):
    return make_credence_state(
        [ChanceHypothesis("H", SHAMAN), ChanceHypothesis("Hstar", ADDITIVE)],
        [p, 1 - p],
    )


def pair_state(measure, p):
    return make_credence_state(
        [ChanceHypothesis("H", measure), ChanceHypothesis("Hstar", hstar(measure))],
        [p, 1 - p],
    )


class TestStateValidation:
    def test_priors_must_sum_to_one(self):
        with pytest.raises(ConfirmationError):
            make_credence_state(
                [ChanceHypothesis("a", SHAMAN), ChanceHypothesis("b", ADDITIVE)],
                [Fraction(1, 2), Fraction(1, 3)],
            )

    def test_fresh_priors_must_be_positive(self):
        with pytest.raises(ConfirmationError):
            make_credence_state(
                [ChanceHypothesis("a", SHAMAN), ChanceHypothesis("b", ADDITIVE)],
                [Fraction(0), Fraction(1)],
            )

    def test_needs_two_hypotheses(self):
        with pytest.raises(ConfirmationError):
            make_credence_state([ChanceHypothesis("a", ADDITIVE)], [Fraction(1)])

    def test_zero_without_flag_rejected(self):
        with pytest.raises(ConfirmationError):
            CredenceState(
                (ChanceHypothesis("a", SHAMAN), ChanceHypothesis("b", ADDITIVE)),
                (Fraction(0), Fraction(1)),
            )


class TestLikelihoodAndUpdate:
    def test_principal_likelihood_examples(self):
        assert principal_likelihood(ChanceHypothesis("H", SHAMAN), 1) == Fraction(1, 4)
        assert principal_likelihood(ChanceHypothesis("Hstar", ADDITIVE), 1) == Fraction(1, 2)
        point = ChanceHypothesis("pt", make_partition_measure([1]))
        assert principal_likelihood(point, 9) == 0

    def test_update_after_drawing_one(self):
        state = bayes_update(shaman_pair(), 1)
        assert state.priors == (Fraction(1, 3), Fraction(2, 3))
        assert state.history == (1,)

    def test_update_after_drawing_three(self):
        state = bayes_update(shaman_pair(), 3)
        assert state.priors == (Fraction(1, 3), Fraction(2, 3))

    def test_single_survivor_is_fixed_point(self):
        point = make_partition_measure([1], label="point")
        state = make_credence_state(
            [ChanceHypothesis("pt", point), ChanceHypothesis("geo", ADDITIVE)],
            [Fraction(1, 2), Fraction(1, 2)],
        )
        survivor_only = bayes_update(bayes_update(state, 2), 2)  # eliminates the point mass
        assert survivor_only.priors == (Fraction(0), Fraction(1))
        assert survivor_only.eliminated == (True, False)
        again = bayes_update(survivor_only, 5)
        assert again.priors == (Fraction(0), Fraction(1))
        assert again.eliminated == (True, False)

    def test_zero_evidence(self):
        a = make_partition_measure([1], label="pt1")
        b = make_partition_measure(["1/2", "1/2"], label="pt12")
        state = make_credence_state(
            [ChanceHypothesis("a", a), ChanceHypothesis("b", b)],
            [Fraction(1, 2), Fraction(1, 2)],
        )
        with pytest.raises(ZeroEvidence):
            bayes_update(state, 3)

    @settings(max_examples=60, deadline=None)
    @given(partition_measures(deficient=True), st.integers(1, 30))
    def test_posteriors_sum_to_one(self, measure, cell):
        state = pair_state(measure, Fraction(1, 3))
        updated = bayes_update(state, cell)
        assert sum(updated.priors, Fraction(0)) == 1


class TestLemma:
    def test_lambda_examples(self):
        assert lemma_lambda(shaman_pair()) == Fraction(4, 5)
        m = make_partition_measure(["1/4"])  # eps = 3/4
        assert lemma_lambda(pair_state(m, Fraction(2, 3))) == Fraction(4, 5)

    def test_lambda_below_one(self):
        for p in (Fraction(1, 10), Fraction(1, 2), Fraction(9, 10)):
            assert lemma_lambda(shaman_pair(p)) < 1

    def test_pair_detection_is_structural(self):
        # same masses under a different head/tail split still count
        rebuilt = make_partition_measure(
            ["1/2", "1/4"], [("1", "1/2", 3)], "coin-geometric-rebuilt"
        )
        state = make_credence_state(
            [ChanceHypothesis("H", SHAMAN), ChanceHypothesis("alt", rebuilt)],
            [Fraction(1, 2), Fraction(1, 2)],
        )
        assert hstar_pair_roles(state) == (0, 1)
        # order independence
        flipped = make_credence_state(
            [ChanceHypothesis("alt", rebuilt), ChanceHypothesis("H", SHAMAN)],
            [Fraction(1, 2), Fraction(1, 2)],
        )
        assert hstar_pair_roles(flipped) == (1, 0)

    def test_not_a_pair(self):
        state = make_credence_state(
            [ChanceHypothesis("a", ADDITIVE), ChanceHypothesis("b", ADDITIVE)],
            [Fraction(1, 2), Fraction(1, 2)],
        )
        with pytest.raises(NotAnHStarPair):
            lemma_lambda(state)

    @settings(max_examples=60, deadline=None)
    @given(partition_measures(deficient=True), st.integers(1, 64))
    def test_posterior_strictly_below_lambda_p(self, measure, cell):
        state = pair_state(measure, Fraction(2, 5))
        lam = lemma_lambda(state)
        p = state.priors[0]
        updated = bayes_update(state, cell)
        if mass(measure, cell) == 0:
            assert updated.priors[0] == 0
        else:
            assert updated.priors[0] < lam * p


class TestEnvelope:
    def test_examples(self):
        assert decay_envelope(Fraction(1, 2), Fraction(4, 5), 3) == Fraction(32, 125)
        assert decay_envelope(Fraction(1, 2), Fraction(4, 5), 0) == Fraction(1, 2)
        assert decay_envelope(Fraction(1, 2), Fraction(4, 5), 50) < Fraction(1, 10**4)

    def test_anticipation_fixed_point(self):
        assert anticipation_limit(Fraction(4, 5)) == 0
        assert anticipation_limit(Fraction(1, 2)) == 0
        with pytest.raises(LambdaNotLessThanOne):
            anticipation_limit(Fraction(1))


class TestTrajectory:
    def test_shaman_closed_form_any_seed(self):
        for seed in (0, 7, 123456789):
            trajectory = run_trajectory(shaman_pair(), ADDITIVE, 40, seed)
            for step in trajectory.steps:
                n = step.step
                assert step.posteriors[0] == Fraction(1, 2**n + 1)
                if n > 0:
                    assert step.step_factor == 2
                    assert step.cumulative_factor == 2**n

    def test_envelope_respected_stepwise(self):
        trajectory = run_trajectory(shaman_pair(), ADDITIVE, 100, seed=42)
        lam0 = Fraction(4, 5)
        for step in trajectory.steps:
            assert step.envelope == lam0**step.step * Fraction(1, 2)
            assert step.posteriors[0] <= step.envelope

    def test_lambda_monotone_along_trajectory(self):
        state = shaman_pair(Fraction(1, 3))
        lam_prev = lemma_lambda(state)
        p_star_prev = state.priors[1]
        for cell in draw_cells(ADDITIVE, 50, seed=9):
            state = bayes_update(state, cell)
            lam = lemma_lambda(state)
            assert state.priors[1] >= p_star_prev
            assert lam <= lam_prev
            lam_prev, p_star_prev = lam, state.priors[1]

    def test_deficient_true_model_rejected(self):
        with pytest.raises(DeficientTrueModel):
            run_trajectory(shaman_pair(), SHAMAN, 5, seed=1)

    def test_zero_draws(self):
        trajectory = run_trajectory(shaman_pair(), ADDITIVE, 0, seed=3)
        assert len(trajectory.steps) == 1
        assert trajectory.steps[0].posteriors == (Fraction(1, 2), Fraction(1, 2))

    def test_non_pair_states_have_no_envelope(self):
        state = make_credence_state(
            [ChanceHypothesis("a", ADDITIVE), ChanceHypothesis("b", make_partition_measure([1], label="pt"))],
            [Fraction(1, 2), Fraction(1, 2)],
        )
        trajectory = run_trajectory(state, ADDITIVE, 3, seed=5)
        assert all(step.envelope is None for step in trajectory.steps)


class TestSampler:
    def test_bit_reproducible(self):
        assert draw_cells(ADDITIVE, 500, seed=77) == draw_cells(ADDITIVE, 500, seed=77)
        assert draw_cells(ADDITIVE, 500, seed=77) != draw_cells(ADDITIVE, 500, seed=78)

    def test_respects_point_mass(self):
        assert draw_cells(make_partition_measure([0, 1]), 20, seed=5) == [2] * 20

    def test_rough_frequencies(self):
        draws = draw_cells(ADDITIVE, 4000, seed=11)
        ones = draws.count(1) / 4000
        assert 0.45 < ones < 0.55


class TestCsvExport:
    def test_header_and_rows(self):
        trajectory = run_trajectory(shaman_pair(), ADDITIVE, 2, seed=42)
        buf = io.StringIO()
        trajectory_to_csv(trajectory, buf)
        lines = buf.getvalue().splitlines()
        assert lines[0] == "step,drawn_cell,cred_H,cred_Hstar,envelope"
        assert lines[1] == "0,,1/2,1/2,1/2"
        assert lines[2].startswith("1,")
        assert lines[2].endswith("1/3,2/3,2/5")

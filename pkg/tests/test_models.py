"""Probability models: composition identities, rankings, density."""

import itertools
import math

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st
from scipy.integrate import quad

from prefsense import (
    LOGISTIC,
    PROBIT,
    DomainError,
    KTuplePreference,
    SaturationWarning,
    ScoredOptionSet,
    ValidationError,
    bt_compose,
    bt_prob,
    compose_pairwise,
    logit_normal_density,
    make_rng,
    pl_prob,
    pl_prob_from_ratios,
    pl_ratio,
    ratio_matrix,
)

scores_st = st.floats(min_value=-10, max_value=10, allow_nan=False)
prob_st = st.floats(min_value=1e-6, max_value=1 - 1e-6)


class TestTypes:
    def test_option_set_validation(self):
        with pytest.raises(ValidationError):
            ScoredOptionSet(["a"], [1.0])
        with pytest.raises(ValidationError):
            ScoredOptionSet(["a", "a"], [1.0, 2.0])
        with pytest.raises(ValidationError):
            ScoredOptionSet(["a", "b"], [1.0])
        with pytest.raises(DomainError):
            ScoredOptionSet(["a", "b"], [1.0, math.inf])

    def test_preference_validation(self):
        with pytest.raises(ValidationError):
            KTuplePreference([0])
        with pytest.raises(ValidationError):
            KTuplePreference([0, 0])
        options = ScoredOptionSet(["a", "b"], [0.0, 1.0])
        with pytest.raises(DomainError):
            KTuplePreference([0, 5]).validate_for(options)
        with pytest.raises(DomainError):
            KTuplePreference([0, 1, 2]).validate_for(options)


class TestBTProb:
    def test_equal_scores(self):
        assert bt_prob(0.0, 0.0) == 0.5
        assert bt_prob(7.3, 7.3) == 0.5

    def test_log_odds(self):
        assert bt_prob(math.log(3), 0.0) == pytest.approx(0.75, abs=1e-14)

    @given(scores_st, scores_st)
    def test_complement(self, a, b):
        assert bt_prob(a, b) + bt_prob(b, a) == pytest.approx(1.0, abs=1e-12)

    def test_rejects_non_finite(self):
        with pytest.raises(DomainError):
            bt_prob(math.nan, 0.0)


class TestComposition:
    def test_frozen_examples(self):
        # Oracle: direct evaluation of the closed form.
        assert bt_compose(0.9801, 0.02) == pytest.approx(0.5012786415711945, abs=1e-12)
        assert bt_compose(0.9999, 0.02) == pytest.approx(0.9951234076433126, abs=1e-12)
        assert bt_compose(0.9993, 0.0141) == pytest.approx(0.9533073166507199, abs=1e-12)
        assert bt_compose(0.9820, 0.0141) == pytest.approx(0.4382762942986285, abs=1e-12)

    def test_midpoint_and_cancellation(self):
        assert bt_compose(0.5, 0.5) == pytest.approx(0.5, abs=1e-15)
        for link in (LOGISTIC, PROBIT):
            assert compose_pairwise(link, 0.5, 0.5) == pytest.approx(0.5, abs=1e-12)
            for p in (0.01, 0.3, 0.9):
                assert compose_pairwise(link, p, 1.0 - p) == pytest.approx(0.5, abs=1e-9)

    def test_symmetric_in_arguments(self):
        rng = make_rng(21)
        for link in (LOGISTIC, PROBIT):
            for _ in range(50):
                a, b = rng.uniform(0.01, 0.99, size=2)
                assert compose_pairwise(link, a, b) == pytest.approx(
                    compose_pairwise(link, b, a), abs=1e-12
                )

    def test_logistic_composition_matches_closed_form(self):
        rng = make_rng(22)
        for _ in range(200):
            a, b = rng.uniform(0.01, 0.99, size=2)
            assert compose_pairwise(LOGISTIC, a, b) == pytest.approx(
                bt_compose(a, b), abs=1e-12
            )

    # Range note for the transitivity and consistency properties: once a
    # probability saturates toward 1, rounding it to float64 wipes the
    # score information (absolute ulp ~1e-16 dwarfs the tail mass), so
    # the tight tolerances are only achievable where the intermediate
    # probabilities stay resolvable: score differences up to ~10 for the
    # logistic and ~5 for the probit. Wider ranges are covered at a
    # correspondingly coarser tolerance below.

    @given(st.floats(min_value=-5, max_value=5), st.floats(min_value=-5, max_value=5))
    @settings(max_examples=200)
    def test_transitivity_through_scores_logistic(self, a, b):
        composed = compose_pairwise(LOGISTIC, LOGISTIC.evaluate(a), LOGISTIC.evaluate(b))
        assert composed == pytest.approx(LOGISTIC.evaluate(a + b), abs=1e-10)

    @given(st.floats(min_value=-2.5, max_value=2.5), st.floats(min_value=-2.5, max_value=2.5))
    @settings(max_examples=200)
    def test_transitivity_through_scores_probit(self, a, b):
        composed = compose_pairwise(PROBIT, PROBIT.evaluate(a), PROBIT.evaluate(b))
        assert composed == pytest.approx(PROBIT.evaluate(a + b), abs=1e-10)

    @pytest.mark.filterwarnings("ignore::prefsense.SaturationWarning")
    @given(
        st.sampled_from(["logistic", "probit"]),
        st.floats(min_value=-7, max_value=7),
        st.floats(min_value=-7, max_value=7),
    )
    @settings(max_examples=200)
    def test_transitivity_wide_range_coarse(self, family, a, b):
        from prefsense import get_link

        link = get_link(family)
        p_a, p_b = link.evaluate(a), link.evaluate(b)
        if not (0.0 < p_a < 1.0 and 0.0 < p_b < 1.0):
            return
        composed = compose_pairwise(link, p_a, p_b)
        assert composed == pytest.approx(link.evaluate(a + b), abs=1e-7)

    @given(
        st.floats(min_value=-2.2, max_value=2.2),
        st.floats(min_value=-2.2, max_value=2.2),
        st.floats(min_value=-2.2, max_value=2.2),
    )
    @settings(max_examples=200)
    def test_consistency_with_scores(self, si, sk, sj):
        composed = bt_compose(bt_prob(si, sk), bt_prob(sk, sj))
        assert composed == pytest.approx(bt_prob(si, sj), abs=1e-12)

    @given(scores_st, scores_st, scores_st)
    @settings(max_examples=200)
    def test_consistency_wide_range_coarse(self, si, sk, sj):
        # Score differences up to 20: rounding the intermediate pair
        # probabilities costs up to ~ulp(1)/g'(20) in the score domain.
        composed = bt_compose(bt_prob(si, sk), bt_prob(sk, sj))
        assert composed == pytest.approx(bt_prob(si, sj), abs=1e-7)

    def test_domain_errors(self):
        with pytest.raises(DomainError):
            bt_compose(0.0, 0.5)
        with pytest.raises(DomainError):
            bt_compose(0.5, 1.0)
        with pytest.raises(DomainError):
            compose_pairwise(LOGISTIC, -0.1, 0.5)

    def test_saturation_flag(self):
        with pytest.warns(SaturationWarning):
            bt_compose(1 - 1e-16, 1 - 1e-16)


class TestPLProb:
    def test_uniform_three_way(self):
        options = ScoredOptionSet(["a", "b", "c"], [0.0, 0.0, 0.0])
        for perm in itertools.permutations(range(3)):
            assert pl_prob(KTuplePreference(perm), options) == pytest.approx(
                1.0 / 6.0, abs=1e-14
            )

    def test_pair_degenerates_to_bt(self):
        options = ScoredOptionSet(["a", "b"], [math.log(3), 0.0])
        assert pl_prob(KTuplePreference((0, 1)), options) == pytest.approx(0.75, abs=1e-14)
        rng = make_rng(23)
        for _ in range(200):
            s = rng.uniform(-10, 10, size=2)
            options = ScoredOptionSet(["a", "b"], s)
            assert pl_prob(KTuplePreference((0, 1)), options) == pytest.approx(
                bt_prob(s[0], s[1]), abs=1e-12
            )

    def test_frozen_example(self):
        # Frozen from the enumeration oracle (raw-exponential evaluation).
        options = ScoredOptionSet(["a", "b", "c"], [1.0, 0.0, -1.0])
        assert pl_prob(KTuplePreference((0, 1, 2)), options) == pytest.approx(
            0.4863301075752072, abs=1e-12
        )

    @pytest.mark.parametrize("n", [2, 3, 4])
    def test_full_permutation_normalization(self, n):
        rng = make_rng(24 + n)
        options = ScoredOptionSet([f"o{i}" for i in range(n)], rng.uniform(-3, 3, size=n))
        total = sum(
            pl_prob(KTuplePreference(p), options) for p in itertools.permutations(range(n))
        )
        assert total == pytest.approx(1.0, abs=1e-10)

    @pytest.mark.filterwarnings("ignore::prefsense.SaturationWarning")
    def test_extreme_scores_stable(self):
        options = ScoredOptionSet(["a", "b", "c"], [800.0, 0.0, -800.0])
        value = pl_prob(KTuplePreference((0, 1, 2)), options)
        assert 0.0 < value <= 1.0

    def test_invalid_permutation(self):
        options = ScoredOptionSet(["a", "b", "c"], [1.0, 0.0, -1.0])
        with pytest.raises(DomainError):
            pl_prob(KTuplePreference((0, 3)), options)


class TestPLRatio:
    def test_equal_scores(self):
        options = ScoredOptionSet(["a", "b"], [1.5, 1.5])
        assert pl_ratio(options, 0, 1) == pytest.approx(1.0, abs=1e-15)

    def test_log_two_gap(self):
        options = ScoredOptionSet(["a", "b"], [math.log(2), 0.0])
        assert pl_ratio(options, 0, 1) == pytest.approx(0.5, abs=1e-14)

    def test_reciprocal(self):
        rng = make_rng(26)
        options = ScoredOptionSet(["a", "b", "c"], rng.uniform(-5, 5, size=3))
        for u, v in itertools.permutations(range(3), 2):
            assert pl_ratio(options, u, v) * pl_ratio(options, v, u) == pytest.approx(
                1.0, abs=1e-12
            )

    def test_same_index_rejected(self):
        options = ScoredOptionSet(["a", "b"], [0.0, 1.0])
        with pytest.raises(DomainError):
            pl_ratio(options, 1, 1)

    @pytest.mark.parametrize("k", [3, 4])
    def test_swap_ratio_matches_probability_ratio(self, k):
        # The suffix-swap identity: for tuples sharing a prefix and
        # swapping their last two entries, the probability ratio depends
        # only on the swapped scores, for any K and any prefix.
        rng = make_rng(27 + k)
        options = ScoredOptionSet([f"o{i}" for i in range(k)], rng.uniform(-2, 2, size=k))
        prefix = tuple(range(k - 2))
        u, v = k - 2, k - 1
        p_uv = pl_prob(KTuplePreference(prefix + (u, v)), options)
        p_vu = pl_prob(KTuplePreference(prefix + (v, u)), options)
        assert p_vu / p_uv == pytest.approx(pl_ratio(options, u, v), abs=1e-12)


class TestPLFromRatios:
    def test_uniform(self):
        assert pl_prob_from_ratios(np.ones((3, 3))) == pytest.approx(1.0 / 6.0, abs=1e-14)

    def test_single_pair(self):
        r = 0.37
        m = np.array([[1.0, r], [1.0 / r, 1.0]])
        assert pl_prob_from_ratios(m) == pytest.approx(1.0 / (1.0 + r), abs=1e-14)

    def test_matches_score_based_probability(self):
        rng = make_rng(29)
        for k in (2, 3, 4):
            scores = rng.uniform(-3, 3, size=k)
            options = ScoredOptionSet([f"o{i}" for i in range(k)], scores)
            omega = KTuplePreference(tuple(range(k)))
            ratios = ratio_matrix(options, omega)
            assert pl_prob_from_ratios(ratios) == pytest.approx(
                pl_prob(omega, options), abs=1e-12
            )

    def test_rejects_inconsistent_reciprocals(self):
        m = np.array([[1.0, 2.0], [0.499, 1.0]])
        with pytest.raises(ValidationError):
            pl_prob_from_ratios(m)

    def test_rejects_nonpositive(self):
        m = np.array([[1.0, -2.0], [-0.5, 1.0]])
        with pytest.raises(ValidationError):
            pl_prob_from_ratios(m)

    def test_rejects_non_square(self):
        with pytest.raises(ValidationError):
            pl_prob_from_ratios(np.ones((2, 3)))


class TestLogitNormalDensity:
    def test_midpoint_closed_form(self):
        for sigma2 in (0.3, 1.0, 2.5):
            want = 4.0 / math.sqrt(2.0 * math.pi * 2.0 * sigma2)
            assert logit_normal_density(0.5, sigma2) == pytest.approx(want, rel=1e-12)

    def test_symmetry(self):
        rng = make_rng(31)
        for sigma2 in (0.5, 1.1):
            for x in rng.uniform(1e-4, 0.5, size=100):
                assert logit_normal_density(x, sigma2) == pytest.approx(
                    logit_normal_density(1.0 - x, sigma2), rel=1e-9
                )

    @pytest.mark.parametrize("sigma2", [0.5, 1.1, 2.0])
    def test_integrates_to_one(self, sigma2):
        total, err = quad(lambda y: logit_normal_density(y, sigma2), 1e-12, 1 - 1e-12, limit=200)
        assert total == pytest.approx(1.0, abs=1e-4)

    def test_bimodal_dip_at_center(self):
        # For sigma2 > 1 the center is a local minimum.
        assert logit_normal_density(0.5, 1.1) < logit_normal_density(0.25, 1.1)

    def test_domain_errors(self):
        with pytest.raises(DomainError):
            logit_normal_density(0.0, 1.0)
        with pytest.raises(DomainError):
            logit_normal_density(1.0, 1.0)
        with pytest.raises(DomainError):
            logit_normal_density(0.5, 0.0)
        with pytest.raises(DomainError):
            logit_normal_density(0.5, -1.0)

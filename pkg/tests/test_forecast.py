import numpy as np
import pytest

import delaykit as dk
from delaykit.errors import NoNeighborError, ValidationError


class TestSimplePredictors:
    def test_random_walk(self):
        assert dk.forecast_random_walk(np.array([1.0, 2.0, 3.0])) == 3.0
        assert dk.forecast_random_walk(np.array([7.0])) == 7.0

    def test_random_walk_exact_on_constant(self):
        constant = np.full(50, 4.2)
        preds = [dk.forecast_random_walk(constant[: i]) for i in range(10, 50)]
        assert all(p == 4.2 for p in preds)

    def test_naive(self):
        assert dk.forecast_naive(np.array([1.0, 2.0, 3.0])) == 2.0
        assert dk.forecast_naive(np.array([5.0, 5.0])) == 5.0

    def test_naive_noise_concentrates(self):
        rng = np.random.default_rng(0)
        x = rng.standard_normal(10000)
        assert abs(dk.forecast_naive(x)) < 3.0 / np.sqrt(10000)


class TestAR:
    def test_exact_ar1_recovery(self):
        x = 0.5 ** np.arange(200.0)
        pred = dk.forecast_ar(x, order=1)
        assert pred == pytest.approx(0.5 * x[-1], abs=1e-9)

    def test_constant_falls_back_to_mean(self):
        assert dk.forecast_ar(np.full(100, 3.0), order=2) == pytest.approx(3.0)

    def test_sine_two_term_recurrence(self):
        x = np.sin(0.3 * np.arange(500.0))
        pred = dk.forecast_ar(x, order=2)
        assert abs(pred - np.sin(0.3 * 500)) < 1e-6

    def test_order_bounds(self):
        with pytest.raises(ValidationError):
            dk.forecast_ar(np.arange(3.0), order=3)


class TestLMA:
    def test_exact_recurrence_copies_successor(self):
        # the last vector of a periodic series exactly matches an earlier
        # one, so the prediction is that vector's historical successor
        cycle = np.array([1.0, 2.0, 3.0, 4.0])
        train = np.concatenate([np.tile(cycle, 5), [1.0, 2.0]])
        pred = dk.forecast_lma(train, m=2, tau=1, steps=1)
        assert pred[0] == 3.0

    def test_multi_step_continues_cycle(self):
        cycle = np.array([1.0, 2.0, 3.0, 4.0])
        train = np.concatenate([np.tile(cycle, 6), [1.0]])
        preds = dk.forecast_lma(train, m=2, tau=1, steps=5)
        assert preds.tolist() == [2.0, 3.0, 4.0, 1.0, 2.0]

    def test_single_vector_has_no_neighbor(self):
        with pytest.raises(NoNeighborError):
            dk.forecast_lma(np.array([1.0, 2.0]), m=2, tau=1)

    def test_theiler_window_excludes_recent(self):
        train = np.array([1.0, 2.0, 3.0])
        # one candidate remains at theiler=0; theiler=1 removes it too
        assert dk.forecast_lma(train, m=2, tau=1)[0] == 3.0
        with pytest.raises(NoNeighborError):
            dk.forecast_lma(train, m=2, tau=1, theiler=1)

    def test_prediction_is_a_training_value(self, logistic_10k):
        values = logistic_10k.values[:2000]
        pred = dk.forecast_lma(values, m=2, tau=1)[0]
        assert pred in values

    def test_affine_invariance_of_neighbor_choice(self):
        rng = np.random.default_rng(1)
        x = np.cumsum(rng.standard_normal(400))
        base = dk.forecast_lma(x, m=3, tau=2, steps=4)
        scaled = dk.forecast_lma(2.5 * x + 7.0, m=3, tau=2, steps=4)
        assert np.allclose(scaled, 2.5 * base + 7.0, atol=1e-12)

    def test_logistic_one_step_error_tiny(self, logistic_10k):
        run = dk.rolling_evaluate(logistic_10k, 0.9, "lma", h=1, m=1, tau=1)
        assert run.score.value <= 1e-3


class TestRollingEvaluate:
    def test_oracle_method_scores_zero(self):
        rng = np.random.default_rng(2)
        series = rng.standard_normal(500)

        def oracle(train_values, steps):
            start = len(train_values)
            return series[start : start + steps]

        run = dk.rolling_evaluate(series, 0.8, oracle, h=3)
        assert run.score.value == 0.0
        assert np.array_equal(run.predictions, run.truth)

    def test_random_walk_predictions_shift_truth(self):
        rng = np.random.default_rng(3)
        series = rng.standard_normal(200)
        run = dk.rolling_evaluate(series, 0.9, "random_walk", h=1)
        assert run.predictions[0] == series[179]
        assert np.array_equal(run.predictions[1:], run.truth[:-1])

    def test_block_protocol_lengths(self):
        rng = np.random.default_rng(4)
        series = rng.standard_normal(107)
        run = dk.rolling_evaluate(series, 0.9, "naive", h=4)
        assert run.predictions.size == run.truth.size == 11
        assert run.score.h == 4

    def test_naive_blocks_are_constant(self):
        rng = np.random.default_rng(5)
        series = rng.standard_normal(100)
        run = dk.rolling_evaluate(series, 0.8, "naive", h=5)
        blocks = run.predictions.reshape(4, 5)
        for row in blocks:
            assert np.all(row == row[0])

    def test_ar_refit_cadence_recorded(self):
        rng = np.random.default_rng(6)
        x = np.zeros(300)
        for i in range(1, 300):
            x[i] = 0.7 * x[i - 1] + rng.standard_normal()
        run = dk.rolling_evaluate(x, 0.9, "ar", h=1, order=3, refit_every=10)
        assert run.params["refit_every"] == 10
        assert run.params["order"] == 3
        assert run.score.value > 0

    def test_lma_requires_parameters(self):
        with pytest.raises(ValidationError):
            dk.rolling_evaluate(np.arange(100.0), 0.9, "lma", h=1)

    def test_unknown_method_rejected(self):
        with pytest.raises(ValidationError):
            dk.rolling_evaluate(np.arange(100.0), 0.9, "arima", h=1)

    def test_lorenz96_optimal_beats_heuristic(self, lorenz96_20k):
        sub = dk.ScalarSeries(lorenz96_20k.values[:6000])
        good = dk.rolling_evaluate(sub, 0.9, "lma", h=1, m=2, tau=1)
        heuristic = dk.rolling_evaluate(sub, 0.9, "lma", h=1, m=8, tau=26)
        assert good.score < heuristic.score

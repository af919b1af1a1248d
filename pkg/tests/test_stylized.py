import numpy as np
import pytest

from market_recon.exceptions import (InsufficientDataException, DomainException,
                                     StylizedFactsException)
from market_recon.helpers.preprocess import ReturnSeries, log_returns
from market_recon.helpers.stylized import (MomentTable, sliding_volatility,
                                           accumulated_volatility, max_return, moments,
                                           scaling_exponent, autocorrelation, return_dynamics,
                                           stylized_report)

from conftest import make_series, geometric_walk


def exponential_series(c, length):
    return make_series(np.exp(c * np.arange(length)))


def test_constant_returns_have_zero_volatility():
    np.testing.assert_array_equal(sliding_volatility(ReturnSeries.from_values([0.3] * 12), 5), 0)


def test_sliding_volatility_aligns_to_window_end():
    c = 0.02
    result = sliding_volatility(ReturnSeries.from_values([0, 0, c, c]), 2)
    np.testing.assert_allclose(result, [0, c / 2, 0])


def test_alternating_returns_have_constant_volatility():
    c = 0.01
    result = sliding_volatility(ReturnSeries.from_values([-c, c] * 5), 2)
    np.testing.assert_allclose(result, c)


def test_window_longer_than_returns_is_rejected():
    with pytest.raises(InsufficientDataException):
        sliding_volatility(ReturnSeries.from_values([0.1, 0.2]), 3)
    with pytest.raises(DomainException):
        sliding_volatility(ReturnSeries.from_values([0.1, 0.2]), 1)


def test_accumulated_volatility_is_a_prefix_sum():
    np.testing.assert_array_equal(accumulated_volatility([1, 2, 3]), [1, 3, 6])
    np.testing.assert_array_equal(accumulated_volatility([0, 0]), [0, 0])
    sliding = sliding_volatility(log_returns(make_series(geometric_walk(300, seed=1))), 10)
    assert np.all(np.diff(accumulated_volatility(sliding)) >= 0)


def test_constant_prices_have_zero_max_return():
    np.testing.assert_array_equal(max_return(make_series([7.0] * 20), 10), 0)


def test_exponential_prices_have_linear_max_return():
    c = 0.003
    np.testing.assert_allclose(max_return(exponential_series(c, 60), 20),
                               c * np.arange(1, 21), rtol=1e-9)


def test_max_return_matches_brute_force():
    prices = geometric_walk(150, seed=2)
    log_prices = np.log(prices)
    delta = max_return(make_series(prices), 40)
    for n in range(1, 41):
        brute = max(log_prices[t + n] - log_prices[t] for t in range(len(prices) - n))
        assert delta[n - 1] == pytest.approx(brute)


def test_horizon_must_fit_series():
    with pytest.raises(InsufficientDataException):
        max_return(make_series([1.0, 2.0, 3.0]), 3)


def test_constant_prices_have_zero_moments():
    table = moments(make_series([3.0] * 30), [1, 2], [1, 5, 10])
    np.testing.assert_array_equal(table.values, 0)


def test_exponential_prices_have_power_moments():
    c = 0.01
    n_values = np.arange(1, 11)
    table = moments(exponential_series(c, 40), [1, 2, 3], n_values)
    for q in (1, 2, 3):
        np.testing.assert_allclose(table.row(q), (c * n_values) ** q, rtol=1e-9)


def test_second_moment_dominates_squared_first():
    table = moments(make_series(geometric_walk(400, seed=4)), [1, 2], range(1, 30))
    assert np.all(table.row(2) >= table.row(1) ** 2)


def test_exact_power_law_gives_chi_equal_to_q():
    c = 0.01
    n_values = np.arange(1, 101)
    q_values = np.arange(1, 5)
    table = MomentTable(q_values.astype(float), n_values,
                        np.array([(c * n_values) ** q for q in q_values]))
    chi = scaling_exponent(table, (1, 100))
    np.testing.assert_allclose(chi.chi, q_values, rtol=1e-9)
    np.testing.assert_allclose(chi.residual_norms, 0, atol=1e-9)


def test_chi_increases_with_q_on_a_log_concave_family():
    n_values = np.arange(1, 51)
    q_values = np.arange(1, 6)
    table = MomentTable(q_values.astype(float), n_values,
                        np.array([n_values ** (0.6 * q - 0.02 * q * q) for q in q_values]))
    assert np.all(np.diff(scaling_exponent(table, (1, 50)).chi) > 0)


def test_non_positive_moments_are_reported():
    table = MomentTable(np.array([1.0]), np.arange(1, 6), np.array([[1.0, 0.0, 1.0, 2.0, 3.0]]))
    with pytest.raises(StylizedFactsException) as e:
        scaling_exponent(table, (1, 5))
    assert e.value.offending == [(1.0, 2)]


def test_fit_range_needs_three_horizons():
    table = MomentTable(np.array([1.0]), np.arange(1, 6), np.ones((1, 5)))
    with pytest.raises(StylizedFactsException):
        scaling_exponent(table, (4, 5))


def test_independent_returns_scale_like_square_root():
    series = make_series(geometric_walk(6000, seed=17))
    table = moments(series, [1], range(1, 101))
    chi = scaling_exponent(table, (1, 100)).chi[0]
    assert 0.35 <= chi <= 0.65


def test_constant_returns_correlate_at_c_squared():
    c = 0.02
    curve = autocorrelation(ReturnSeries.from_values([c] * 30), 5)
    np.testing.assert_allclose(curve.raw, c * c)
    np.testing.assert_array_equal(curve.normalized, 0)


def test_alternating_returns_anticorrelate():
    c = 0.01
    returns = ReturnSeries.from_values([c, -c] * 20)
    assert autocorrelation(returns, 3).raw[1] == pytest.approx(-c * c)
    assert autocorrelation(returns, 3, use_absolute=True).raw[1] == pytest.approx(c * c)


def test_zero_lag_is_mean_square():
    returns = log_returns(make_series(geometric_walk(500, seed=5)))
    curve = autocorrelation(returns, 4)
    assert curve.raw[0] == pytest.approx(returns.sigma ** 2 + returns.mean ** 2)
    assert curve.normalized[0] == pytest.approx(1.0)


def test_independent_returns_stay_in_the_noise_band():
    returns = log_returns(make_series(geometric_walk(6000, seed=23)))
    curve = autocorrelation(returns, 20)
    bound = 4 / np.sqrt(len(returns))
    assert np.all(np.abs(curve.normalized[2:21]) < bound)


def test_lag_must_fit_returns():
    with pytest.raises(InsufficientDataException):
        autocorrelation(ReturnSeries.from_values([0.1, 0.2]), 2)


def test_return_dynamics_pairs_consecutive_returns():
    current, following = return_dynamics(ReturnSeries.from_values([0.1, 0.2, 0.3]))
    np.testing.assert_array_equal(current, [0.1, 0.2])
    np.testing.assert_array_equal(following, [0.2, 0.3])


def test_report_clamps_long_horizons():
    series = make_series(geometric_walk(200, seed=6))
    returns = log_returns(series)
    report = stylized_report(series, returns, window=10, n_max=1000, q_max=3,
                             fit_range=(1, 100), t_max=500)
    assert report.delta_curve.size == 199
    assert report.correlation_curves[0].lags[-1] == 198
    assert len(report.notes) == 2
    assert report.chi_curve is not None
    assert report.sliding_volatility.size == len(returns) - 9

"""Stationarity diagnostics and stylized facts of returns."""
from dataclasses import dataclass, field
from typing import Optional, Sequence, Tuple

import numpy as np
from numpy.lib.stride_tricks import sliding_window_view
from numpy.polynomial import polynomial

from market_recon.config import get_custom_logger
from market_recon.exceptions import (InsufficientDataException, DomainException,
                                     StylizedFactsException, INSUFFICIENT_DATA)
from market_recon.helpers.ingest import PriceSeries
from market_recon.helpers.preprocess import ReturnSeries

logger = get_custom_logger("market_recon.stylized")


@dataclass(frozen=True, eq=False)
class MomentTable:
    """S_q(n) with rows indexed by q and columns by n."""
    q_values: np.ndarray
    n_values: np.ndarray
    values: np.ndarray

    def row(self, q) -> np.ndarray:
        return self.values[int(np.flatnonzero(self.q_values == q)[0])]


@dataclass(frozen=True, eq=False)
class ChiCurve:
    """Scaling exponent per q, with the log-log fit residual norm."""
    q_values: np.ndarray
    chi: np.ndarray
    intercepts: np.ndarray
    residual_norms: np.ndarray
    fit_range: Tuple[int, int]


@dataclass(frozen=True, eq=False)
class CorrelationCurve:
    """
    Raw (uncentered) mean lagged products as defined for returns or absolute
    returns, plus a centered companion normalized by its lag-0 value.
    """
    lags: np.ndarray
    raw: np.ndarray
    normalized: np.ndarray
    use_absolute: bool


@dataclass(frozen=True, eq=False)
class StylizedReport:
    sliding_volatility: np.ndarray
    accumulated_volatility: np.ndarray
    delta_curve: np.ndarray
    moment_table: MomentTable
    chi_curve: Optional[ChiCurve]
    correlation_curves: Tuple[CorrelationCurve, CorrelationCurve]
    window: int
    notes: list = field(default_factory=list)


def _nday_returns(log_prices, n):
    return log_prices[n:] - log_prices[:-n]


def _check_horizon(series: PriceSeries, n_max):
    if n_max < 1:
        raise DomainException("n", f"horizon must be positive, got {n_max}", value=n_max)
    if n_max >= len(series):
        raise InsufficientDataException(
            "prices", f"{INSUFFICIENT_DATA} for {n_max}-day returns",
            required=n_max + 1, available=len(series))


def sliding_volatility(returns: ReturnSeries, window=10) -> np.ndarray:
    """Population sigma over each trailing window, aligned to the window's last return."""
    if window < 2:
        raise DomainException("window", f"window must be at least 2, got {window}",
                              value=window)
    if len(returns) < window:
        raise InsufficientDataException(
            "returns", f"{INSUFFICIENT_DATA} for a {window}-day window",
            required=window, available=len(returns))
    return sliding_window_view(returns.values, window).std(axis=1)


def accumulated_volatility(sliding) -> np.ndarray:
    return np.cumsum(np.asarray(sliding, dtype=float))


def max_return(series: PriceSeries, n_max) -> np.ndarray:
    """delta(n) = max_t r(t, n) for n = 1 ... n_max (entry n - 1)."""
    _check_horizon(series, n_max)
    log_prices = np.log(series.values())
    return np.array([_nday_returns(log_prices, n).max() for n in range(1, n_max + 1)])


def moments(series: PriceSeries, q_values: Sequence, n_values: Sequence) -> MomentTable:
    """S_q(n) = mean over t of |r(t, n)|^q."""
    q_values = np.asarray(q_values, dtype=float)
    n_values = np.asarray(n_values, dtype=int)
    _check_horizon(series, int(n_values.max()))
    if n_values.min() < 1:
        raise DomainException("n", "horizons must be positive", value=int(n_values.min()))
    log_prices = np.log(series.values())
    table = np.empty((q_values.size, n_values.size))
    for j, n in enumerate(n_values):
        magnitude = np.abs(_nday_returns(log_prices, n))
        table[:, j] = [np.mean(magnitude ** q) for q in q_values]
    return MomentTable(q_values, n_values, table)


def scaling_exponent(table: MomentTable, fit_range=(1, 100)) -> ChiCurve:
    """
    chi(q) as the least-squares slope of log S_q(n) against log n over the
    horizons inside fit_range.
    """
    low, high = fit_range
    in_range = (table.n_values >= low) & (table.n_values <= high)
    if in_range.sum() < 3:
        raise StylizedFactsException(
            "fit_range", f"fit range {low}..{high} holds fewer than 3 horizons")
    n_values = table.n_values[in_range]
    moments_in_range = table.values[:, in_range]
    offending = [(float(q), int(n))
                 for i, q in enumerate(table.q_values)
                 for j, n in enumerate(n_values) if moments_in_range[i, j] <= 0]
    if offending:
        raise StylizedFactsException(
            "moments", "non-positive moments cannot be log-fitted", offending=offending)

    log_n = np.log(n_values)
    chi, intercepts, residuals = [], [], []
    for row in moments_in_range:
        log_s = np.log(row)
        intercept, slope = polynomial.polyfit(log_n, log_s, 1)
        chi.append(slope)
        intercepts.append(intercept)
        residuals.append(np.linalg.norm(log_s - (intercept + slope * log_n)))
    return ChiCurve(table.q_values, np.array(chi), np.array(intercepts),
                    np.array(residuals), (low, high))


def autocorrelation(returns: ReturnSeries, t_max, use_absolute=False) -> CorrelationCurve:
    """C(T) = mean over t of r(t + T) r(t) (or of absolute values) for T = 0 ... t_max."""
    if t_max < 0 or t_max >= len(returns):
        raise InsufficientDataException(
            "returns", f"{INSUFFICIENT_DATA} for lag {t_max}",
            required=t_max + 1, available=len(returns))
    values = np.abs(returns.values) if use_absolute else returns.values
    centered = values - values.mean()
    size = values.size
    raw = np.array([np.mean(values[lag:] * values[:size - lag]) for lag in range(t_max + 1)])
    covariance = np.array([np.mean(centered[lag:] * centered[:size - lag])
                           for lag in range(t_max + 1)])
    if covariance[0] > 0:
        normalized = covariance / covariance[0]
    else:
        logger.warning("Constant %sreturns: normalized correlation set to zero",
                       "absolute " if use_absolute else "")
        normalized = np.zeros_like(covariance)
    return CorrelationCurve(np.arange(t_max + 1), raw, normalized, use_absolute)


def return_dynamics(returns: ReturnSeries) -> Tuple[np.ndarray, np.ndarray]:
    """Pairs (r(t, 1), r(t + 1, 1)) for the return dynamics scatter."""
    return returns.values[:-1], returns.values[1:]


def stylized_report(series: PriceSeries, returns: ReturnSeries, window=10, n_max=1000,
                    q_max=8, fit_range=(1, 100), t_max=100) -> StylizedReport:
    """
    All diagnostics for one series. Horizons and lags longer than the data
    allows are clamped, with a note recorded in the report.
    """
    notes = []
    if n_max >= len(series):
        notes.append(f"n_max clamped from {n_max} to {len(series) - 1}")
        n_max = len(series) - 1
    if t_max >= len(returns):
        notes.append(f"t_max clamped from {t_max} to {len(returns) - 1}")
        t_max = len(returns) - 1
    for note in notes:
        logger.warning(note)

    sliding = sliding_volatility(returns, window)
    table = moments(series, range(1, q_max + 1), range(1, n_max + 1))
    try:
        chi = scaling_exponent(table, fit_range)
    except StylizedFactsException as e:
        logger.warning("Scaling exponent skipped: %s", e)
        notes.append(f"scaling exponent skipped: {e}")
        chi = None
    return StylizedReport(
        sliding_volatility=sliding,
        accumulated_volatility=accumulated_volatility(sliding),
        delta_curve=max_return(series, n_max),
        moment_table=table,
        chi_curve=chi,
        correlation_curves=(autocorrelation(returns, t_max, use_absolute=False),
                            autocorrelation(returns, t_max, use_absolute=True)),
        window=window,
        notes=notes,
    )

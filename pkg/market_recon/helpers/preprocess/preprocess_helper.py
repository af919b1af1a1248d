"""Trend removal, rescaling and log returns for price series."""
from dataclasses import dataclass
from typing import Tuple

import numpy as np
from numpy.polynomial import Polynomial, polynomial

from market_recon.config import get_custom_logger
from market_recon.exceptions import (TrendFitException, InsufficientDataException,
                                     DomainException, INSUFFICIENT_DATA)
from market_recon.helpers.ingest import PriceSeries

logger = get_custom_logger("market_recon.preprocess")


@dataclass(frozen=True)
class TrendModel:
    """Polynomial trend q(t) over the trading-day index, coefficients in ascending powers."""
    degree: int
    coefficients: Tuple[float, ...]

    def evaluate(self, t) -> np.ndarray:
        return polynomial.polyval(np.asarray(t, dtype=float), self.coefficients)

    def values(self, length) -> np.ndarray:
        """q(t) for t = 0 ... length - 1."""
        return self.evaluate(np.arange(length))


@dataclass(frozen=True, eq=False)
class ReturnSeries:
    """n-day log returns with their mean and population standard deviation."""
    horizon_n: int
    values: np.ndarray
    mean: float
    sigma: float

    @classmethod
    def from_values(cls, values, horizon_n=1):
        values = np.array(values, dtype=float)
        values.setflags(write=False)
        if values.size == 0:
            return cls(horizon_n, values, 0.0, 0.0)
        return cls(horizon_n, values, float(np.mean(values)), float(np.std(values)))

    def __len__(self):
        return self.values.size


def fit_polynomial_trend(series: PriceSeries, degree=3) -> TrendModel:
    """
    Least-squares polynomial fit of the prices against t = 0 ... T-1
    :param series: the prices to fit
    :param degree: polynomial degree, 3 by default
    """
    if degree < 0:
        raise TrendFitException("degree", f"degree must not be negative, got {degree}")
    if degree >= len(series):
        raise TrendFitException(
            "degree", f"degree {degree} is underdetermined for {len(series)} prices")

    t = np.arange(len(series), dtype=float)
    # fitted on a scaled domain (SVD least squares), then mapped back to raw t
    fitted = Polynomial.fit(t, series.values(), degree).convert()
    coefficients = np.zeros(degree + 1)
    coefficients[:fitted.coef.size] = fitted.coef
    trend = TrendModel(degree, tuple(float(c) for c in coefficients))
    if not np.all(np.isfinite(trend.values(len(series)))):
        raise TrendFitException("degree", "trend is not finite over the observed range")
    logger.info("Fitted degree %s trend over %s prices", degree, len(series))
    return trend


def detrend(series: PriceSeries, trend: TrendModel) -> np.ndarray:
    """p(t) - q(t)"""
    return series.values() - trend.values(len(series))


def restore_trend(detrended, trend: TrendModel) -> np.ndarray:
    """Inverse of detrend: p̄(t) + q(t)."""
    detrended = np.asarray(detrended, dtype=float)
    return detrended + trend.values(detrended.size)


def rescale(detrended, series: PriceSeries, trend: TrendModel) -> np.ndarray:
    """
    Rescale detrended prices by the ratio of the mean price to the trend,
    x(t) = p̄(t) <p> / q(t)
    """
    detrended = np.asarray(detrended, dtype=float)
    if detrended.size != len(series):
        raise DomainException(
            "detrended", f"{detrended.size} residuals for {len(series)} prices",
            value=detrended.size)
    q = trend.values(len(series))
    singular = np.flatnonzero(q == 0)
    if singular.size:
        index = int(singular[0])
        raise TrendFitException("trend", f"trend is zero at index {index}", index=index)
    return detrended * (series.values().mean() / q)


def log_returns(series: PriceSeries, n=1) -> ReturnSeries:
    """r(t, n) = ln p(t + n) - ln p(t) for t = 0 ... T - n - 1."""
    if n < 1:
        raise DomainException("n", f"return horizon must be positive, got {n}", value=n)
    if n >= len(series):
        raise InsufficientDataException(
            "prices", f"{INSUFFICIENT_DATA} for {n}-day returns",
            required=n + 1, available=len(series))
    log_prices = np.log(series.values())
    return ReturnSeries.from_values(log_prices[n:] - log_prices[:-n], horizon_n=n)

"""Shared fixtures: synthetic price files and seeded symbol sources."""
import bisect
from datetime import date, timedelta

import numpy as np
import pytest

from market_recon.helpers.coder import CodingScheme, SymbolSequence
from market_recon.helpers.ingest import PriceSeries, serialize_price_csv


def make_series(prices, start=date(2017, 1, 3), label="synthetic"):
    dates = tuple(start + timedelta(days=i) for i in range(len(prices)))
    return PriceSeries(dates, tuple(float(p) for p in prices), label)


def geometric_walk(length, seed, sigma=0.01, p0=100.0):
    """Prices with i.i.d. normal log returns."""
    rng = np.random.default_rng(seed)
    returns = rng.normal(0.0, sigma, size=length - 1)
    return p0 * np.exp(np.concatenate(([0.0], np.cumsum(returns))))


def sample_chain(matrix, length, seed, first=0):
    """
    Symbols from a first-order source; matrix is column-stochastic with
    column j holding P(next | previous = j - beta).
    """
    matrix = np.asarray(matrix, dtype=float)
    beta = (matrix.shape[0] - 1) // 2
    cumulative = [np.cumsum(matrix[:, j]).tolist() for j in range(matrix.shape[1])]
    epsilons = np.random.default_rng(seed).random(length - 1).tolist()
    symbols = [first]
    for epsilon in epsilons:
        column = cumulative[symbols[-1] + beta]
        index = min(bisect.bisect_left(column, epsilon), len(column) - 1)
        symbols.append(index - beta)
    return symbols


def prices_from_symbols(symbols, step=0.01, noise=0.0005, seed=0, p0=100.0):
    """Prices whose log returns sit near step * symbol, so coding recovers the symbols."""
    rng = np.random.default_rng(seed)
    returns = step * np.asarray(symbols, dtype=float) + rng.uniform(-noise, noise, len(symbols))
    return p0 * np.exp(np.concatenate(([0.0], np.cumsum(returns))))


# stationary distribution (0.25, 0.5, 0.25); forecast RMS near 0.6 against 1.08 for uniform guesses
STICKY_MATRIX = np.array([
    [0.8, 0.1, 0.0],
    [0.2, 0.8, 0.2],
    [0.0, 0.1, 0.8],
])


@pytest.fixture
def unit_scheme():
    return CodingScheme(3, 0.0, 1.0)


@pytest.fixture
def symbols_of(unit_scheme):
    def build(values, scheme=None):
        return SymbolSequence(values, scheme or unit_scheme)
    return build


@pytest.fixture
def price_csv(tmp_path):
    """Write prices to a provider-layout CSV and return its path."""
    def write(prices, name="synthetic.csv"):
        path = tmp_path / name
        path.write_text(serialize_price_csv(make_series(prices)), encoding="utf-8")
        return str(path)
    return write


@pytest.fixture
def sticky_prices():
    return prices_from_symbols(sample_chain(STICKY_MATRIX, 2000, seed=11))

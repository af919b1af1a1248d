"""Train/test reconstruction protocol: forecasts, random baseline, Monte Carlo and K sweeps."""
from collections import Counter
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass
from typing import Dict, List, Tuple

import numpy as np

from market_recon.config import get_custom_logger
from market_recon.exceptions import (InsufficientDataException, DomainException,
                                     ForecastException, INSUFFICIENT_DATA)
from market_recon.helpers.coder import (CodingScheme, SymbolSequence, encode, decode_symbols,
                                        reconstruct_prices)
from market_recon.helpers.ingest import PriceSeries
from market_recon.helpers.markov import (TransitionModel, build_model, conditional_distribution,
                                         inverse_cdf_indices)
from market_recon.helpers.preprocess import log_returns
from market_recon.utils import derive_seed

logger = get_custom_logger("market_recon.forecast")


@dataclass(frozen=True, eq=False)
class ForecastRun:
    forecast_symbols: SymbolSequence
    baseline_symbols: SymbolSequence
    markov_error: float
    baseline_error: float
    seed: int


@dataclass(frozen=True)
class RunSummary:
    index: int
    seed: int
    markov_error: float
    baseline_error: float


@dataclass(frozen=True, eq=False)
class MonteCarloReport:
    """Aggregate of seeded forecast runs against the random baseline."""
    params: dict
    runs: Tuple[RunSummary, ...]
    mean_markov_error: float
    mean_baseline_error: float
    price_deviation_curves: Dict[str, np.ndarray]

    def to_json(self) -> dict:
        return {
            "params": self.params,
            "per_run": [vars(run) for run in self.runs],
            "mean_markov_error": self.mean_markov_error,
            "mean_baseline_error": self.mean_baseline_error,
            "price_deviation_curves": {
                name: [float(v) for v in curve]
                for name, curve in self.price_deviation_curves.items()
            },
        }


@dataclass(frozen=True)
class KSweepRow:
    k: int
    mean_markov_error: float
    mean_baseline_error: float


@dataclass(frozen=True, eq=False)
class ReconstructionRun:
    """Actual prices next to the prices rebuilt from one Markov forecast and one random sequence."""
    index: int
    run: ForecastRun
    actual_prices: np.ndarray
    markov_prices: np.ndarray
    baseline_prices: np.ndarray


def split_sequence(s: SymbolSequence) -> Tuple[SymbolSequence, SymbolSequence]:
    """First floor(len / 2) symbols for training, the remainder for testing."""
    if len(s) < 4:
        raise InsufficientDataException(
            "symbols", f"{INSUFFICIENT_DATA} to split", required=4, available=len(s))
    m = len(s) // 2
    return s[:m], s[m:]


class ForecastPlan:
    """
    Successor distributions for every step of a test sequence, conditioned on
    the true preceding test symbols. Drawing a forecast only needs the
    uniform numbers, so one plan serves any number of seeded runs.
    """

    def __init__(self, model: TransitionModel, test: SymbolSequence):
        if len(test) < 1:
            raise InsufficientDataException(
                "test", f"{INSUFFICIENT_DATA} to forecast", required=1, available=0)
        self._test = test
        self._beta = test.scheme.beta
        steps = len(test) - 1
        self.probabilities = np.zeros((steps, model.alphabet_size_n))
        usage = Counter()
        cache = {}
        for i in range(steps):
            context = tuple(test.symbols[max(0, i + 1 - model.order_k):i + 1].tolist())
            if context not in cache:
                cache[context] = conditional_distribution(model, context)
            dist = cache[context]
            self.probabilities[i] = dist.probabilities
            usage[dist.source_context_length] += 1
        self.backoff_usage = dict(sorted(usage.items()))
        backed_off = sum(v for z, v in usage.items() if z < model.order_k)
        if backed_off:
            logger.warning("%s of %s forecast steps backed off to a shorter context",
                           backed_off, steps)

    def draw(self, rng) -> SymbolSequence:
        epsilons = rng.random(self.probabilities.shape[0])
        drawn = inverse_cdf_indices(self.probabilities, epsilons) - self._beta
        return SymbolSequence(np.concatenate(([self._test[0]], drawn)), self._test.scheme)


def one_step_forecast(model: TransitionModel, test: SymbolSequence, rng) -> SymbolSequence:
    """s*_0 = s_0, then s*_{i+1} sampled from P(. | true context ending at s_i)."""
    return ForecastPlan(model, test).draw(rng)


def random_baseline(scheme: CodingScheme, length, rng) -> SymbolSequence:
    """Independent, uniformly drawn alphabet symbols."""
    if length < 1:
        raise DomainException("length", f"baseline length must be positive, got {length}",
                              value=length)
    return SymbolSequence(rng.integers(-scheme.beta, scheme.beta + 1, size=length), scheme)


def rms_error(actual: SymbolSequence, predicted: SymbolSequence) -> float:
    """Per-step root mean square symbol difference."""
    if len(actual) != len(predicted) or len(actual) == 0:
        raise DomainException(
            "predicted", f"cannot compare {len(actual)} symbols with {len(predicted)}",
            value=len(predicted))
    difference = actual.symbols.astype(float) - predicted.symbols.astype(float)
    return float(np.sqrt(np.mean(difference ** 2)))


class ReconstructionExperiment:
    """
    One price series prepared for forecasting: returns coded with a scheme
    fitted on the training half, a model estimated on that half and a
    forecast plan over the other half. With reverse set, the second half
    trains and the first half is forecast.
    """

    def __init__(self, series: PriceSeries, n_symbols, order_k, reverse=False):
        returns = log_returns(series, 1)
        if len(returns) < 4:
            raise InsufficientDataException(
                "returns", f"{INSUFFICIENT_DATA} to split", required=4, available=len(returns))
        m = len(returns) // 2
        train_returns = returns.values[m:] if reverse else returns.values[:m]
        self.scheme = CodingScheme.from_returns(train_returns, n_symbols)
        self.symbols = encode(returns, self.scheme)
        first, second = split_sequence(self.symbols)
        self.train, self.test = (second, first) if reverse else (first, second)
        self.test_offset = 0 if reverse else m
        self.order_k = order_k
        self.reverse = reverse
        self.model = build_model(self.train, order_k)
        self.plan = ForecastPlan(self.model, self.test)
        self.actual_prices = series.values()[self.test_offset:self.test_offset + len(self.test) + 1]

    def run(self, index, master_seed) -> ForecastRun:
        seed = derive_seed(master_seed, "run", index)
        rng = np.random.default_rng(seed)
        forecast = self.plan.draw(rng)
        baseline = random_baseline(self.scheme, len(self.test), rng)
        return ForecastRun(forecast, baseline, rms_error(self.test, forecast),
                           rms_error(self.test, baseline), seed)

    def price_paths(self, run: ForecastRun) -> Tuple[np.ndarray, np.ndarray]:
        """Markov and baseline price paths anchored at the first test-half price."""
        anchor = self.actual_prices[0]
        return (reconstruct_prices(anchor, decode_symbols(run.forecast_symbols)),
                reconstruct_prices(anchor, decode_symbols(run.baseline_symbols)))

    def params(self) -> dict:
        return {
            "n_symbols": self.scheme.alphabet_size_n,
            "order_k": self.order_k,
            "reverse": self.reverse,
            "train_length": len(self.train),
            "test_length": len(self.test),
            "mean_r": self.scheme.mean_r,
            "sigma_r": self.scheme.sigma_r,
            "backoff_usage": {str(z): n for z, n in self.plan.backoff_usage.items()},
        }


def _simulate_runs(args):
    """
    Run a batch of simulations in a worker process.
    Module level so ProcessPoolExecutor can pickle it.
    """
    experiment, indices, master_seed = args
    results = []
    for index in indices:
        run = experiment.run(index, master_seed)
        markov_prices, baseline_prices = experiment.price_paths(run)
        results.append((
            RunSummary(index, run.seed, run.markov_error, run.baseline_error),
            np.abs(markov_prices - experiment.actual_prices),
            np.abs(baseline_prices - experiment.actual_prices),
        ))
    return results


def _run_simulations(experiment, num_sims, master_seed, workers):
    indices = list(range(num_sims))
    if workers <= 1 or num_sims == 1:
        return _simulate_runs((experiment, indices, master_seed))
    chunks = [indices[i::workers] for i in range(workers) if indices[i::workers]]
    results = []
    with ProcessPoolExecutor(max_workers=workers) as executor:
        for batch in executor.map(_simulate_runs,
                                  [(experiment, chunk, master_seed) for chunk in chunks]):
            results.extend(batch)
    return sorted(results, key=lambda r: r[0].index)


def monte_carlo(series: PriceSeries, n_symbols, k, num_sims, master_seed,
                reverse=False, workers=1) -> MonteCarloReport:
    """
    Repeat the seeded forecast against the random baseline num_sims times.
    Run i is seeded from (master_seed, i) only, so the report does not depend
    on how runs are scheduled across workers.
    """
    if num_sims < 1:
        raise ForecastException("num_sims", f"need at least one simulation, got {num_sims}")
    experiment = ReconstructionExperiment(series, n_symbols, k, reverse=reverse)
    logger.info("Running %s simulations (N=%s, K=%s, reverse=%s)",
                num_sims, n_symbols, k, reverse)
    results = _run_simulations(experiment, num_sims, master_seed, workers)

    runs = tuple(r[0] for r in results)
    params = experiment.params()
    params.update({"num_sims": num_sims, "master_seed": master_seed})
    report = MonteCarloReport(
        params=params,
        runs=runs,
        mean_markov_error=float(np.mean([r.markov_error for r in runs])),
        mean_baseline_error=float(np.mean([r.baseline_error for r in runs])),
        price_deviation_curves={
            "markov": np.mean(np.stack([r[1] for r in results]), axis=0),
            "baseline": np.mean(np.stack([r[2] for r in results]), axis=0),
        },
    )
    logger.info("Mean error: markov %.5f, baseline %.5f",
                report.mean_markov_error, report.mean_baseline_error)
    return report


def k_sweep(series: PriceSeries, n_symbols, k_values, sims_per_k, master_seed,
            reverse=False, workers=1) -> List[KSweepRow]:
    """Mean Markov and baseline errors for each chain order in k_values."""
    k_values = list(k_values)
    if not k_values:
        raise ForecastException("k_values", "no chain orders to sweep")
    if any(k < 1 for k in k_values):
        raise ForecastException("k_values", f"chain orders must be at least 1, got {k_values}")
    rows = []
    for k in k_values:
        report = monte_carlo(series, n_symbols, k, sims_per_k, master_seed,
                             reverse=reverse, workers=workers)
        rows.append(KSweepRow(k, report.mean_markov_error, report.mean_baseline_error))
    return rows


def reconstruct_runs(series: PriceSeries, n_symbols, k, runs, master_seed,
                     reverse=False) -> List[ReconstructionRun]:
    """Individual price reconstructions, seeded exactly like the Monte Carlo runs."""
    experiment = ReconstructionExperiment(series, n_symbols, k, reverse=reverse)
    results = []
    for index in range(runs):
        run = experiment.run(index, master_seed)
        markov_prices, baseline_prices = experiment.price_paths(run)
        results.append(ReconstructionRun(index, run, experiment.actual_prices,
                                         markov_prices, baseline_prices))
    return results

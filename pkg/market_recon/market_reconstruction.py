"""Market process reconstruction: runs one CLI command and writes its data files."""
import os

import numpy as np

from market_recon.config import RunConfig, get_custom_logger
from market_recon.helpers.coder import format_symbols
from market_recon.helpers.forecast import (ReconstructionExperiment, monte_carlo, k_sweep,
                                           reconstruct_runs)
from market_recon.helpers.ingest import PriceSeries, load_price_csv, validate_series
from market_recon.helpers.markov import export_rows, transition_matrix
from market_recon.helpers.preprocess import (fit_polynomial_trend, detrend, rescale,
                                             log_returns)
from market_recon.helpers.randomwalk import simulate_walk, ensemble_stats
from market_recon.helpers.stylized import stylized_report, return_dynamics
from market_recon.reports.report import Report
from market_recon.utils import derive_seed, write_csv_rows, write_json_file_data

logger = get_custom_logger("market_recon.market_reconstruction")


class MarketReconstruction:
    """Main class running a reconstruction command from a validated RunConfig."""

    def __init__(self, config: RunConfig):
        self._config = config
        self._output_dir = os.path.join(config.output_dir, config.command)
        params = {k: v for k, v in vars(config).items() if v is not None}
        params = {k: list(v) if isinstance(v, tuple) else v for k, v in params.items()}
        self._report = Report(config.command, params)

    def _path(self, name):
        return os.path.join(self._output_dir, name)

    def _write_csv(self, name, header, rows):
        path = self._path(name)
        write_csv_rows(path, header, rows)
        self._report.add_file(path)
        logger.info("Wrote %s", path)

    def _write_json(self, name, data):
        path = self._path(name)
        write_json_file_data(data, path)
        self._report.add_file(path)
        logger.info("Wrote %s", path)

    def _load_series(self) -> PriceSeries:
        return load_price_csv(self._config.input_path)

    def _basis_series(self, series, detrended, rescaled) -> PriceSeries:
        """
        Series the return diagnostics run on. Detrended and rescaled residuals
        are lifted by the mean price so their log returns exist.
        """
        if self._config.basis == "raw":
            return series
        residuals = detrended if self._config.basis == "detrended" else rescaled
        lifted = residuals + series.values().mean()
        return validate_series(PriceSeries(series.dates, tuple(float(p) for p in lifted),
                                           series.symbol_label))

    def stats(self):
        """Trend, returns, volatility, max return, moments, scaling exponent, correlations."""
        config = self._config
        series = self._load_series()
        trend = fit_polynomial_trend(series, config.degree)
        q = trend.values(len(series))
        detrended = detrend(series, trend)
        rescaled = rescale(detrended, series, trend)
        dates = [d.isoformat() for d in series.dates]

        self._write_csv("price_trend.csv", ["t", "date", "price", "trend"],
                        zip(range(len(series)), dates, series.prices, q))
        self._write_csv("detrended_prices.csv", ["t", "date", "detrended"],
                        zip(range(len(series)), dates, detrended))
        self._write_csv("rescaled_prices.csv", ["t", "date", "rescaled"],
                        zip(range(len(series)), dates, rescaled))

        basis = self._basis_series(series, detrended, rescaled)
        returns = log_returns(basis, 1)
        report = stylized_report(basis, returns, window=config.window, n_max=config.n_max,
                                 q_max=config.q_max, fit_range=config.fit_range,
                                 t_max=config.t_max)
        for note in report.notes:
            self._report.add_warning(note)

        self._write_csv("returns.csv", ["t", "date", "return"],
                        zip(range(len(returns)), dates[1:], returns.values))
        current, following = return_dynamics(returns)
        self._write_csv("return_dynamics.csv", ["return_t", "return_t_plus_1"],
                        zip(current, following))
        first = config.window - 1
        self._write_csv("sliding_volatility.csv", ["t", "volatility"],
                        zip(range(first, first + report.sliding_volatility.size),
                            report.sliding_volatility))
        self._write_csv("accumulated_volatility.csv", ["t", "accumulated_volatility"],
                        zip(range(first, first + report.accumulated_volatility.size),
                            report.accumulated_volatility))
        self._write_csv("max_return.csv", ["n", "max_return"],
                        zip(range(1, report.delta_curve.size + 1), report.delta_curve))
        table = report.moment_table
        self._write_csv("moments.csv", ["n"] + [f"S_{int(q)}" for q in table.q_values],
                        ([int(n)] + list(table.values[:, j])
                         for j, n in enumerate(table.n_values)))
        raw_curve, abs_curve = report.correlation_curves
        self._write_csv("autocorrelation.csv",
                        ["lag", "returns", "returns_normalized",
                         "abs_returns", "abs_returns_normalized"],
                        zip(raw_curve.lags, raw_curve.raw, raw_curve.normalized,
                            abs_curve.raw, abs_curve.normalized))

        summary = {
            "prices": len(series),
            "basis": config.basis,
            "mean_return": returns.mean,
            "sigma_return": returns.sigma,
            "trend_coefficients": list(trend.coefficients),
        }
        chi = report.chi_curve
        if chi is not None:
            self._write_csv("scaling_exponent.csv", ["q", "chi", "intercept", "residual_norm"],
                            zip(chi.q_values, chi.chi, chi.intercepts, chi.residual_norms))
            summary["chi"] = {str(int(q)): float(c) for q, c in zip(chi.q_values, chi.chi)}
        self._report.update_summary(**summary)
        self._write_json("stats.json", summary)

    def encode(self):
        """Coded symbols and the model estimated on the training half."""
        config = self._config
        experiment = ReconstructionExperiment(self._load_series(), config.n_symbols,
                                              config.order_k, reverse=config.reverse)
        path = self._path("symbols.txt")
        os.makedirs(self._output_dir, exist_ok=True)
        with open(path, "w", encoding="utf-8") as f:
            f.write(format_symbols(experiment.symbols) + "\n")
        self._report.add_file(path)

        model = experiment.model
        self._write_json("transition_model.json", {
            "order_k": model.order_k,
            "alphabet_size_n": model.alphabet_size_n,
            "mean_r": experiment.scheme.mean_r,
            "sigma_r": experiment.scheme.sigma_r,
            "train_length": len(experiment.train),
            "rows": export_rows(model),
        })
        matrix = transition_matrix(model)
        symbols = experiment.scheme.symbols
        self._write_csv("transition_matrix.csv",
                        ["successor"] + [f"from_{int(s)}" for s in symbols],
                        ([int(s)] + list(matrix[i]) for i, s in enumerate(symbols)))
        self._report.update_summary(symbols=len(experiment.symbols),
                                    train_length=len(experiment.train),
                                    contexts=len(model.contexts(model.order_k)))

    def reconstruct(self):
        """Actual, Markov and random price paths for individual seeded runs."""
        config = self._config
        runs = reconstruct_runs(self._load_series(), config.n_symbols, config.order_k,
                                config.runs, config.seed, reverse=config.reverse)
        errors = []
        for result in runs:
            self._write_csv(f"reconstruction_run{result.index}.csv",
                            ["step", "actual", "markov", "random"],
                            zip(range(result.actual_prices.size), result.actual_prices,
                                result.markov_prices, result.baseline_prices))
            errors.append({"run": result.index, "seed": result.run.seed,
                           "markov_error": result.run.markov_error,
                           "baseline_error": result.run.baseline_error})
        self._write_json("reconstruct.json", {"runs": errors})
        self._report.update_summary(runs=len(runs))

    def montecarlo(self):
        """Error distribution and mean price deviation over seeded runs."""
        config = self._config
        report = monte_carlo(self._load_series(), config.n_symbols, config.order_k,
                             config.sims, config.seed, reverse=config.reverse,
                             workers=config.workers)
        self._write_json("montecarlo.json", report.to_json())
        self._write_csv("run_errors.csv", ["run", "seed", "markov_error", "baseline_error"],
                        ((r.index, r.seed, r.markov_error, r.baseline_error)
                         for r in report.runs))
        curves = report.price_deviation_curves
        self._write_csv("price_deviation.csv", ["step", "markov", "random"],
                        zip(range(curves["markov"].size), curves["markov"],
                            curves["baseline"]))
        self._report.update_summary(mean_markov_error=report.mean_markov_error,
                                    mean_baseline_error=report.mean_baseline_error)

    def ksweep(self):
        """Mean errors for each chain order in the K range."""
        config = self._config
        low, high = config.k_range
        rows = k_sweep(self._load_series(), config.n_symbols, range(low, high + 1),
                       config.sims, config.seed, reverse=config.reverse,
                       workers=config.workers)
        self._write_csv("ksweep.csv", ["k", "mean_markov_error", "mean_baseline_error"],
                        ((r.k, r.mean_markov_error, r.mean_baseline_error) for r in rows))
        self._write_json("ksweep.json", {"rows": [vars(r) for r in rows]})
        self._report.update_summary(orders=len(rows))

    def randomwalk(self):
        """Sample paths of several lengths and ensemble statistics."""
        config = self._config
        for steps in config.walk_lengths:
            rng = np.random.default_rng(derive_seed(config.seed, "walk", steps))
            path = simulate_walk(config.start_price, steps, rng)
            self._write_csv(f"random_walk_{steps}.csv", ["step", "price"],
                            zip(range(1, steps + 1), path.values))
        stats = ensemble_stats(config.start_price, config.steps, config.paths, config.seed,
                               workers=config.workers)
        self._write_csv("random_walk_ensemble.csv", ["step", "mean", "std", "sqrt_step"],
                        zip(stats.steps, stats.mean, stats.std, np.sqrt(stats.steps)))
        self._report.update_summary(final_mean=float(stats.mean[-1]),
                                    final_std=float(stats.std[-1]),
                                    final_sqrt_step=float(np.sqrt(config.steps)))

    def run(self):
        """Execute the configured command; returns the list of files written."""
        command = self._config.command
        logger.info("Starting %s", command)
        getattr(self, command)()
        self._write_json("report.json", self._report.to_json())
        summary_path = self._path("summary.html")
        self._report.add_file(summary_path)
        self._report.report(summary_path)
        logger.info("Completed %s: %s files", command, len(self._report.files_written))
        return list(self._report.files_written)

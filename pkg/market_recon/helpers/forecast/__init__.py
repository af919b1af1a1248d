from .forecast_helper import (ForecastRun, RunSummary, MonteCarloReport, KSweepRow,
                              ReconstructionRun, ForecastPlan, ReconstructionExperiment,
                              split_sequence, one_step_forecast, random_baseline, rms_error,
                              monte_carlo, k_sweep, reconstruct_runs)

__all__ = ['ForecastRun', 'RunSummary', 'MonteCarloReport', 'KSweepRow', 'ReconstructionRun',
           'ForecastPlan', 'ReconstructionExperiment', 'split_sequence', 'one_step_forecast',
           'random_baseline', 'rms_error', 'monte_carlo', 'k_sweep', 'reconstruct_runs']

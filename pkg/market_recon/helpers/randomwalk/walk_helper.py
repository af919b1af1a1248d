"""Unit-step coin-toss price walks used as a baseline."""
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass

import numpy as np

from market_recon.config import get_custom_logger
from market_recon.exceptions import DomainException
from market_recon.utils import derive_seed

logger = get_custom_logger("market_recon.randomwalk")


@dataclass(frozen=True, eq=False)
class WalkPath:
    """Prices after each of the steps; values[0] is already one step from start_price."""
    start_price: float
    values: np.ndarray

    def __len__(self):
        return self.values.size


@dataclass(frozen=True, eq=False)
class EnsembleStats:
    """Per-step sample mean and sample standard deviation over independent paths."""
    mean: np.ndarray
    std: np.ndarray
    num_paths: int

    @property
    def steps(self):
        return np.arange(1, self.mean.size + 1)


def simulate_walk(p0, steps, rng) -> WalkPath:
    """Each step moves the price up or down by one unit with probability 0.5."""
    if steps < 1:
        raise DomainException("steps", f"a walk needs at least one step, got {steps}",
                              value=steps)
    increments = 2 * rng.integers(0, 2, size=steps) - 1
    return WalkPath(float(p0), p0 + np.cumsum(increments))


def _simulate_paths(args):
    p0, steps, master_seed, indices = args
    return np.stack([
        simulate_walk(p0, steps, np.random.default_rng(derive_seed(master_seed, "path", i))).values
        for i in indices
    ])


def ensemble_stats(p0, steps, num_paths, master_seed, workers=1) -> EnsembleStats:
    """
    Mean and sample standard deviation at every step over num_paths walks,
    path i seeded from (master_seed, i).
    """
    if num_paths < 2:
        raise DomainException("num_paths", f"an ensemble needs at least 2 paths, got {num_paths}",
                              value=num_paths)
    indices = list(range(num_paths))
    if workers <= 1:
        paths = _simulate_paths((p0, steps, master_seed, indices))
    else:
        size = -(-num_paths // workers)
        chunks = [indices[i:i + size] for i in range(0, num_paths, size)]
        with ProcessPoolExecutor(max_workers=workers) as executor:
            # executor.map keeps chunk order, so rows stay in path order
            paths = np.vstack(list(executor.map(
                _simulate_paths, [(p0, steps, master_seed, chunk) for chunk in chunks])))
    logger.info("Simulated %s walks of %s steps", num_paths, steps)
    return EnsembleStats(paths.mean(axis=0), paths.std(axis=0, ddof=1), num_paths)

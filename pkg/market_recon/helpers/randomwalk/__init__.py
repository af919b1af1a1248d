from .walk_helper import WalkPath, EnsembleStats, simulate_walk, ensemble_stats

__all__ = ['WalkPath', 'EnsembleStats', 'simulate_walk', 'ensemble_stats']

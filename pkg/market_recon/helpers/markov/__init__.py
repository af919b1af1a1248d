from .transition_helper import (ConditionalDistribution, TransitionModel, count_transitions,
                                build_model, conditional_distribution, inverse_cdf_indices,
                                sample_next, transition_matrix, export_rows)

__all__ = ['ConditionalDistribution', 'TransitionModel', 'count_transitions', 'build_model',
           'conditional_distribution', 'inverse_cdf_indices', 'sample_next',
           'transition_matrix', 'export_rows']

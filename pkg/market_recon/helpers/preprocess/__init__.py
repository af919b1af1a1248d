from .preprocess_helper import (TrendModel, ReturnSeries, fit_polynomial_trend, detrend,
                                restore_trend, rescale, log_returns)

__all__ = ['TrendModel', 'ReturnSeries', 'fit_polynomial_trend', 'detrend',
           'restore_trend', 'rescale', 'log_returns']

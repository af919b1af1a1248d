from .stylized_helper import (MomentTable, ChiCurve, CorrelationCurve, StylizedReport,
                              sliding_volatility, accumulated_volatility, max_return, moments,
                              scaling_exponent, autocorrelation, return_dynamics, stylized_report)

__all__ = ['MomentTable', 'ChiCurve', 'CorrelationCurve', 'StylizedReport',
           'sliding_volatility', 'accumulated_volatility', 'max_return', 'moments',
           'scaling_exponent', 'autocorrelation', 'return_dynamics', 'stylized_report']

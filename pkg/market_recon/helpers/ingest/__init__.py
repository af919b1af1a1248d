from .price_helper import (PriceSeries, PriceCsvParser, parse_price_csv, load_price_csv,
                           validate_series, serialize_price_csv)

__all__ = ['PriceSeries', 'PriceCsvParser', 'parse_price_csv', 'load_price_csv',
           'validate_series', 'serialize_price_csv']

from .coder_helper import (CodingScheme, SymbolSequence, encode, decode_symbol, decode_symbols,
                           reconstruct_prices, format_symbols, parse_symbols)

__all__ = ['CodingScheme', 'SymbolSequence', 'encode', 'decode_symbol', 'decode_symbols',
           'reconstruct_prices', 'format_symbols', 'parse_symbols']

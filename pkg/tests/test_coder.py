import math

import numpy as np
import pytest

from market_recon.exceptions import CodingException, DomainException
from market_recon.helpers.coder import (CodingScheme, SymbolSequence, encode, decode_symbol,
                                        decode_symbols, reconstruct_prices, format_symbols,
                                        parse_symbols)
from market_recon.helpers.preprocess import log_returns

from conftest import make_series, geometric_walk


@pytest.mark.parametrize("n, deviation, expected", [
    (3, 1.5, 1),
    (3, 1.0, 0),
    (3, -1.0, 0),
    (3, 0.0, 0),
    (5, 0.0, 0),
    (5, 0.5, 0),
    (5, 0.75, 1),
    (5, 1.0, 1),
    (5, -1.2, -2),
    (7, 0.9, 2),
])
def test_encode_bins(n, deviation, expected):
    scheme = CodingScheme(n, 0.0, 1.0)
    assert encode([deviation], scheme).tolist() == [expected]


def test_encode_is_relative_to_the_mean():
    scheme = CodingScheme(3, 0.01, 0.02)
    assert encode([0.01, 0.04, -0.02], scheme).tolist() == [0, 1, -1]


def test_boundary_exactly_at_sigma_takes_smaller_magnitude():
    sigma = 0.0137
    scheme = CodingScheme(3, 0.0, sigma)
    assert encode([sigma, -sigma], scheme).tolist() == [0, 0]


@pytest.mark.parametrize("n", [3, 5, 7])
def test_encode_is_odd_in_the_deviation(n):
    scheme = CodingScheme(n, 0.0, 1.0)
    rng = np.random.default_rng(n)
    deviations = np.concatenate((rng.normal(0.0, 1.5, size=5_000), scheme.boundaries()))
    symbols = encode(deviations, scheme).symbols
    np.testing.assert_array_equal(encode(-deviations, scheme).symbols, -symbols)


@pytest.mark.parametrize("n, symbol, expected", [
    (3, 0, 0.002),
    (3, 1, 0.002 + 0.01),
    (5, -2, 0.002 - 0.01),
    (5, 1, 0.002 + 0.005),
])
def test_decode_symbol(n, symbol, expected):
    assert decode_symbol(symbol, CodingScheme(n, 0.002, 0.01)) == pytest.approx(expected)


def test_centre_symbol_decodes_to_the_mean_exactly():
    scheme = CodingScheme(5, 0.00123456789, 0.0271828)
    assert decode_symbol(0, scheme) == scheme.mean_r


def test_decode_rejects_symbols_outside_the_alphabet():
    with pytest.raises(DomainException):
        decode_symbol(2, CodingScheme(3, 0.0, 1.0))


def test_decode_symbols_matches_decode_symbol():
    scheme = CodingScheme(5, 0.001, 0.02)
    sequence = SymbolSequence([-2, -1, 0, 1, 2], scheme)
    np.testing.assert_allclose(decode_symbols(sequence),
                               [decode_symbol(s, scheme) for s in sequence.tolist()])


def test_encode_and_decode_are_monotone():
    rng = np.random.default_rng(5)
    returns = np.sort(rng.normal(0.0, 0.02, size=100_000))
    scheme = CodingScheme(7, float(returns.mean()), float(returns.std()))
    symbols = encode(returns, scheme).symbols
    assert np.all(np.diff(symbols) >= 0)
    assert np.abs(symbols).max() <= scheme.beta
    assert np.all(np.diff(decode_symbols(SymbolSequence(scheme.symbols, scheme))) > 0)


@pytest.mark.parametrize("n, sigma", [(1, 1.0), (4, 1.0), (3, 0.0), (3, float("nan"))])
def test_degenerate_schemes_are_rejected(n, sigma):
    with pytest.raises(CodingException):
        CodingScheme(n, 0.0, sigma)


def test_scheme_from_returns_uses_population_sigma():
    scheme = CodingScheme.from_returns([0.01, -0.01, 0.01, -0.01], 3)
    assert scheme.mean_r == pytest.approx(0.0)
    assert scheme.sigma_r == pytest.approx(0.01)


def test_constant_returns_cannot_be_coded():
    with pytest.raises(CodingException):
        CodingScheme.from_returns([0.0, 0.0, 0.0], 3)


def test_boundaries_end_at_sigma():
    np.testing.assert_allclose(CodingScheme(7, 0.0, 0.3).boundaries(), [0.1, 0.2, 0.3])
    assert CodingScheme(7, 0.0, 0.3).boundaries()[-1] == 0.3


def test_symbol_sequence_rejects_out_of_alphabet_symbols():
    with pytest.raises(DomainException):
        SymbolSequence([0, 1, 3], CodingScheme(5, 0.0, 1.0))


def test_symbol_sequence_slices_keep_scheme(unit_scheme):
    sequence = SymbolSequence([0, 1, -1, 1], unit_scheme)
    head = sequence[:2]
    assert isinstance(head, SymbolSequence)
    assert head.tolist() == [0, 1]
    assert head.scheme is unit_scheme
    assert sequence[2] == -1


@pytest.mark.parametrize("returns, expected", [
    ([0.0, 0.0], [100.0, 100.0, 100.0]),
    ([math.log(1.01)], [100.0, 101.0]),
])
def test_reconstruct_prices(returns, expected):
    np.testing.assert_allclose(reconstruct_prices(100.0, returns), expected, rtol=1e-12)


def test_true_returns_reconstruct_the_series():
    prices = geometric_walk(1000, seed=21)
    returns = log_returns(make_series(prices))
    np.testing.assert_allclose(reconstruct_prices(prices[0], returns.values), prices, rtol=1e-9)


def test_reconstruct_requires_positive_anchor():
    with pytest.raises(DomainException):
        reconstruct_prices(0.0, [0.01])


def test_symbols_text_format(unit_scheme):
    sequence = SymbolSequence([0, -1, 1, 1], unit_scheme)
    assert format_symbols(sequence) == "0,-1,1,1"
    assert parse_symbols("0,-1,1,1\n", unit_scheme).tolist() == [0, -1, 1, 1]
    assert len(parse_symbols("", unit_scheme)) == 0


def test_parse_symbols_rejects_garbage(unit_scheme):
    with pytest.raises(DomainException):
        parse_symbols("0,x,1", unit_scheme)

"""Coding of returns into a symmetric symbol alphabet and back."""
from dataclasses import dataclass

import numpy as np

from market_recon.config import get_custom_logger
from market_recon.exceptions import (CodingException, DomainException, DEGENERATE_SCHEME,
                                     SYMBOL_OUT_OF_ALPHABET)
from market_recon.helpers.preprocess import ReturnSeries

logger = get_custom_logger("market_recon.coder")


@dataclass(frozen=True)
class CodingScheme:
    """Alphabet {-beta ... beta} with bins scaled by the training returns' spread."""
    alphabet_size_n: int
    mean_r: float
    sigma_r: float

    def __post_init__(self):
        if self.alphabet_size_n < 3 or self.alphabet_size_n % 2 == 0:
            raise CodingException(
                "alphabet_size_n",
                f"alphabet size must be odd and at least 3, got {self.alphabet_size_n}")
        if not np.isfinite(self.sigma_r) or self.sigma_r <= 0:
            raise CodingException("sigma_r", f"{DEGENERATE_SCHEME} (sigma={self.sigma_r})")
        if not np.isfinite(self.mean_r):
            raise CodingException("mean_r", f"mean return {self.mean_r} is not finite")

    @classmethod
    def from_returns(cls, returns, alphabet_size_n):
        """Scheme centred on the mean and scaled by the sigma of the given returns."""
        if not isinstance(returns, ReturnSeries):
            returns = ReturnSeries.from_values(returns)
        logger.debug("Scheme N=%s from %s returns: mean=%s sigma=%s",
                     alphabet_size_n, len(returns), returns.mean, returns.sigma)
        return cls(alphabet_size_n, returns.mean, returns.sigma)

    @property
    def beta(self) -> int:
        return (self.alphabet_size_n - 1) // 2

    @property
    def symbols(self) -> np.ndarray:
        return np.arange(-self.beta, self.beta + 1)

    def boundaries(self) -> np.ndarray:
        """Bin edges k * sigma / beta for k = 1 ... beta; the outermost edge is sigma itself."""
        edges = self.sigma_r * np.arange(1, self.beta + 1) / self.beta
        edges[-1] = self.sigma_r
        return edges

    def contains(self, symbol) -> bool:
        return -self.beta <= symbol <= self.beta


@dataclass(frozen=True, eq=False)
class SymbolSequence:
    symbols: np.ndarray
    scheme: CodingScheme

    def __post_init__(self):
        symbols = np.array(self.symbols, dtype=np.int64).reshape(-1)
        outside = np.abs(symbols) > self.scheme.beta
        if outside.any():
            raise DomainException(
                "symbols", f"{SYMBOL_OUT_OF_ALPHABET}: {int(symbols[np.argmax(outside)])}",
                value=int(symbols[np.argmax(outside)]))
        symbols.setflags(write=False)
        object.__setattr__(self, "symbols", symbols)

    def __len__(self):
        return self.symbols.size

    def __getitem__(self, item):
        if isinstance(item, slice):
            return SymbolSequence(self.symbols[item], self.scheme)
        return int(self.symbols[item])

    def tolist(self):
        return [int(s) for s in self.symbols]


def encode(returns, scheme: CodingScheme) -> SymbolSequence:
    """
    Map each return to the symbol whose bin holds its deviation from the mean.
    Bins are left-open and right-closed, so a deviation exactly on an edge
    takes the smaller magnitude.
    """
    values = returns.values if isinstance(returns, ReturnSeries) else np.asarray(returns, float)
    deviation = values - scheme.mean_r
    magnitude = np.searchsorted(scheme.boundaries(), np.abs(deviation), side="left")
    return SymbolSequence(np.sign(deviation).astype(np.int64) * magnitude, scheme)


def decode_symbol(s, scheme: CodingScheme) -> float:
    """Representative return of a symbol: <r> + 2 sigma s / (N - 1)."""
    if int(s) != s or not scheme.contains(s):
        raise DomainException("symbol", f"{SYMBOL_OUT_OF_ALPHABET}: {s}", value=s)
    return scheme.mean_r + (2.0 * scheme.sigma_r / (scheme.alphabet_size_n - 1)) * int(s)


def decode_symbols(sequence: SymbolSequence) -> np.ndarray:
    scheme = sequence.scheme
    return scheme.mean_r + (2.0 * scheme.sigma_r / (scheme.alphabet_size_n - 1)) * sequence.symbols


def reconstruct_prices(p0, predicted_returns) -> np.ndarray:
    """Prices p*_i = p*_{i-1} e^{r*_i} starting from p0; the result includes p0."""
    if not np.isfinite(p0) or p0 <= 0:
        raise DomainException("p0", f"anchor price must be positive, got {p0}", value=p0)
    returns = np.asarray(predicted_returns, dtype=float)
    return np.concatenate(([float(p0)], p0 * np.exp(np.cumsum(returns))))


def format_symbols(sequence: SymbolSequence) -> str:
    """One line of comma-separated signed integers."""
    return ",".join(str(s) for s in sequence.tolist())


def parse_symbols(text, scheme: CodingScheme) -> SymbolSequence:
    text = text.strip()
    if not text:
        return SymbolSequence(np.zeros(0, dtype=np.int64), scheme)
    try:
        symbols = [int(part) for part in text.split(",")]
    except ValueError as e:
        raise DomainException("symbols", f"cannot read symbols: {e}") from e
    return SymbolSequence(symbols, scheme)

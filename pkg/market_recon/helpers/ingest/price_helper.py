"""Price CSV ingestion for market reconstruction."""
import os
import re
from dataclasses import dataclass
from datetime import date
from typing import Tuple

import numpy as np
import pandas as pd

from market_recon.config import get_custom_logger
from market_recon.exceptions import (PriceFormatException, PriceValidationException,
                                     InsufficientDataException, EXPECTED_COLUMNS_MISSING,
                                     INSUFFICIENT_DATA, NOT_UTF8, WRONG_FIELD_COUNT)
from market_recon.utils import read_json_file_data

logger = get_custom_logger("market_recon.ingest")

_FIELD_COUNT_LINE = re.compile(r"line (\d+)")

_LAYOUT = read_json_file_data(
    os.path.join(os.path.dirname(os.path.abspath(__file__)), "price_columns.json"))


@dataclass(frozen=True)
class PriceSeries:
    """Adjusted close prices indexed by trading day."""
    dates: Tuple[date, ...]
    prices: Tuple[float, ...]
    symbol_label: str = ""

    def __len__(self):
        return len(self.prices)

    def values(self) -> np.ndarray:
        return np.asarray(self.prices, dtype=float)


class PriceCsvParser:
    """Reads provider exports, keeping the date and adjusted close columns."""

    def __init__(self, symbol_label=""):
        self._symbol_label = symbol_label
        self._columns = _LAYOUT["columns"]
        self._date_column = _LAYOUT["date_column"]
        self._price_column = _LAYOUT["price_column"]
        self._date_format = _LAYOUT["date_format"]
        self._missing_tokens = set(_LAYOUT["missing_tokens"])
        self.skipped_rows = 0

    def _read_table(self, raw):
        expected = ",".join(self._columns)
        try:
            # header=None keeps pandas from turning an extra field into an index column
            table = pd.read_csv(raw, header=None, dtype=str, keep_default_na=False,
                                skip_blank_lines=False)
        except UnicodeDecodeError as e:
            raise PriceFormatException("encoding", f"{NOT_UTF8}: {e}") from e
        except pd.errors.EmptyDataError as e:
            raise PriceFormatException(
                "header", f"{EXPECTED_COLUMNS_MISSING} {expected}: {e}", line=1) from e
        except pd.errors.ParserError as e:
            found = _FIELD_COUNT_LINE.search(str(e))
            raise PriceFormatException(
                "row", f"{WRONG_FIELD_COUNT}: {e}",
                line=int(found.group(1)) if found else None) from e

        header = [str(c).strip() for c in table.iloc[0].fillna("")]
        if header != self._columns:
            raise PriceFormatException(
                "header",
                f"{EXPECTED_COLUMNS_MISSING} {expected}, got {','.join(header)}",
                line=1)
        table = table.iloc[1:].copy()
        table.columns = header
        # row index 0 is line 1, the header
        table.index = table.index + 1
        absent = table.isna()
        blank = absent.all(axis=1)
        short = absent.any(axis=1) & ~blank
        if short.any():
            line = int(short.idxmax())
            raise PriceFormatException(
                "row", f"{WRONG_FIELD_COUNT}: expected {len(header)} fields", line=line)
        table = table[~blank]
        return table[~(table == "").all(axis=1)]

    def _column_error(self, table, mask, column, what):
        line = int(mask.idxmax())
        value = table.at[line, column]
        raise PriceFormatException(column, f"{what} '{value}'", line=line)

    def parse(self, raw) -> PriceSeries:
        """Parse a header-bearing CSV text stream into a sorted, validated series."""
        table = self._read_table(raw)

        price_text = table[self._price_column].str.strip()
        missing = price_text.str.lower().isin(self._missing_tokens)
        self.skipped_rows = int(missing.sum())
        if self.skipped_rows:
            logger.warning("Skipped %s rows with a missing %s",
                           self.skipped_rows, self._price_column)
        table = table[~missing]

        prices = pd.to_numeric(table[self._price_column].str.strip(), errors="coerce")
        if prices.isna().any():
            self._column_error(table, prices.isna(), self._price_column, "non-numeric price")

        dates = pd.to_datetime(table[self._date_column].str.strip(),
                               format=self._date_format, errors="coerce")
        if dates.isna().any():
            self._column_error(table, dates.isna(), self._date_column, "malformed date")

        if len(table) < 2:
            raise InsufficientDataException(
                "prices", f"{INSUFFICIENT_DATA}: usable price rows",
                required=2, available=len(table))

        frame = pd.DataFrame({"date": dates, "price": prices}).sort_values(
            "date", kind="stable")
        series = PriceSeries(
            dates=tuple(d.date() for d in frame["date"]),
            prices=tuple(float(p) for p in frame["price"]),
            symbol_label=self._symbol_label,
        )
        logger.info("Parsed %s prices for '%s'", len(series), self._symbol_label)
        return validate_series(series)


def parse_price_csv(raw, symbol_label="") -> PriceSeries:
    """Parse a price CSV stream (Date ... Adj Close ... Volume)."""
    return PriceCsvParser(symbol_label).parse(raw)


def load_price_csv(path) -> PriceSeries:
    """Read a price CSV from disk, labelling the series with the file stem."""
    label = os.path.splitext(os.path.basename(path))[0]
    logger.info("Loading prices from %s", path)
    with open(path, encoding="utf-8", newline="") as f:
        return parse_price_csv(f, symbol_label=label)


def validate_series(series: PriceSeries) -> PriceSeries:
    """Return the series unchanged if every PriceSeries invariant holds."""
    if len(series.dates) != len(series.prices):
        raise PriceValidationException(
            "prices", f"{len(series.dates)} dates but {len(series.prices)} prices")
    if len(series.prices) < 2:
        raise InsufficientDataException(
            "prices", INSUFFICIENT_DATA, required=2, available=len(series.prices))

    prices = series.values()
    bad = ~np.isfinite(prices) | (prices <= 0)
    if bad.any():
        row = int(np.argmax(bad))
        raise PriceValidationException(
            "prices", f"row {row}: price {prices[row]} is not a positive finite number",
            row=row)

    days = np.asarray(series.dates, dtype="datetime64[D]")
    steps = np.diff(days).astype(int)
    if (steps == 0).any():
        row = int(np.argmax(steps == 0)) + 1
        raise PriceValidationException(
            "dates", f"duplicate date {series.dates[row].isoformat()}", row=row)
    if (steps < 0).any():
        row = int(np.argmax(steps < 0)) + 1
        raise PriceValidationException(
            "dates", f"date {series.dates[row].isoformat()} out of order", row=row)
    return series


def serialize_price_csv(series: PriceSeries) -> str:
    """Write a series back out in the provider layout; OHLC all carry the adjusted close."""
    columns = _LAYOUT["columns"]
    frame = pd.DataFrame({column: list(series.prices) for column in columns[1:-1]})
    frame.insert(0, columns[0], [d.strftime(_LAYOUT["date_format"]) for d in series.dates])
    frame[columns[-1]] = 0
    return frame.to_csv(index=False, lineterminator="\n")

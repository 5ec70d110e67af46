"""Loading and checking per-asset OHLCV histories.

Input files follow the Kaggle "Cryptocurrency Historical Prices" layout::

    SNo,Name,Symbol,Date,High,Low,Open,Close,Volume,Marketcap

Only ``Date``, ``Close`` and ``Volume`` are required. The optional price and
market-cap columns are kept when they parse and silently dropped otherwise.
"""

from __future__ import annotations

import csv
import io
import math
from dataclasses import dataclass, field, replace
from datetime import date
from pathlib import Path
from typing import IO, Iterable, Sequence, Union

from .errors import (
    EmptyRangeError,
    RowError,
    SchemaError,
    UnknownSymbolError,
    ValidationError,
)

__all__ = [
    "OhlcvRecord",
    "OhlcvSeries",
    "AlignmentReport",
    "KAGGLE_NAMES",
    "parse_csv",
    "load_csv",
    "to_csv",
    "filter_date_range",
    "check_alignment",
    "find_symbol_file",
]

RawInput = Union[bytes, str, IO[bytes], IO[str]]

REQUIRED_COLUMNS = ("Date", "Close", "Volume")

# Kaggle file stems (coin_<Name>.csv) for the default asset list.
KAGGLE_NAMES = {
    "ADA": "Cardano",
    "BNB": "BinanceCoin",
    "BTC": "Bitcoin",
    "DOGE": "Dogecoin",
    "ETH": "Ethereum",
    "LINK": "ChainLink",
    "LTC": "Litecoin",
    "XLM": "Stellar",
    "XRP": "XRP",
}


@dataclass(frozen=True)
class OhlcvRecord:
    """One daily observation. Prices and volume are in USD."""

    date: date
    close: float
    volume: float
    open: float | None = None
    high: float | None = None
    low: float | None = None
    market_cap: float | None = None

    def __post_init__(self) -> None:
        if not self.close > 0:
            raise ValueError(f"close must be positive, got {self.close!r}")
        if not self.volume >= 0:
            raise ValueError(f"volume must be nonnegative, got {self.volume!r}")
        if None not in (self.open, self.high, self.low):
            if self.high < max(self.open, self.close):
                raise ValueError("high is below open/close")
            if self.low > min(self.open, self.close):
                raise ValueError("low is above open/close")


@dataclass(frozen=True)
class OhlcvSeries:
    symbol: str
    name: str
    records: tuple[OhlcvRecord, ...] = field(default_factory=tuple)

    def __post_init__(self) -> None:
        object.__setattr__(self, "records", tuple(self.records))
        for prev, cur in zip(self.records, self.records[1:]):
            if cur.date <= prev.date:
                raise ValidationError(
                    f"{self.symbol}: dates not strictly increasing at {cur.date}"
                )

    def __len__(self) -> int:
        return len(self.records)

    @property
    def dates(self) -> list[date]:
        return [r.date for r in self.records]

    @property
    def closes(self) -> list[float]:
        return [r.close for r in self.records]

    @property
    def volumes(self) -> list[float]:
        return [r.volume for r in self.records]


@dataclass(frozen=True)
class AlignmentReport:
    aligned: bool
    n_union_dates: int
    missing: dict[str, list[date]]

    def summary(self) -> str:
        if self.aligned:
            return f"aligned: {len(self.missing)} series share {self.n_union_dates} dates"
        lines = [f"NOT aligned over {self.n_union_dates} union dates"]
        for sym, gaps in self.missing.items():
            if gaps:
                shown = ", ".join(d.isoformat() for d in gaps[:5])
                more = f" (+{len(gaps) - 5} more)" if len(gaps) > 5 else ""
                lines.append(f"  {sym}: {len(gaps)} missing: {shown}{more}")
        return "\n".join(lines)


def _read_text(raw: RawInput) -> str:
    if isinstance(raw, bytes):
        return raw.decode("utf-8-sig")
    if isinstance(raw, str):
        return raw
    data = raw.read()
    if isinstance(data, bytes):
        return data.decode("utf-8-sig")
    return data


def _parse_date(text: str) -> date:
    # Kaggle stamps every row with a "23:59:59" suffix
    return date.fromisoformat(text.strip().replace("T", " ").split(" ")[0])


def _parse_float(text: str) -> float:
    value = float(text)
    if not math.isfinite(value):
        raise ValueError(f"non-finite number {text!r}")
    return value


def _optional_float(row: dict[str, str], column: str | None) -> float | None:
    if column is None:
        return None
    try:
        return _parse_float(row[column])
    except (TypeError, ValueError):
        return None


def parse_csv(raw: RawInput, symbol: str | None = None) -> OhlcvSeries:
    """Parse one asset's CSV into a date-sorted series.

    ``symbol`` is a fallback: a ``Symbol`` column in the file takes
    precedence. Row numbers in errors count data rows from 1.

    Raises:
        SchemaError: a required column is missing, or no symbol is available.
        RowError: a date or required number does not parse, or a record
            violates the price invariants.
        ValidationError: the same date appears twice.
    """
    reader = csv.DictReader(io.StringIO(_read_text(raw)))
    header = {name.strip().lower(): name for name in (reader.fieldnames or [])}
    for col in REQUIRED_COLUMNS:
        if col.lower() not in header:
            raise SchemaError(col)

    def col(name: str) -> str | None:
        return header.get(name.lower())

    date_col, close_col, vol_col = col("Date"), col("Close"), col("Volume")
    sym_col, name_col = col("Symbol"), col("Name")

    records: list[OhlcvRecord] = []
    file_symbol = file_name = None
    for i, row in enumerate(reader, start=1):
        try:
            day = _parse_date(row[date_col])
            close = _parse_float(row[close_col])
            volume = _parse_float(row[vol_col])
        except (TypeError, ValueError) as exc:
            raise RowError(i, f"unparseable value ({exc})", symbol) from None
        try:
            rec = OhlcvRecord(
                date=day,
                close=close,
                volume=volume,
                open=_optional_float(row, col("Open")),
                high=_optional_float(row, col("High")),
                low=_optional_float(row, col("Low")),
                market_cap=_optional_float(row, col("Marketcap")),
            )
        except ValueError as exc:
            raise RowError(i, str(exc), symbol) from None
        records.append(rec)
        if file_symbol is None and sym_col and row.get(sym_col):
            file_symbol = row[sym_col].strip()
        if file_name is None and name_col and row.get(name_col):
            file_name = row[name_col].strip()

    sym = file_symbol or symbol
    if not sym:
        raise SchemaError("Symbol", "no Symbol column and no symbol given")

    records.sort(key=lambda r: r.date)
    for prev, cur in zip(records, records[1:]):
        if cur.date == prev.date:
            raise ValidationError(f"{sym}: duplicate date {cur.date.isoformat()}")
    return OhlcvSeries(symbol=sym, name=file_name or sym, records=tuple(records))


def load_csv(path: str | Path, symbol: str | None = None) -> OhlcvSeries:
    with open(path, "rb") as fh:
        return parse_csv(fh, symbol)


def _fmt(value: float | None) -> str:
    return "" if value is None else repr(float(value))


def to_csv(series: OhlcvSeries) -> str:
    """Serialize in the Kaggle column layout (lossless for floats)."""
    buf = io.StringIO()
    writer = csv.writer(buf, lineterminator="\n")
    writer.writerow(
        ["SNo", "Name", "Symbol", "Date", "High", "Low", "Open", "Close", "Volume", "Marketcap"]
    )
    for i, r in enumerate(series.records, start=1):
        writer.writerow(
            [
                i,
                series.name,
                series.symbol,
                f"{r.date.isoformat()} 23:59:59",
                _fmt(r.high),
                _fmt(r.low),
                _fmt(r.open),
                _fmt(r.close),
                _fmt(r.volume),
                _fmt(r.market_cap),
            ]
        )
    return buf.getvalue()


def filter_date_range(series: OhlcvSeries, start: date, end: date) -> OhlcvSeries:
    """Keep records with ``start <= date <= end``."""
    if start > end:
        raise ValueError(f"start {start} is after end {end}")
    kept = tuple(r for r in series.records if start <= r.date <= end)
    if not kept:
        raise EmptyRangeError(series.symbol, start, end)
    return replace(series, records=kept)


def check_alignment(series_set: Sequence[OhlcvSeries]) -> AlignmentReport:
    """Report, per series, the dates it lacks relative to the union of all dates."""
    if not series_set:
        raise ValueError("check_alignment needs at least one series")
    date_sets = {s.symbol: set(s.dates) for s in series_set}
    union = set().union(*date_sets.values())
    missing = {sym: sorted(union - ds) for sym, ds in date_sets.items()}
    aligned = not any(missing.values())
    return AlignmentReport(aligned=aligned, n_union_dates=len(union), missing=missing)


def _peek_symbol(path: Path) -> str | None:
    with open(path, newline="", encoding="utf-8-sig") as fh:
        reader = csv.DictReader(fh)
        header = {n.strip().lower(): n for n in (reader.fieldnames or [])}
        if "symbol" not in header:
            return None
        for row in reader:
            value = (row.get(header["symbol"]) or "").strip()
            if value:
                return value
    return None


def find_symbol_file(
    data_dir: str | Path,
    symbol: str,
    files: dict[str, str] | None = None,
    candidates: Iterable[Path] | None = None,
) -> Path:
    """Locate the CSV holding ``symbol``.

    Lookup order: an explicit ``files`` mapping, ``<SYMBOL>.csv``,
    ``coin_<Name>.csv`` for the known Kaggle names, then any CSV whose
    ``Symbol`` column matches.
    """
    data_dir = Path(data_dir)
    if files and symbol in files:
        path = data_dir / files[symbol]
        if path.is_file():
            return path
        raise UnknownSymbolError(symbol, data_dir)
    direct = [data_dir / f"{symbol}.csv"]
    if symbol in KAGGLE_NAMES:
        direct.append(data_dir / f"coin_{KAGGLE_NAMES[symbol]}.csv")
    for path in direct:
        if path.is_file():
            return path
    pool = candidates if candidates is not None else sorted(data_dir.glob("*.csv"))
    for path in pool:
        if _peek_symbol(path) == symbol:
            return path
    raise UnknownSymbolError(symbol, data_dir)

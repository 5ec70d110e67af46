"""Exception hierarchy.

Errors fall into three families that the command line maps to distinct exit
codes: configuration problems, data problems, and degenerate numerics.
"""

from __future__ import annotations


class CryptoMcdaError(Exception):
    """Base class for every error raised by this package."""

    #: pipeline stage the error belongs to; the CLI prints it
    stage = "unknown"


class ConfigError(CryptoMcdaError, ValueError):
    stage = "config"


class ContractError(CryptoMcdaError, ValueError):
    """A caller broke a precondition (shapes, stages, mismatched sets)."""

    stage = "contract"


# -- data ---------------------------------------------------------------------


class DataError(CryptoMcdaError):
    stage = "ingest"


class SchemaError(DataError):
    def __init__(self, column: str, detail: str = "") -> None:
        self.column = column
        msg = f"missing required column {column!r}"
        if detail:
            msg = f"{msg} ({detail})"
        super().__init__(msg)


class RowError(DataError):
    def __init__(self, row: int, detail: str, symbol: str | None = None) -> None:
        self.row = row
        self.symbol = symbol
        where = f"{symbol}: " if symbol else ""
        super().__init__(f"{where}row {row}: {detail}")


class ValidationError(DataError):
    pass


class EmptyRangeError(DataError):
    def __init__(self, symbol: str, start, end) -> None:
        self.symbol = symbol
        super().__init__(f"{symbol}: no records between {start} and {end}")


class UnknownSymbolError(DataError):
    def __init__(self, symbol: str, data_dir) -> None:
        self.symbol = symbol
        super().__init__(f"no data file found for symbol {symbol!r} in {data_dir}")


class InsufficientDataError(DataError):
    stage = "features"

    def __init__(self, detail: str, have: int, need: int) -> None:
        self.have = have
        self.need = need
        super().__init__(f"{detail}: have {have}, need at least {need}")


# -- numerics -----------------------------------------------------------------


class MathError(CryptoMcdaError):
    """Input is well formed but the requested quantity is undefined."""

    stage = "math"


class DegeneratePriceError(MathError):
    stage = "features"


class TransformError(MathError):
    stage = "decision"

    def __init__(self, alternative: str, criterion: str, value: float) -> None:
        self.alternative = alternative
        self.criterion = criterion
        self.value = value
        super().__init__(
            f"cannot transform minimize criterion {criterion!r} for {alternative!r}: "
            f"value {value!r} is not strictly positive"
        )


class NormalizationError(MathError):
    stage = "decision"

    def __init__(self, criterion: str) -> None:
        self.criterion = criterion
        super().__init__(f"criterion {criterion!r} is an all-zero column")


class DegenerateWeightsError(MathError):
    stage = "weighting"


class EntropyDomainError(MathError):
    stage = "weighting"


class CorrelationUndefinedError(MathError):
    stage = "weighting"

    def __init__(self, criterion: str) -> None:
        self.criterion = criterion
        super().__init__(
            f"criterion {criterion!r} is constant; Pearson correlation is undefined"
        )


class DegenerateRankingError(MathError):
    stage = "topsis"

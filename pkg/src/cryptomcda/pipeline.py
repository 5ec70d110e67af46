"""End-to-end experiment: ingest, features per window length, weights, TOPSIS.

Every numeric artifact written here is a pure function of the configuration
and the input bytes: no timestamps, fixed ordering, fixed float formatting.
"""

from __future__ import annotations

import csv
import io
import json
import logging
from dataclasses import asdict, dataclass, field
from datetime import date
from pathlib import Path
from typing import Any

import numpy as np

from . import decision, features, ingest, topsis, weighting
from .decision import DecisionMatrix, Stage, format_float
from .errors import ConfigError, ContractError, DataError
from .features import CriteriaRow, WindowSpec
from .topsis import AgreementReport, TopsisResult
from .weighting import WeightSet

__all__ = [
    "DEFAULT_SYMBOLS",
    "RunConfig",
    "WindowResult",
    "RunReport",
    "load_series",
    "run",
    "write_outputs",
    "emit_plot_data",
]

log = logging.getLogger(__name__)

# stablecoins are excluded by construction of this list
DEFAULT_SYMBOLS = ("ADA", "BNB", "BTC", "DOGE", "ETH", "LINK", "LTC", "XLM", "XRP")
FORMATS = ("csv", "json", "both")
CRITIC_CONSTANT = ("error", "drop")


@dataclass
class RunConfig:
    data_dir: Path | None = None
    symbols: list[str] = field(default_factory=lambda: list(DEFAULT_SYMBOLS))
    start_date: date = date(2018, 10, 9)
    end_date: date = date(2021, 7, 6)
    window_lengths: list[int] = field(default_factory=lambda: [7, 15])
    stride: int = 1
    ddof: int = 1
    min_transform: str = "reciprocal"
    min_transform_epsilon: float | None = None
    trend_orientation: str = "close-on-volume"
    critic_constant_column: str = "error"
    output_dir: Path = Path("out")
    format: str = "both"
    #: explicit symbol -> file name (relative to data_dir) overrides
    files: dict[str, str] = field(default_factory=dict)

    def __post_init__(self) -> None:
        if self.data_dir is not None:
            self.data_dir = Path(self.data_dir)
        self.output_dir = Path(self.output_dir)
        if isinstance(self.start_date, str):
            self.start_date = _parse_config_date("start_date", self.start_date)
        if isinstance(self.end_date, str):
            self.end_date = _parse_config_date("end_date", self.end_date)
        self.symbols = list(self.symbols)
        self.window_lengths = [int(w) for w in self.window_lengths]

    def validate(self) -> None:
        if self.data_dir is None:
            raise ConfigError("data_dir is required")
        if not self.symbols:
            raise ConfigError("at least one symbol is required")
        if len(set(self.symbols)) != len(self.symbols):
            raise ConfigError("duplicate symbols in configuration")
        if not self.window_lengths:
            raise ConfigError("window_lengths must be nonempty")
        if any(w < 2 for w in self.window_lengths):
            raise ConfigError(f"every window length must be >= 2: {self.window_lengths}")
        if len(set(self.window_lengths)) != len(self.window_lengths):
            raise ConfigError("duplicate window lengths")
        if self.stride < 1:
            raise ConfigError("stride must be >= 1")
        if self.start_date > self.end_date:
            raise ConfigError(f"start_date {self.start_date} is after end_date {self.end_date}")
        if self.ddof not in (0, 1):
            raise ConfigError(f"ddof must be 0 or 1, got {self.ddof}")
        if self.min_transform not in decision.MIN_TRANSFORMS:
            raise ConfigError(f"min_transform must be one of {decision.MIN_TRANSFORMS}")
        if self.min_transform_epsilon is not None and not self.min_transform_epsilon > 0:
            raise ConfigError("min_transform_epsilon must be positive")
        if self.trend_orientation not in features.ORIENTATIONS:
            raise ConfigError(f"trend_orientation must be one of {features.ORIENTATIONS}")
        if self.critic_constant_column not in CRITIC_CONSTANT:
            raise ConfigError(f"critic_constant_column must be one of {CRITIC_CONSTANT}")
        if self.format not in FORMATS:
            raise ConfigError(f"format must be one of {FORMATS}")

    def to_dict(self) -> dict[str, Any]:
        out = asdict(self)
        out["data_dir"] = None if self.data_dir is None else str(self.data_dir)
        out["output_dir"] = str(self.output_dir)
        out["start_date"] = self.start_date.isoformat()
        out["end_date"] = self.end_date.isoformat()
        return out


def _parse_config_date(name: str, text: str) -> date:
    try:
        return date.fromisoformat(text)
    except ValueError:
        raise ConfigError(f"{name}: expected YYYY-MM-DD, got {text!r}") from None


@dataclass
class WindowResult:
    length: int
    rows: list[CriteriaRow]
    raw: DecisionMatrix
    transformed: DecisionMatrix
    normalized: DecisionMatrix
    weights: WeightSet
    rankings: dict[str, TopsisResult]
    agreement: AgreementReport

    def matrices(self) -> dict[str, DecisionMatrix]:
        return {"raw": self.raw, "transformed": self.transformed, "normalized": self.normalized}


@dataclass
class RunReport:
    config: RunConfig
    alignment: ingest.AlignmentReport
    windows: dict[int, WindowResult]
    flags: list[str] = field(default_factory=list)

    def window_stability(self) -> dict[str, dict[str, Any]]:
        """Per method: top-2 sets per window and how many members differ overall."""
        out: dict[str, dict[str, Any]] = {}
        for method in weighting.METHODS:
            tops = {
                w: sorted(res.rankings[method].top(2))
                for w, res in self.windows.items()
                if method in res.rankings
            }
            sets = [set(t) for t in tops.values()]
            diff = len(set.union(*sets) - set.intersection(*sets)) if sets else 0
            out[method] = {"top2": {str(w): t for w, t in tops.items()}, "differing": diff}
        return out

    def to_dict(self) -> dict[str, Any]:
        windows = {}
        for w, res in self.windows.items():
            windows[str(w)] = {
                "criteria_rows": [asdict(r) for r in res.rows],
                "matrices": {k: decision.matrix_to_dict(m) for k, m in res.matrices().items()},
                "weights": [
                    {
                        "method": v.method,
                        "weights": v.as_dict(),
                        "raw_scores": None
                        if v.raw_scores is None
                        else dict(zip(v.criteria, (float(s) for s in v.raw_scores))),
                        "flags": list(v.flags),
                    }
                    for v in res.weights.vectors
                ],
                "topsis": {m: r.records() for m, r in res.rankings.items()},
                "agreement": res.agreement.to_dict(),
            }
        return {
            "config": self.config.to_dict(),
            "alignment": {
                "aligned": self.alignment.aligned,
                "n_union_dates": self.alignment.n_union_dates,
                "missing": {
                    s: [d.isoformat() for d in ds] for s, ds in self.alignment.missing.items()
                },
            },
            "windows": windows,
            "window_stability": self.window_stability(),
            "flags": list(self.flags),
        }


def load_series(config: RunConfig) -> list[ingest.OhlcvSeries]:
    """Read and date-filter every configured symbol."""
    out = []
    candidates = sorted(Path(config.data_dir).glob("*.csv"))
    for sym in config.symbols:
        path = ingest.find_symbol_file(config.data_dir, sym, config.files, candidates)
        series = ingest.load_csv(path, sym)
        if series.symbol != sym:
            raise DataError(f"{path.name}: Symbol column says {series.symbol!r}, expected {sym!r}")
        out.append(ingest.filter_date_range(series, config.start_date, config.end_date))
    return out


def _run_window(series: list[ingest.OhlcvSeries], length: int, config: RunConfig) -> WindowResult:
    spec = WindowSpec(length, config.stride)
    rows = [features.criteria_row(s, spec, config.ddof, config.trend_orientation) for s in series]
    raw = decision.assemble(rows)
    transformed = decision.transform_min_to_max(
        raw, config.min_transform, config.min_transform_epsilon
    )
    normalized = decision.normalize_vector_modulus(transformed)
    weights = weighting.compute_all(normalized, config.ddof, config.critic_constant_column)
    if weights.errors:
        method, exc = next(iter(weights.errors.items()))
        exc.args = (f"{method} weights: {exc}",)
        raise exc
    rankings = {v.method: topsis.topsis_rank(normalized, v) for v in weights.vectors}
    agreement = topsis.compare_rankings(list(rankings.values()), list(rankings))
    return WindowResult(length, rows, raw, transformed, normalized, weights, rankings, agreement)


def run(config: RunConfig, write: bool = True) -> RunReport:
    """Execute the experiment for every configured window length.

    Errors propagate with a ``window`` attribute set when they arise inside
    a window's computation.
    """
    config.validate()
    series = load_series(config)
    alignment = ingest.check_alignment(series)
    flags: list[str] = []
    if not alignment.aligned:
        flags.append("input series are not date-aligned; see alignment.missing")
        log.warning(alignment.summary())

    windows: dict[int, WindowResult] = {}
    for length in config.window_lengths:
        try:
            result = _run_window(series, length, config)
        except Exception as exc:
            exc.window = length  # type: ignore[attr-defined]
            raise
        for row in result.rows:
            if row.degenerate_fits:
                flags.append(
                    f"window {length}: {row.symbol} has {row.degenerate_fits} degenerate trend fits"
                )
        flags.extend(f"window {length}: {f}" for f in result.normalized.flags)
        for v in result.weights.vectors:
            flags.extend(f"window {length}: {f}" for f in v.flags)
        windows[length] = result

    report = RunReport(config=config, alignment=alignment, windows=windows, flags=flags)
    if write:
        write_outputs(report, config.output_dir)
    return report


# -- serialization ------------------------------------------------------------------


def _csv_text(header: list[str], rows: list[list[Any]]) -> str:
    buf = io.StringIO()
    writer = csv.writer(buf, lineterminator="\n")
    writer.writerow(header)
    writer.writerows(rows)
    return buf.getvalue()


def _write(path: Path, text: str) -> None:
    with open(path, "w", encoding="utf-8", newline="") as fh:
        fh.write(text)


def _json(obj: Any) -> str:
    return json.dumps(obj, indent=2) + "\n"


def _check_unit_norm(m: DecisionMatrix) -> None:
    norms = np.sqrt(np.sum(m.values**2, axis=0))
    if not np.allclose(norms, 1.0, rtol=0, atol=1e-9):
        raise ContractError(f"normalized matrix has column norms {norms}")


def _weight_rows(report: RunReport) -> list[list[Any]]:
    rows = []
    for w, res in report.windows.items():
        for v in res.weights.vectors:
            for j, crit in enumerate(v.criteria):
                raw = "" if v.raw_scores is None else format_float(v.raw_scores[j])
                rows.append([w, v.method, crit, format_float(v.weights[j]), raw])
    return rows


def _topsis_rows(report: RunReport) -> list[list[Any]]:
    rows = []
    for w, res in report.windows.items():
        for method, r in res.rankings.items():
            for rec in r.records():
                rows.append(
                    [
                        w,
                        method,
                        rec["symbol"],
                        format_float(rec["similarity"]),
                        rec["rank"],
                        format_float(rec["d_ideal"]),
                        format_float(rec["d_anti"]),
                    ]
                )
    return rows


def write_outputs(report: RunReport, out_dir: Path | str) -> list[Path]:
    """Write every export for ``report`` into ``out_dir``; returns the paths written."""
    out_dir = Path(out_dir)
    out_dir.mkdir(parents=True, exist_ok=True)
    fmt = report.config.format
    written: list[Path] = []

    def put(name: str, text: str) -> None:
        path = out_dir / name
        _write(path, text)
        written.append(path)

    for w, res in report.windows.items():
        _check_unit_norm(res.normalized)
        for stage, m in res.matrices().items():
            stem = f"matrix_{w}_{stage}"
            if fmt in ("csv", "both"):
                put(f"{stem}.csv", decision.matrix_to_csv(m))
                put(f"{stem}.meta.json", _json(decision.matrix_metadata(m)))
            if fmt in ("json", "both"):
                put(f"{stem}.json", _json(decision.matrix_to_dict(m)))

    weight_rows = _weight_rows(report)
    topsis_rows = _topsis_rows(report)
    if fmt in ("csv", "both"):
        put("weights.csv", _csv_text(["window", "method", "criterion", "weight", "raw_score"], weight_rows))
        put(
            "topsis.csv",
            _csv_text(
                ["window", "method", "symbol", "similarity", "rank", "d_ideal", "d_anti"], topsis_rows
            ),
        )
    if fmt in ("json", "both"):
        keys_w = ["window", "method", "criterion", "weight", "raw_score"]
        keys_t = ["window", "method", "symbol", "similarity", "rank", "d_ideal", "d_anti"]
        put("weights.json", _json([dict(zip(keys_w, r)) for r in weight_rows]))
        put("topsis.json", _json([dict(zip(keys_t, r)) for r in topsis_rows]))

    agreement = {
        "windows": {str(w): res.agreement.to_dict() for w, res in report.windows.items()},
        "window_stability": report.window_stability(),
    }
    put("agreement.json", _json(agreement))
    put("run_report.json", _json(report.to_dict()))
    written.extend(emit_plot_data(report, out_dir))
    return written


def emit_plot_data(report: RunReport, out_dir: Path | str) -> list[Path]:
    """Long-format weights and similarity tables for external plotting."""
    if not report.windows:
        raise ContractError("report has no windows")
    out_dir = Path(out_dir)
    out_dir.mkdir(parents=True, exist_ok=True)
    weights = [
        [w, v.method, crit, format_float(x)]
        for w, res in report.windows.items()
        for v in res.weights.vectors
        for crit, x in zip(v.criteria, v.weights)
    ]
    similarity = [
        [w, method, a, format_float(c)]
        for w, res in report.windows.items()
        for method, r in res.rankings.items()
        for a, c in zip(r.alternatives, r.similarity)
    ]
    wpath = out_dir / "plot_weights.csv"
    spath = out_dir / "plot_similarity.csv"
    _write(wpath, _csv_text(["window", "method", "criterion", "weight"], weights))
    _write(spath, _csv_text(["window", "method", "symbol", "similarity"], similarity))
    return [wpath, spath]

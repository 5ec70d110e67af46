"""Command line entry point.

Settings are resolved as defaults < JSON config file < ``CRYPTOMCDA_*``
environment variables < command line flags.

Exit codes: 0 success, 2 configuration error, 3 data error, 4 degenerate
numerics, 5 I/O error.
"""

from __future__ import annotations

import argparse
import json
import logging
import os
import sys
from pathlib import Path
from typing import Any, Mapping, Sequence

from . import decision, features, ingest
from .errors import ConfigError, ContractError, CryptoMcdaError, DataError, MathError
from .pipeline import CRITIC_CONSTANT, FORMATS, RunConfig, load_series, run

EXIT_OK, EXIT_CONFIG, EXIT_DATA, EXIT_MATH, EXIT_IO = 0, 2, 3, 4, 5
ENV_PREFIX = "CRYPTOMCDA_"

log = logging.getLogger("cryptomcda")


def _csv_list(text: str) -> list[str]:
    return [t.strip() for t in text.replace(" ", ",").split(",") if t.strip()]


def _windows(text: str) -> list[int]:
    try:
        return [int(t) for t in _csv_list(text)]
    except ValueError:
        raise ConfigError(f"window lengths must be integers: {text!r}") from None


def _float_or_none(text: str) -> float | None:
    return None if text.lower() in ("", "none", "off") else float(text)


# option name -> (parser from string, config field)
_SETTINGS: dict[str, tuple[Any, str]] = {
    "data_dir": (Path, "data_dir"),
    "window": (_windows, "window_lengths"),
    "symbols": (_csv_list, "symbols"),
    "start_date": (str, "start_date"),
    "end_date": (str, "end_date"),
    "stride": (int, "stride"),
    "ddof": (int, "ddof"),
    "min_transform": (str, "min_transform"),
    "min_transform_epsilon": (_float_or_none, "min_transform_epsilon"),
    "trend_orientation": (str, "trend_orientation"),
    "critic_constant_column": (str, "critic_constant_column"),
    "out": (Path, "output_dir"),
    "format": (str, "format"),
}


def load_config_file(path: str | Path) -> dict[str, Any]:
    try:
        with open(path, encoding="utf-8") as fh:
            data = json.load(fh)
    except OSError as exc:
        raise ConfigError(f"cannot read config file {path}: {exc}") from None
    except json.JSONDecodeError as exc:
        raise ConfigError(f"config file {path} is not valid JSON: {exc}") from None
    if not isinstance(data, dict):
        raise ConfigError("config file must hold a JSON object")
    known = set(RunConfig.__dataclass_fields__)
    unknown = set(data) - known
    if unknown:
        raise ConfigError(f"unknown config keys: {sorted(unknown)}")
    return data


def resolve_config(
    args: argparse.Namespace, environ: Mapping[str, str] | None = None
) -> RunConfig:
    environ = os.environ if environ is None else environ
    values: dict[str, Any] = {}
    config_path = args.config or environ.get(ENV_PREFIX + "CONFIG")
    if config_path:
        values.update(load_config_file(config_path))
    try:
        for name, (convert, target) in _SETTINGS.items():
            env_value = environ.get(ENV_PREFIX + name.upper())
            if env_value is not None:
                values[target] = convert(env_value)
        for name, (convert, target) in _SETTINGS.items():
            flag_value = getattr(args, name, None)
            if flag_value is not None:
                values[target] = convert(flag_value)
        config = RunConfig(**values)
    except (TypeError, ValueError) as exc:
        if isinstance(exc, ConfigError):
            raise
        raise ConfigError(str(exc)) from None
    config.validate()
    return config


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="cryptomcda",
        description="Rank crypto assets by TOPSIS under four objective weighting methods.",
    )
    parser.add_argument("-v", "--verbose", action="store_true")
    sub = parser.add_subparsers(dest="command", required=True)

    def common(p: argparse.ArgumentParser) -> None:
        p.add_argument("--data-dir", help="directory holding one CSV per asset")
        p.add_argument("--config", help="JSON config file")
        p.add_argument("--symbols", help="comma-separated tickers")
        p.add_argument("--start-date", help="YYYY-MM-DD, inclusive")
        p.add_argument("--end-date", help="YYYY-MM-DD, inclusive")

    p_run = sub.add_parser("run", help="run the full experiment")
    common(p_run)
    p_run.add_argument("--window", help="comma-separated window lengths, e.g. 7,15")
    p_run.add_argument("--stride", help="records between window starts (default 1)")
    p_run.add_argument("--ddof", choices=["0", "1"])
    p_run.add_argument("--min-transform", choices=list(decision.MIN_TRANSFORMS))
    p_run.add_argument("--min-transform-epsilon", help="floor for minimize values before 1/x")
    p_run.add_argument("--trend-orientation", choices=list(features.ORIENTATIONS))
    p_run.add_argument("--critic-constant-column", choices=list(CRITIC_CONSTANT))
    p_run.add_argument("--out", help="output directory")
    p_run.add_argument("--format", choices=list(FORMATS))

    p_val = sub.add_parser("validate", help="ingest and check date alignment only")
    common(p_val)
    return parser


def _cmd_run(config: RunConfig) -> int:
    report = run(config)
    for w, res in report.windows.items():
        print(f"window {w}: {res.normalized.shape[0]}x{res.normalized.shape[1]} matrix")
        for method, r in res.rankings.items():
            print(f"  {method:8s} " + " > ".join(r.ordered()))
        print(f"  consensus top-2: {sorted(res.agreement.consensus_top2)}")
    for flag in report.flags:
        print(f"flag: {flag}")
    print(f"outputs written to {config.output_dir}")
    return EXIT_OK


def _cmd_validate(config: RunConfig) -> int:
    series = load_series(config)
    for s in series:
        print(f"{s.symbol}: {len(s)} records {s.records[0].date} .. {s.records[-1].date}")
    print(ingest.check_alignment(series).summary())
    return EXIT_OK


def main(argv: Sequence[str] | None = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    logging.basicConfig(
        level=logging.INFO if args.verbose else logging.WARNING,
        format="%(levelname)s %(name)s: %(message)s",
    )
    try:
        config = resolve_config(args)
        if args.command == "run":
            return _cmd_run(config)
        return _cmd_validate(config)
    except CryptoMcdaError as exc:
        window = getattr(exc, "window", None)
        where = f" window={window}" if window is not None else ""
        print(f"error [{exc.stage}{where}] {exc}", file=sys.stderr)
        if isinstance(exc, ConfigError):
            return EXIT_CONFIG
        if isinstance(exc, (DataError, ContractError)):
            return EXIT_DATA
        if isinstance(exc, MathError):
            return EXIT_MATH
        return EXIT_DATA
    except OSError as exc:
        print(f"error [io] {exc}", file=sys.stderr)
        return EXIT_IO


if __name__ == "__main__":
    sys.exit(main())

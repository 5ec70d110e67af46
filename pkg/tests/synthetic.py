"""Deterministic Kaggle-shaped OHLCV files for tests."""

from datetime import date, timedelta

import numpy as np

from cryptomcda.ingest import KAGGLE_NAMES

# symbol -> (start price, daily drift, daily vol, mean daily USD volume)
PROFILES = {
    "ADA": (0.08, 0.0020, 0.055, 8e8),
    "BNB": (10.0, 0.0045, 0.050, 2e9),
    "BTC": (6500.0, 0.0030, 0.035, 2.5e10),
    "DOGE": (0.006, 0.0030, 0.080, 6e8),
    "ETH": (220.0, 0.0025, 0.045, 1e10),
    "LINK": (0.45, 0.0030, 0.060, 7e8),
    "LTC": (55.0, 0.0010, 0.050, 2e9),
    "XLM": (0.23, 0.0005, 0.055, 3e8),
    "XRP": (0.45, 0.0005, 0.055, 2e9),
}


def kaggle_csv(symbol, name, start, days, seed, profile=None):
    price0, drift, vol, volume = profile or PROFILES[symbol]
    rng = np.random.default_rng(seed)
    log_ret = rng.normal(drift, vol, size=days)
    close = price0 * np.exp(np.cumsum(log_ret))
    # traded volume rises with price, so the close-vs-volume slope is positive
    volumes = volume * (close / price0) * np.exp(rng.normal(0, 0.3, size=days))
    lines = ["SNo,Name,Symbol,Date,High,Low,Open,Close,Volume,Marketcap"]
    prev = price0
    for i in range(days):
        day = start + timedelta(days=i)
        o, c = prev, close[i]
        hi = max(o, c) * (1 + abs(rng.normal(0, 0.01)))
        lo = min(o, c) * (1 - abs(rng.normal(0, 0.01)))
        lines.append(
            f"{i + 1},{name},{symbol},{day.isoformat()} 23:59:59,"
            f"{float(hi)!r},{float(lo)!r},{float(o)!r},{float(c)!r},{float(volumes[i])!r},{float(c) * 1e8!r}"
        )
        prev = c
    return "\n".join(lines) + "\n"


def write_dataset(directory, symbols=None, start=date(2018, 9, 1), days=1065, seed=7):
    """One ``coin_<Name>.csv`` per symbol, covering the default date range."""
    symbols = symbols or list(PROFILES)
    for k, sym in enumerate(symbols):
        name = KAGGLE_NAMES.get(sym, sym)
        text = kaggle_csv(sym, name, start, days, seed + k)
        (directory / f"coin_{name}.csv").write_text(text)
    return directory

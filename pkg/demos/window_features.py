"""
Criteria from overlapping windows
=================================

Slide a 7-record window over a daily price history and extract the six
criteria: mean/deviation of window returns, mean/deviation of window volume,
and the mean slope and mean R^2 of a close-vs-volume line fit.
"""

from datetime import date, timedelta

import numpy as np

from cryptomcda import OhlcvRecord, OhlcvSeries, WindowSpec, criteria_row, enumerate_windows
from cryptomcda.features import window_stats

rng = np.random.default_rng(5)
days = 60
close = 100 * np.exp(np.cumsum(rng.normal(0.002, 0.03, days)))
volume = 1e7 * close / 100 * np.exp(rng.normal(0, 0.25, days))
series = OhlcvSeries(
    "DEMO",
    "Demo coin",
    tuple(
        OhlcvRecord(date(2021, 1, 1) + timedelta(days=i), float(c), float(v))
        for i, (c, v) in enumerate(zip(close, volume))
    ),
)

spec = WindowSpec(7)
windows = enumerate_windows(series, spec)
print(f"{len(series)} records -> {len(windows)} windows of {spec.length}")

###############################################################################
# The first few windows, one line each.

for w in windows[:3]:
    s = window_stats(w)
    print(
        f"{w[0].date}..{w[-1].date} return={s.window_return:+.4f} "
        f"volume={s.window_volume:.3e} slope={s.slope:.3e} R2={s.r_squared:.3f}"
    )

###############################################################################
# Aggregated criteria, with the sample (ddof=1) and population (ddof=0)
# deviations, and with the regression direction flipped.

for kwargs in ({}, {"ddof": 0}, {"orientation": "volume-on-close"}):
    row = criteria_row(series, spec, **kwargs)
    print(kwargs or "defaults", row)

"""
The full experiment
===================

Run ingest -> criteria for 7- and 15-day windows -> transform/normalize ->
four weightings -> TOPSIS -> agreement, and write every export.

Pass the directory holding the Kaggle ``coin_<Name>.csv`` files as the first
argument. Without it a synthetic stand-in dataset is generated so the script
runs anywhere; its rankings mean nothing.
"""

import sys
import tempfile
from datetime import date, timedelta
from pathlib import Path

import numpy as np

from cryptomcda import RunConfig, run
from cryptomcda.ingest import KAGGLE_NAMES


def synthetic(directory: Path) -> Path:
    rng = np.random.default_rng(0)
    start, days = date(2018, 9, 1), 1065
    for sym, name in KAGGLE_NAMES.items():
        p0 = rng.uniform(0.01, 5000)
        close = p0 * np.exp(np.cumsum(rng.normal(rng.uniform(0.001, 0.004), 0.04, days)))
        vol = rng.uniform(1e8, 1e10) * close / p0 * np.exp(rng.normal(0, 0.3, days))
        lines = ["SNo,Name,Symbol,Date,High,Low,Open,Close,Volume,Marketcap"]
        for i in range(days):
            d = (start + timedelta(days=i)).isoformat()
            c, v = float(close[i]), float(vol[i])
            lines.append(f"{i + 1},{name},{sym},{d} 23:59:59,{c},{c},{c},{c},{v},")
        (directory / f"coin_{name}.csv").write_text("\n".join(lines) + "\n")
    return directory


data_dir = Path(sys.argv[1]) if len(sys.argv) > 1 else synthetic(Path(tempfile.mkdtemp()))
out_dir = Path(tempfile.mkdtemp(prefix="cryptomcda-"))

report = run(RunConfig(data_dir=data_dir, output_dir=out_dir))

###############################################################################
# Rankings per window and method, and what the agreement report says.

for w, res in report.windows.items():
    print(f"--- window {w}")
    for method, r in res.rankings.items():
        print(f"{method:8s}", " > ".join(r.ordered()))
    for (a, b), rho in res.agreement.spearman.items():
        print(f"  rho({a}, {b}) = {rho:.3f}")
    print("  top-2 under every method:", sorted(res.agreement.consensus_top2))

###############################################################################
# Weight vectors for the 7-day window, then the files written.

for v in report.windows[7].weights.vectors:
    print(f"{v.method:8s}", " ".join(f"{c}={x:.3f}" for c, x in v.as_dict().items()))
print("window stability:", report.window_stability())
print("flags:", report.flags or "none")
print("outputs:", sorted(p.name for p in out_dir.iterdir()))

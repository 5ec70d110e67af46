import csv
import json
from datetime import date

import numpy as np
import pytest

from cryptomcda.errors import ConfigError, ContractError, TransformError, UnknownSymbolError
from cryptomcda.ingest import check_alignment, filter_date_range, parse_csv
from cryptomcda.pipeline import RunConfig, RunReport, emit_plot_data, load_series, run
from synthetic import kaggle_csv


def read_rows(path):
    with open(path, newline="") as fh:
        return list(csv.DictReader(fh))


def test_default_run_shape(synthetic_dir, tmp_path):
    report = run(RunConfig(data_dir=synthetic_dir, output_dir=tmp_path))
    assert sorted(report.windows) == [7, 15]
    for res in report.windows.values():
        for m in res.matrices().values():
            assert m.shape == (9, 6)
        assert len(res.weights.vectors) == 4
        assert list(res.rankings) == ["mean", "stddev", "entropy", "critic"]
        assert np.allclose(np.linalg.norm(res.normalized.values, axis=0), 1.0, atol=1e-9)
    assert len(read_rows(tmp_path / "weights.csv")) == 48
    assert len(read_rows(tmp_path / "topsis.csv")) == 72
    assert len(read_rows(tmp_path / "plot_weights.csv")) == 48
    assert len(read_rows(tmp_path / "plot_similarity.csv")) == 72
    for w in (7, 15):
        for stage in ("raw", "transformed", "normalized"):
            assert (tmp_path / f"matrix_{w}_{stage}.csv").exists()
            assert (tmp_path / f"matrix_{w}_{stage}.json").exists()
            meta = json.loads((tmp_path / f"matrix_{w}_{stage}.meta.json").read_text())
            assert meta["stage"] == stage
    agreement = json.loads((tmp_path / "agreement.json").read_text())
    assert set(agreement["windows"]) == {"7", "15"}
    full = json.loads((tmp_path / "run_report.json").read_text())
    assert full["config"]["window_lengths"] == [7, 15]


def test_single_window(synthetic_dir, tmp_path):
    report = run(RunConfig(data_dir=synthetic_dir, output_dir=tmp_path, window_lengths=[7]))
    assert list(report.windows) == [7]
    assert len(read_rows(tmp_path / "weights.csv")) == 24
    assert len(read_rows(tmp_path / "topsis.csv")) == 36
    assert not (tmp_path / "matrix_15_raw.csv").exists()


def test_json_only(synthetic_dir, tmp_path):
    run(RunConfig(data_dir=synthetic_dir, output_dir=tmp_path, window_lengths=[15], format="json"))
    assert not (tmp_path / "weights.csv").exists()
    rows = json.loads((tmp_path / "weights.json").read_text())
    assert len(rows) == 24 and rows[0]["method"] == "mean"


def test_unknown_symbol(synthetic_dir, tmp_path):
    cfg = RunConfig(data_dir=synthetic_dir, output_dir=tmp_path, symbols=["BTC", "NOPE"])
    with pytest.raises(UnknownSymbolError, match="NOPE"):
        run(cfg)


@pytest.mark.parametrize(
    "kwargs",
    [
        {"window_lengths": []},
        {"window_lengths": [1]},
        {"start_date": date(2022, 1, 1)},
        {"ddof": 2},
        {"format": "xml"},
        {"min_transform": "negate"},
        {"data_dir": None},
    ],
)
def test_config_validation(synthetic_dir, kwargs):
    cfg = RunConfig(**{"data_dir": synthetic_dir, **kwargs})
    with pytest.raises(ConfigError):
        cfg.validate()


def test_bad_config_date_string():
    with pytest.raises(ConfigError):
        RunConfig(start_date="10/09/2018")


def test_degenerate_math_surfaces_window(tmp_path):
    data = tmp_path / "data"
    data.mkdir()
    for k, sym in enumerate(["AAA", "BBB", "CCC"]):
        text = kaggle_csv(sym, sym, date(2021, 1, 1), 40, k, (1.0, 0.02, 0.01, 1e6))
        (data / f"{sym}.csv").write_text(text)
    flat = "Date,Close,Volume\n" + "".join(
        f"2021-01-{d:02d},5.0,{100 + d}\n" for d in range(1, 32)
    )
    (data / "FLAT.csv").write_text(flat)
    cfg = RunConfig(
        data_dir=data,
        output_dir=tmp_path / "out",
        symbols=["AAA", "BBB", "CCC", "FLAT"],
        start_date=date(2021, 1, 1),
        end_date=date(2021, 1, 31),
        window_lengths=[7],
    )
    with pytest.raises(TransformError) as info:
        run(cfg)
    assert info.value.alternative == "FLAT" and info.value.criterion == "sRV"
    assert info.value.window == 7
    # the epsilon policy lets the run through and records the substitution
    cfg.min_transform_epsilon = 1e-9
    report = run(cfg)
    assert any("epsilon substitution: sRV[FLAT]" in f for f in report.flags)


def test_alignment_flag(tmp_path):
    data = tmp_path / "data"
    data.mkdir()
    for k, sym in enumerate(["AAA", "BBB", "CCC"]):
        text = kaggle_csv(sym, sym, date(2021, 1, 1), 40, k, (1.0, 0.02, 0.01, 1e6))
        if sym == "CCC":
            lines = text.splitlines(keepends=True)
            text = "".join(lines[:10] + lines[11:])
        (data / f"{sym}.csv").write_text(text)
    cfg = RunConfig(
        data_dir=data,
        output_dir=tmp_path / "out",
        symbols=["AAA", "BBB", "CCC"],
        start_date=date(2021, 1, 1),
        end_date=date(2021, 2, 9),
        window_lengths=[7],
    )
    series = load_series(cfg)
    assert not check_alignment(series).aligned
    report = run(cfg)
    assert any("not date-aligned" in f for f in report.flags)


def test_emit_plot_data_requires_windows(synthetic_dir, tmp_path):
    report = run(RunConfig(data_dir=synthetic_dir, window_lengths=[7]), write=False)
    empty = RunReport(report.config, report.alignment, {})
    with pytest.raises(ContractError):
        emit_plot_data(empty, tmp_path)


def test_run_without_writing(synthetic_dir, tmp_path):
    out = tmp_path / "never"
    run(RunConfig(data_dir=synthetic_dir, output_dir=out, window_lengths=[7]), write=False)
    assert not out.exists()


def test_outputs_are_byte_deterministic(synthetic_dir, tmp_path):
    a, b = tmp_path / "a", tmp_path / "b"
    run(RunConfig(data_dir=synthetic_dir, output_dir=a))
    run(RunConfig(data_dir=synthetic_dir, output_dir=b))
    for name in ["weights.csv", "topsis.csv", "agreement.json", "plot_weights.csv", "matrix_7_normalized.csv"]:
        assert (a / name).read_bytes() == (b / name).read_bytes()


def test_series_filtered_to_default_range(synthetic_dir):
    series = load_series(RunConfig(data_dir=synthetic_dir))
    for s in series:
        assert s.dates[0] == date(2018, 10, 9) and s.dates[-1] == date(2021, 7, 6)

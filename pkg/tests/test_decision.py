import json

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from cryptomcda.decision import (
    PAPER_CRITERIA,
    CriterionSpec,
    DecisionMatrix,
    Sense,
    Stage,
    assemble,
    matrix_from_dict,
    matrix_to_csv,
    matrix_to_json,
    normalize_vector_modulus,
    transform_min_to_max,
)
from cryptomcda.errors import ContractError, NormalizationError, TransformError, ValidationError
from cryptomcda.features import CriteriaRow


def row(sym, base=1.0):
    return CriteriaRow(sym, 0.01 * base, 0.05 * base, 1e9 * base, 2e8 * base, 1e-7 * base, 0.3)


def mat(values, senses, stage=Stage.RAW, alts=None):
    values = np.asarray(values, dtype=float)
    alts = alts or [f"A{i}" for i in range(values.shape[0])]
    crits = [CriterionSpec(f"c{j}", s) for j, s in enumerate(senses)]
    return DecisionMatrix(tuple(alts), tuple(crits), values, stage)


MAX, MIN = Sense.MAXIMIZE, Sense.MINIMIZE


def test_assemble_nine_rows():
    syms = ["XRP", "ADA", "BTC", "BNB", "DOGE", "ETH", "LINK", "LTC", "XLM"]
    m = assemble([row(s, i + 1) for i, s in enumerate(syms)])
    assert m.shape == (9, 6)
    assert m.alternatives == tuple(sorted(syms))
    assert m.criterion_ids == ("xRV", "sRV", "xVV", "sVV", "xm", "xR2")
    assert m.senses == (MAX, MIN, MAX, MIN, MAX, MAX)
    assert m.stage is Stage.RAW
    assert m.column("xRV")[m.alternatives.index("XRP")] == pytest.approx(0.01)


def test_assemble_identical_rows():
    m = assemble([row("A"), row("B")])
    assert m.shape == (2, 6)
    assert np.array_equal(m.values[0], m.values[1])


def test_assemble_duplicate_symbol():
    with pytest.raises(ValidationError, match="BTC"):
        assemble([row("BTC"), row("ETH"), row("BTC")])


def test_reciprocal_transform():
    m = transform_min_to_max(mat([[2, 1], [4, 3]], [MIN, MAX]))
    assert m.values[:, 0].tolist() == [0.5, 0.25]
    assert m.values[:, 1].tolist() == [1, 3]
    assert m.senses == (MAX, MAX)
    assert m.stage is Stage.TRANSFORMED and m.transform == "reciprocal"


def test_transform_without_min_columns():
    raw = mat([[1, 2], [3, 4]], [MAX, MAX])
    m = transform_min_to_max(raw)
    assert np.array_equal(m.values, raw.values)
    assert m.stage is Stage.TRANSFORMED


def test_transform_zero_is_error():
    with pytest.raises(TransformError) as info:
        transform_min_to_max(mat([[1.0], [0.0]], [MIN]))
    assert info.value.alternative == "A1" and info.value.criterion == "c0"


def test_transform_epsilon_policy():
    m = transform_min_to_max(mat([[1.0], [0.0]], [MIN]), epsilon=1e-3)
    assert m.values[:, 0].tolist() == [1.0, 1000.0]
    assert any("epsilon" in f for f in m.flags)


def test_max_complement():
    m = transform_min_to_max(mat([[2.0], [5.0], [3.0]], [MIN]), method="max-complement")
    assert m.values[:, 0].tolist() == [3.0, 0.0, 2.0]


def test_transform_requires_raw():
    t = transform_min_to_max(mat([[1.0], [2.0]], [MAX]))
    with pytest.raises(ContractError):
        transform_min_to_max(t)


def test_normalize_345():
    m = normalize_vector_modulus(transform_min_to_max(mat([[3.0], [4.0]], [MAX])))
    assert m.values[:, 0] == pytest.approx([0.6, 0.8], abs=1e-15)
    assert m.stage is Stage.NORMALIZED


def test_normalize_uniform():
    m = normalize_vector_modulus(transform_min_to_max(mat([[1.0]] * 4, [MAX])))
    assert m.values[:, 0] == pytest.approx([0.5] * 4, abs=1e-15)


def test_single_alternative_disallowed():
    with pytest.raises(ContractError):
        mat([[5.0]], [MAX])


def test_normalize_zero_column():
    with pytest.raises(NormalizationError, match="c1"):
        normalize_vector_modulus(transform_min_to_max(mat([[1, 0], [2, 0]], [MAX, MAX])))


def test_normalize_flags_mixed_sign():
    m = normalize_vector_modulus(transform_min_to_max(mat([[1.0], [-2.0]], [MAX])))
    assert "mixed-sign column: c0" in m.flags


def test_normalize_requires_transformed():
    with pytest.raises(ContractError):
        normalize_vector_modulus(mat([[1.0], [2.0]], [MAX]))


def test_csv_and_json_export():
    m = assemble([row("B", 2), row("A", 1)])
    text = matrix_to_csv(m)
    lines = text.splitlines()
    assert lines[0] == "symbol,xRV,sRV,xVV,sVV,xm,xR2"
    assert lines[1] == "A,0.01,0.05,1e+09,200000000,1e-07,0.3"
    back = matrix_from_dict(json.loads(matrix_to_json(m)))
    assert back.alternatives == m.alternatives
    assert np.array_equal(back.values, m.values)
    assert back.senses == m.senses and back.stage is m.stage


def test_matrix_is_read_only():
    m = mat([[1.0], [2.0]], [MAX])
    with pytest.raises(ValueError):
        m.values[0, 0] = 5


positive_cols = st.lists(st.floats(1e-3, 1e3), min_size=2, max_size=10)


@settings(max_examples=100, deadline=None)
@given(positive_cols, st.floats(1e-3, 1e3))
def test_normalization_scale_invariant(col, c):
    a = normalize_vector_modulus(transform_min_to_max(mat([[x] for x in col], [MAX])))
    b = normalize_vector_modulus(transform_min_to_max(mat([[x * c] for x in col], [MAX])))
    assert np.allclose(a.values, b.values, rtol=0, atol=1e-9)
    assert np.linalg.norm(a.values[:, 0]) == pytest.approx(1.0, abs=1e-9)


@settings(max_examples=100, deadline=None)
@given(positive_cols)
def test_normalization_preserves_order(col):
    m = normalize_vector_modulus(transform_min_to_max(mat([[x] for x in col], [MAX])))
    out = m.values[:, 0]
    for i in range(len(col)):
        for k in range(len(col)):
            if col[i] < col[k]:
                assert out[i] <= out[k]
    assert out.min() >= 0 and out.max() <= 1


@settings(max_examples=100, deadline=None)
@given(positive_cols)
def test_reciprocal_reverses_order(col):
    m = transform_min_to_max(mat([[x] for x in col], [MIN]))
    out = m.values[:, 0]
    for i in range(len(col)):
        for k in range(len(col)):
            if col[i] < col[k]:
                assert out[i] > out[k]

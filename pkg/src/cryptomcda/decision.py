"""Decision matrices: assembly, cost-to-benefit transform, vector normalization."""

from __future__ import annotations

import csv
import io
import json
from dataclasses import dataclass, field, replace
from enum import Enum
from typing import Any, Sequence

import numpy as np

from .errors import ContractError, NormalizationError, TransformError, ValidationError
from .features import CriteriaRow

__all__ = [
    "Sense",
    "Stage",
    "CriterionSpec",
    "PAPER_CRITERIA",
    "MIN_TRANSFORMS",
    "DecisionMatrix",
    "assemble",
    "transform_min_to_max",
    "normalize_vector_modulus",
    "matrix_to_csv",
    "matrix_metadata",
    "matrix_to_dict",
    "matrix_to_json",
    "matrix_from_dict",
    "format_float",
]

MIN_TRANSFORMS = ("reciprocal", "max-complement")


class Sense(str, Enum):
    MAXIMIZE = "maximize"
    MINIMIZE = "minimize"


class Stage(str, Enum):
    RAW = "raw"
    TRANSFORMED = "transformed"
    NORMALIZED = "normalized"


@dataclass(frozen=True)
class CriterionSpec:
    id: str
    sense: Sense
    description: str = ""
    #: CriteriaRow attribute the raw value is read from
    source: str | None = None


PAPER_CRITERIA: tuple[CriterionSpec, ...] = (
    CriterionSpec("xRV", Sense.MAXIMIZE, "mean window return", "mean_return"),
    CriterionSpec("sRV", Sense.MINIMIZE, "window return deviation", "std_return"),
    CriterionSpec("xVV", Sense.MAXIMIZE, "mean window volume (USD)", "mean_volume"),
    CriterionSpec("sVV", Sense.MINIMIZE, "window volume deviation (USD)", "std_volume"),
    CriterionSpec("xm", Sense.MAXIMIZE, "mean close-vs-volume slope", "mean_slope"),
    CriterionSpec("xR2", Sense.MAXIMIZE, "mean R^2 of the close-vs-volume fit", "mean_r2"),
)


def format_float(value: float) -> str:
    """Fixed 9-significant-digit rendering used by every CSV export."""
    return format(float(value), ".9g")


@dataclass(frozen=True)
class DecisionMatrix:
    """Alternatives (rows) by criteria (columns), tagged with its processing stage.

    ``flags`` collects human-readable warnings produced along the way
    (epsilon substitutions, mixed-sign columns, ...).
    """

    alternatives: tuple[str, ...]
    criteria: tuple[CriterionSpec, ...]
    values: np.ndarray
    stage: Stage = Stage.RAW
    transform: str | None = None
    flags: tuple[str, ...] = field(default=())

    def __post_init__(self) -> None:
        values = np.array(self.values, dtype=float)
        values.setflags(write=False)
        object.__setattr__(self, "values", values)
        object.__setattr__(self, "alternatives", tuple(self.alternatives))
        object.__setattr__(self, "criteria", tuple(self.criteria))
        object.__setattr__(self, "stage", Stage(self.stage))
        n, m = len(self.alternatives), len(self.criteria)
        if values.shape != (n, m):
            raise ContractError(f"values shape {values.shape} != ({n}, {m})")
        if n < 2 or m < 1:
            raise ContractError(f"need n >= 2 alternatives and m >= 1 criteria, got {n}x{m}")
        if len(set(self.alternatives)) != n:
            raise ValidationError("duplicate alternative in decision matrix")
        if len({c.id for c in self.criteria}) != m:
            raise ValidationError("duplicate criterion id in decision matrix")
        if not np.all(np.isfinite(values)):
            raise ContractError("decision matrix contains non-finite values")

    @property
    def shape(self) -> tuple[int, int]:
        return self.values.shape

    @property
    def criterion_ids(self) -> tuple[str, ...]:
        return tuple(c.id for c in self.criteria)

    @property
    def senses(self) -> tuple[Sense, ...]:
        return tuple(c.sense for c in self.criteria)

    def column(self, criterion_id: str) -> np.ndarray:
        return self.values[:, self.criterion_ids.index(criterion_id)]

    def require_stage(self, stage: Stage) -> None:
        if self.stage is not stage:
            raise ContractError(f"expected a {stage.value} matrix, got {self.stage.value}")


def assemble(
    rows: Sequence[CriteriaRow], criteria: Sequence[CriterionSpec] = PAPER_CRITERIA
) -> DecisionMatrix:
    """Build the raw matrix from per-asset criteria rows, alternatives sorted by symbol."""
    if len(rows) < 2:
        raise ContractError(f"need at least 2 alternatives, got {len(rows)}")
    seen: set[str] = set()
    for row in rows:
        if row.symbol in seen:
            raise ValidationError(f"duplicate symbol {row.symbol!r}")
        seen.add(row.symbol)
    ordered = sorted(rows, key=lambda r: r.symbol)
    values = [[float(getattr(r, c.source or c.id)) for c in criteria] for r in ordered]
    return DecisionMatrix(
        alternatives=tuple(r.symbol for r in ordered),
        criteria=tuple(criteria),
        values=np.array(values),
        stage=Stage.RAW,
    )


def transform_min_to_max(
    matrix: DecisionMatrix, method: str = "reciprocal", epsilon: float | None = None
) -> DecisionMatrix:
    """Turn every minimize column into a maximize column.

    ``reciprocal`` maps x to 1/x and needs strictly positive entries; with
    ``epsilon`` set, entries below it are lifted to ``epsilon`` first and
    each substitution is flagged. ``max-complement`` maps x to
    ``max(column) - x`` and can yield zeros.
    """
    matrix.require_stage(Stage.RAW)
    if method not in MIN_TRANSFORMS:
        raise ValueError(f"unknown min transform {method!r}; expected one of {MIN_TRANSFORMS}")
    if epsilon is not None and not epsilon > 0:
        raise ValueError("epsilon must be positive")
    values = matrix.values.copy()
    flags = list(matrix.flags)
    criteria = list(matrix.criteria)
    for j, crit in enumerate(matrix.criteria):
        if crit.sense is not Sense.MINIMIZE:
            continue
        col = values[:, j]
        if method == "reciprocal":
            if epsilon is not None:
                for i in np.flatnonzero(col < epsilon):
                    flags.append(
                        f"epsilon substitution: {crit.id}[{matrix.alternatives[i]}] "
                        f"{col[i]!r} -> {epsilon!r}"
                    )
                col = np.maximum(col, epsilon)
            bad = np.flatnonzero(col <= 0)
            if bad.size:
                i = int(bad[0])
                raise TransformError(matrix.alternatives[i], crit.id, float(col[i]))
            values[:, j] = 1.0 / col
        else:
            values[:, j] = col.max() - col
        criteria[j] = replace(crit, sense=Sense.MAXIMIZE)
    return replace(
        matrix,
        criteria=tuple(criteria),
        values=values,
        stage=Stage.TRANSFORMED,
        transform=method,
        flags=tuple(flags),
    )


def normalize_vector_modulus(matrix: DecisionMatrix) -> DecisionMatrix:
    """Divide each column by its Euclidean norm."""
    matrix.require_stage(Stage.TRANSFORMED)
    values = matrix.values
    norms = np.sqrt(np.sum(values**2, axis=0))
    flags = list(matrix.flags)
    for j, crit in enumerate(matrix.criteria):
        if norms[j] == 0:
            raise NormalizationError(crit.id)
        col = values[:, j]
        if col.min() < 0 < col.max():
            flags.append(f"mixed-sign column: {crit.id}")
        elif col.max() < 0:
            flags.append(f"all-negative column: {crit.id}")
    return replace(matrix, values=values / norms, stage=Stage.NORMALIZED, flags=tuple(flags))


# -- export ---------------------------------------------------------------------


def matrix_to_csv(matrix: DecisionMatrix) -> str:
    buf = io.StringIO()
    writer = csv.writer(buf, lineterminator="\n")
    writer.writerow(["symbol", *matrix.criterion_ids])
    for sym, row in zip(matrix.alternatives, matrix.values):
        writer.writerow([sym, *(format_float(v) for v in row)])
    return buf.getvalue()


def matrix_metadata(matrix: DecisionMatrix) -> dict[str, Any]:
    return {
        "stage": matrix.stage.value,
        "transform": matrix.transform,
        "criteria": [
            {"id": c.id, "sense": c.sense.value, "description": c.description}
            for c in matrix.criteria
        ],
        "flags": list(matrix.flags),
    }


def matrix_to_dict(matrix: DecisionMatrix) -> dict[str, Any]:
    return {
        **matrix_metadata(matrix),
        "alternatives": list(matrix.alternatives),
        "values": [[float(v) for v in row] for row in matrix.values],
    }


def matrix_to_json(matrix: DecisionMatrix) -> str:
    return json.dumps(matrix_to_dict(matrix), indent=2)


def matrix_from_dict(data: dict[str, Any]) -> DecisionMatrix:
    return DecisionMatrix(
        alternatives=tuple(data["alternatives"]),
        criteria=tuple(
            CriterionSpec(c["id"], Sense(c["sense"]), c.get("description", ""))
            for c in data["criteria"]
        ),
        values=np.array(data["values"], dtype=float),
        stage=Stage(data["stage"]),
        transform=data.get("transform"),
        flags=tuple(data.get("flags", ())),
    )

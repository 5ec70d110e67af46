"""Objective criteria weights: mean, standard deviation, entropy and CRITIC.

All four methods read the normalized decision matrix.

The entropy method here weights by the entropy itself, ``w_j = H_j / sum H``,
so criteria whose values are spread evenly across alternatives (high
entropy, low discriminating power) receive *more* weight. This is not the
more common ``1 - e_j`` divergence form.
"""

from __future__ import annotations

import logging
import math
from dataclasses import dataclass, field
from typing import Callable

import numpy as np

from .decision import DecisionMatrix
from .errors import (
    CorrelationUndefinedError,
    DegenerateWeightsError,
    EntropyDomainError,
    MathError,
)

__all__ = [
    "METHODS",
    "WeightVector",
    "WeightSet",
    "mean_weights",
    "stddev_weights",
    "entropy_weights",
    "critic_weights",
    "compute_all",
]

log = logging.getLogger(__name__)

METHODS = ("mean", "stddev", "entropy", "critic")


@dataclass(frozen=True)
class WeightVector:
    method: str
    criteria: tuple[str, ...]
    weights: np.ndarray
    #: pre-normalization scores (sigma_j, H_j or C_j); None for mean weights
    raw_scores: np.ndarray | None = None
    flags: tuple[str, ...] = ()

    def __post_init__(self) -> None:
        w = np.array(self.weights, dtype=float)
        w.setflags(write=False)
        object.__setattr__(self, "weights", w)
        object.__setattr__(self, "criteria", tuple(self.criteria))
        if self.raw_scores is not None:
            s = np.array(self.raw_scores, dtype=float)
            s.setflags(write=False)
            object.__setattr__(self, "raw_scores", s)
        if w.shape != (len(self.criteria),):
            raise ValueError("one weight per criterion required")
        if np.any(w < 0):
            raise ValueError(f"{self.method}: negative weight")
        if abs(w.sum() - 1.0) > 1e-9:
            raise ValueError(f"{self.method}: weights sum to {w.sum()!r}, not 1")

    def as_dict(self) -> dict[str, float]:
        return dict(zip(self.criteria, (float(x) for x in self.weights)))


@dataclass
class WeightSet:
    """Outcome of :func:`compute_all`; methods that failed are listed in ``errors``."""

    vectors: list[WeightVector] = field(default_factory=list)
    errors: dict[str, MathError] = field(default_factory=dict)

    @property
    def succeeded(self) -> list[str]:
        return [v.method for v in self.vectors]

    @property
    def ok(self) -> bool:
        return not self.errors

    def __getitem__(self, method: str) -> WeightVector:
        for v in self.vectors:
            if v.method == method:
                return v
        raise KeyError(method)


def _normalize_scores(method: str, scores: np.ndarray, floor: float = 0.0) -> np.ndarray:
    """Scale scores to sum 1; a total at or below ``floor`` counts as all-zero."""
    total = float(np.sum(scores))
    if not total > floor:
        raise DegenerateWeightsError(f"{method}: all criterion scores are zero")
    return scores / total


def mean_weights(matrix: DecisionMatrix) -> WeightVector:
    m = matrix.shape[1]
    return WeightVector("mean", matrix.criterion_ids, np.full(m, 1.0 / m))


def stddev_weights(matrix: DecisionMatrix, ddof: int = 1) -> WeightVector:
    sigma = matrix.values.std(axis=0, ddof=ddof)
    # np.std of a constant column can come out at ~1e-17 instead of 0
    sigma[np.ptp(matrix.values, axis=0) == 0] = 0.0
    weights = _normalize_scores("stddev", sigma)
    return WeightVector("stddev", matrix.criterion_ids, weights, sigma)


def entropy_weights(matrix: DecisionMatrix, base: float = math.e) -> WeightVector:
    """Shannon entropy of each column's share distribution.

    ``p_ij = r_ij / sum_i r_ij`` and ``H_j = sum_i p_ij log(1 / p_ij)`` with
    ``0 log(1/0) = 0``. The log base cancels in the final ratio.
    """
    values = matrix.values
    if np.any(values < 0):
        i, j = map(int, np.argwhere(values < 0)[0])
        raise EntropyDomainError(
            f"entropy needs nonnegative values; {matrix.criterion_ids[j]}"
            f"[{matrix.alternatives[i]}] = {values[i, j]!r}"
        )
    sums = values.sum(axis=0)
    for j in np.flatnonzero(sums == 0):
        raise EntropyDomainError(f"criterion {matrix.criterion_ids[j]!r} is an all-zero column")
    p = values / sums
    logs = np.zeros_like(p)
    np.log(p, out=logs, where=p > 0)
    entropy = -np.sum(p * logs, axis=0) / math.log(base)
    weights = _normalize_scores("entropy", entropy)
    return WeightVector("entropy", matrix.criterion_ids, weights, entropy)


def critic_weights(
    matrix: DecisionMatrix, ddof: int = 1, constant_column: str = "error"
) -> WeightVector:
    """CRITIC: ``C_j = sigma_j * sum_k (1 - r_jk)`` with Pearson ``r``.

    A constant column has no defined correlation. By default that is an
    error; ``constant_column="drop"`` gives it weight 0 and computes the
    rest from the remaining columns.
    """
    if constant_column not in ("error", "drop"):
        raise ValueError(f"constant_column must be 'error' or 'drop', got {constant_column!r}")
    values = matrix.values
    ids = matrix.criterion_ids
    constant = np.ptp(values, axis=0) == 0
    flags: list[str] = []
    if constant.any():
        if constant_column == "error":
            raise CorrelationUndefinedError(ids[int(np.flatnonzero(constant)[0])])
        for j in np.flatnonzero(constant):
            msg = f"critic: dropped constant criterion {ids[j]}"
            log.warning(msg)
            flags.append(msg)
    keep = ~constant
    scores = np.zeros(len(ids))
    floor = 0.0
    if keep.any():
        sub = values[:, keep]
        sigma = sub.std(axis=0, ddof=ddof)
        if sub.shape[1] == 1:
            corr = np.ones((1, 1))
        else:
            corr = np.corrcoef(sub, rowvar=False)
        scores[keep] = sigma * np.sum(1.0 - corr, axis=1)
        # r = +-1 exactly (always the case for n = 2) comes back off by an ulp
        floor = 1e-12 * float(sigma.sum()) * len(ids)
    scores = np.maximum(scores, 0.0)
    weights = _normalize_scores("critic", scores, floor)
    return WeightVector("critic", ids, weights, scores, tuple(flags))


def compute_all(
    matrix: DecisionMatrix, ddof: int = 1, critic_constant_column: str = "error"
) -> WeightSet:
    """Run every method in the fixed order mean, stddev, entropy, critic."""
    runners: dict[str, Callable[[], WeightVector]] = {
        "mean": lambda: mean_weights(matrix),
        "stddev": lambda: stddev_weights(matrix, ddof),
        "entropy": lambda: entropy_weights(matrix),
        "critic": lambda: critic_weights(matrix, ddof, critic_constant_column),
    }
    out = WeightSet()
    for method in METHODS:
        try:
            out.vectors.append(runners[method]())
        except MathError as exc:
            out.errors[method] = exc
    return out

"""TOPSIS ranking and cross-ranking agreement."""

from __future__ import annotations

from dataclasses import dataclass, field
from itertools import combinations
from typing import Sequence

import numpy as np

from .decision import DecisionMatrix, Sense, Stage
from .errors import ContractError, DegenerateRankingError
from .weighting import WeightVector

__all__ = [
    "TopsisResult",
    "AgreementReport",
    "topsis_rank",
    "spearman",
    "compare_rankings",
]


@dataclass(frozen=True)
class TopsisResult:
    alternatives: tuple[str, ...]
    d_ideal: np.ndarray
    d_anti: np.ndarray
    similarity: np.ndarray
    rank: np.ndarray
    method: str | None = None
    degenerate: bool = False

    def ordered(self) -> list[str]:
        """Alternatives from best to worst."""
        return [a for _, a in sorted(zip(self.rank, self.alternatives))]

    def top(self, k: int) -> set[str]:
        return set(self.ordered()[:k])

    def rank_of(self, alternative: str) -> int:
        return int(self.rank[self.alternatives.index(alternative)])

    def records(self) -> list[dict]:
        return [
            {
                "symbol": a,
                "similarity": float(c),
                "rank": int(r),
                "d_ideal": float(sp),
                "d_anti": float(sm),
            }
            for a, c, r, sp, sm in zip(
                self.alternatives, self.similarity, self.rank, self.d_ideal, self.d_anti
            )
        ]


def topsis_rank(
    matrix: DecisionMatrix,
    weights: WeightVector | Sequence[float],
    on_degenerate: str = "error",
) -> TopsisResult:
    """Relative closeness to the ideal point of the weighted normalized matrix.

    Ranks are 1-based, by descending similarity with ties broken by
    ascending symbol. When every alternative coincides in weighted space the
    closeness is 0/0; ``on_degenerate="flag"`` returns 0.5 for all of them
    with ``degenerate=True`` instead of raising.
    """
    matrix.require_stage(Stage.NORMALIZED)
    if any(s is not Sense.MAXIMIZE for s in matrix.senses):
        raise ContractError("topsis expects every criterion to be maximize; transform first")
    method = weights.method if isinstance(weights, WeightVector) else None
    w = np.asarray(weights.weights if isinstance(weights, WeightVector) else weights, dtype=float)
    if w.shape != (matrix.shape[1],):
        raise ContractError(f"{w.size} weights for {matrix.shape[1]} criteria")
    if isinstance(weights, WeightVector) and weights.criteria != matrix.criterion_ids:
        raise ContractError("weight vector criteria do not match the matrix")

    v = matrix.values * w
    ideal = v.max(axis=0)
    anti = v.min(axis=0)
    d_ideal = np.sqrt(np.sum((v - ideal) ** 2, axis=1))
    d_anti = np.sqrt(np.sum((v - anti) ** 2, axis=1))
    n = matrix.shape[0]

    if np.array_equal(ideal, anti):
        if on_degenerate != "flag":
            raise DegenerateRankingError(
                "all alternatives coincide in weighted space; similarity is 0/0"
            )
        similarity = np.full(n, 0.5)
        degenerate = True
    else:
        similarity = d_anti / (d_ideal + d_anti)
        degenerate = False

    order = sorted(range(n), key=lambda i: (-similarity[i], matrix.alternatives[i]))
    rank = np.empty(n, dtype=int)
    rank[order] = np.arange(1, n + 1)
    return TopsisResult(
        alternatives=matrix.alternatives,
        d_ideal=d_ideal,
        d_anti=d_anti,
        similarity=similarity,
        rank=rank,
        method=method,
        degenerate=degenerate,
    )


def spearman(rank_a: Sequence[int], rank_b: Sequence[int]) -> float:
    """Spearman's rho for two tie-free rankings of the same items."""
    a = np.asarray(rank_a, dtype=float)
    b = np.asarray(rank_b, dtype=float)
    n = a.size
    if n < 2 or b.size != n:
        raise ContractError("spearman needs two rankings of equal length >= 2")
    d2 = float(np.sum((a - b) ** 2))
    return 1.0 - 6.0 * d2 / (n * (n * n - 1))


@dataclass
class AgreementReport:
    labels: list[str]
    alternatives: tuple[str, ...]
    #: (label_a, label_b) -> rho, for every unordered pair in label order
    spearman: dict[tuple[str, str], float] = field(default_factory=dict)
    #: alternative -> max rank - min rank across the compared rankings
    rank_spread: dict[str, int] = field(default_factory=dict)
    #: alternatives placed in the top two by every ranking
    consensus_top2: set[str] = field(default_factory=set)

    def rho(self, a: str, b: str) -> float:
        if (a, b) in self.spearman:
            return self.spearman[(a, b)]
        return self.spearman[(b, a)]

    def to_dict(self) -> dict:
        return {
            "labels": list(self.labels),
            "spearman": [
                {"a": a, "b": b, "rho": rho} for (a, b), rho in self.spearman.items()
            ],
            "rank_spread": dict(self.rank_spread),
            "consensus_top2": sorted(self.consensus_top2),
        }


def compare_rankings(
    results: Sequence[TopsisResult], labels: Sequence[str] | None = None
) -> AgreementReport:
    if not results:
        raise ContractError("no rankings to compare")
    if labels is None:
        labels = [r.method or f"r{i}" for i, r in enumerate(results)]
    if len(labels) != len(results):
        raise ContractError("one label per ranking required")
    alts = results[0].alternatives
    for r in results[1:]:
        if set(r.alternatives) != set(alts) or len(r.alternatives) != len(alts):
            raise ContractError("rankings cover different alternative sets")
    ranks = [np.array([r.rank_of(a) for a in alts]) for r in results]

    report = AgreementReport(labels=list(labels), alternatives=tuple(alts))
    for (i, la), (j, lb) in combinations(enumerate(labels), 2):
        report.spearman[(la, lb)] = spearman(ranks[i], ranks[j])
    stacked = np.vstack(ranks)
    report.rank_spread = {a: int(stacked[:, k].max() - stacked[:, k].min()) for k, a in enumerate(alts)}
    report.consensus_top2 = set.intersection(*(r.top(2) for r in results))
    return report

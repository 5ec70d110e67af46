"""
Ranking with TOPSIS and comparing rankings
==========================================

Rank alternatives by relative closeness to the ideal point under each weight
vector, then measure how much the rankings agree.
"""

import numpy as np

from cryptomcda import (
    CriterionSpec,
    DecisionMatrix,
    Sense,
    compare_rankings,
    compute_all,
    normalize_vector_modulus,
    topsis_rank,
    transform_min_to_max,
)

rng = np.random.default_rng(1)
raw = DecisionMatrix(
    alternatives=tuple("ABCDEFG"),
    criteria=tuple(CriterionSpec(f"c{j}", Sense.MAXIMIZE) for j in range(4)),
    values=rng.uniform(0.1, 1.0, size=(7, 4)),
)
normalized = normalize_vector_modulus(transform_min_to_max(raw))

###############################################################################
# One TOPSIS run per weight vector. ``similarity`` is S- / (S+ + S-): 1 at the
# ideal point, 0 at the anti-ideal point.

results = [topsis_rank(normalized, v) for v in compute_all(normalized).vectors]
for r in results:
    print(f"{r.method:8s}", " > ".join(r.ordered()))
    print("         ", np.round(r.similarity, 3))

###############################################################################
# Spearman correlation between every pair of rankings, how far each
# alternative moves, and who is top-2 everywhere.

report = compare_rankings(results)
for (a, b), rho in report.spearman.items():
    print(f"rho({a}, {b}) = {rho:.3f}")
print("rank spread:", report.rank_spread)
print("top-2 under every method:", sorted(report.consensus_top2))

###############################################################################
# Scaling every weight by the same factor leaves the closeness untouched.

w = compute_all(normalized)["entropy"].weights
a = topsis_rank(normalized, w).similarity
b = topsis_rank(normalized, 7.5 * w).similarity
print("max change after rescaling:", np.max(np.abs(a - b)))

"""
Four ways to weight criteria
============================

Build a small decision matrix, turn its cost criteria into benefit criteria,
normalize it, and compare the mean, standard deviation, entropy and CRITIC
weight vectors.
"""

import numpy as np

from cryptomcda import (
    CriterionSpec,
    DecisionMatrix,
    Sense,
    compute_all,
    normalize_vector_modulus,
    transform_min_to_max,
)

###############################################################################
# Four alternatives scored on a return (maximize), a risk (minimize) and a
# liquidity measure (maximize).

raw = DecisionMatrix(
    alternatives=("alpha", "beta", "gamma", "delta"),
    criteria=(
        CriterionSpec("ret", Sense.MAXIMIZE),
        CriterionSpec("risk", Sense.MINIMIZE),
        CriterionSpec("liq", Sense.MAXIMIZE),
    ),
    values=np.array(
        [
            [0.12, 0.30, 5.0],
            [0.08, 0.10, 9.0],
            [0.15, 0.45, 2.0],
            [0.05, 0.12, 8.5],
        ]
    ),
)

###############################################################################
# Risk becomes 1/risk so that every column reads "larger is better", then each
# column is divided by its Euclidean length.

normalized = normalize_vector_modulus(transform_min_to_max(raw))
print(np.round(normalized.values, 4))
print("column norms:", np.linalg.norm(normalized.values, axis=0))

###############################################################################
# Weights. The entropy weights favour the *most evenly spread* column: this
# package uses H_j / sum(H) rather than the divergence form 1 - e_j.

weights = compute_all(normalized)
for v in weights.vectors:
    print(f"{v.method:8s}", " ".join(f"{c}={w:.3f}" for c, w in v.as_dict().items()))

###############################################################################
# CRITIC rewards contrast (standard deviation) and penalizes redundancy.
# Appending an exact copy of ``ret`` lowers the weight ``ret`` receives.

from cryptomcda import critic_weights  # noqa: E402

dup = DecisionMatrix(
    normalized.alternatives,
    normalized.criteria + (CriterionSpec("ret_copy", Sense.MAXIMIZE),),
    np.column_stack([normalized.values, normalized.values[:, 0]]),
    normalized.stage,
)
print("ret weight alone:   ", round(critic_weights(normalized).as_dict()["ret"], 4))
print("ret weight with copy:", round(critic_weights(dup).as_dict()["ret"], 4))

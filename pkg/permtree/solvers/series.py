import logging
from collections import Counter

from ..induction import CompressedRules
from ..symbolic.ratfunc import PowerSeries

logger = logging.getLogger(__name__)


def series_dp(rules: CompressedRules, N: int) -> PowerSeries:
    """[0, P_1, ..., P_N] with P_n the number of paths of length n - 1 from the root."""
    if N < 1:
        raise ValueError(f"Series order must be positive, got {N}")
    weights: Counter = Counter({rules.root: 1})
    counts = [0, 1]
    for _ in range(N - 1):
        following: Counter = Counter()
        for node, weight in weights.items():
            for child, multiplicity in rules.children_of(node):
                following[child] += weight * multiplicity
        weights = following
        counts.append(sum(weights.values()))
    logger.debug("Path counts from the rules: %s", counts[1:])
    return PowerSeries.of(counts)

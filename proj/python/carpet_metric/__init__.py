"""Chain-infimum metrics on the Sierpinski carpet."""

from ._core import (
    CarpetError,
    WeightParams,
    RHO_DEFAULT,
    canonical_chain,
    cell_to_word,
    chain_cost,
    classify_params,
    critical_exponent,
    degeneracy_scan,
    derive_ab,
    distance,
    heat_kernel_params,
    metric_ball,
    oracle,
    resistance_exponent,
    solve_beta,
    volume,
    word_to_cell,
)

__all__ = [
    "CarpetError",
    "WeightParams",
    "RHO_DEFAULT",
    "canonical_chain",
    "cell_to_word",
    "chain_cost",
    "classify_params",
    "critical_exponent",
    "degeneracy_scan",
    "derive_ab",
    "distance",
    "heat_kernel_params",
    "metric_ball",
    "oracle",
    "resistance_exponent",
    "solve_beta",
    "volume",
    "word_to_cell",
]

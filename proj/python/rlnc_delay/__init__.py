"""Delay and outage statistics for deadline-constrained random linear network coding."""

from ._core import (
    UnboundedDelayError,
    avg_transmissions,
    decoding_delay_bounds,
    full_rank_prob,
    lucani_upper_bound,
    overhead_distribution,
    overhead_upper_bound,
    rank_distribution,
    simulate,
    systematic_full_rank_prob,
)

__all__ = [
    "UnboundedDelayError",
    "avg_transmissions",
    "decoding_delay_bounds",
    "full_rank_prob",
    "lucani_upper_bound",
    "overhead_distribution",
    "overhead_upper_bound",
    "rank_distribution",
    "simulate",
    "systematic_full_rank_prob",
]

"""Jointly periodic solutions of two-neighbor cellular automata with random rules."""
from .rule import Rule, RuleClass, apply, evolve, format_rule, parse_rule, sample_rule
from .tile import canonical_tile, is_simple, is_valid_tile, tile_metrics, word_period
from .digraph import (
    existence,
    find_config_cycles,
    label_successors,
    min_spatial_period,
    min_temporal_period,
    ps_with_spatial_period,
)
from .theory import finite_n_mean, limit_cdf_min_temporal, limit_mean

__version__ = "0.1.0"

"""Temporal network creation games with agent-chosen edge labels."""
from .constructions import (
    GENERATORS, ConstructionClaim, arbitrary_low_ne, clique_ne, grid_ne, hypercube_ne, outer_ring_ne, star_tree,
)
from .equilibrium import (
    BudgetExceeded, EquilibriumReport, GuardError, OptimumMethod, OptimumResult, SearchBounds, Verdict,
    best_response, best_response_dynamics, candidate_labels, exhaustive_ne_scan, is_nash, price_ratio,
    social_optimum,
)
from .game import (
    CostBreakdown, KPolicy, LabelCost, Penalty, Purchase, StrategyProfile, Variant, agent_cost, edge_label_cost,
    penalty_positive, penalty_proper, realize, social_cost, strategy,
)
from .temporal_graph import (
    ReachMode, TemporalGraph, is_proper, is_temporal_path, is_temporally_connected, lifetime,
    reach_count_via_first_edge, reachability_tree, reachable_from_time, reachable_set,
)

__version__ = "0.1.0"

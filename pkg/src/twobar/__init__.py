"""Reliability and risk-optimal design of two-bar redundant structural systems.

The library models a pair of tension members with Gaussian strengths and
loads, latent (design-independent) connection failure probabilities, and
either shared (active-passive) or standby (passive) redundancy. It provides
closed-form system reliability over the two-load event tree, normalized
life-cycle cost with consequence decomposition, reliability-constrained and
risk optimization, and a Monte Carlo event-tree simulator that independently
checks every closed-form result.
"""

from .cost import CostBreakdown, material_cost, risk_objective
from .gauss import beta_to_pf, pf_to_beta, std_normal_cdf, std_normal_quantile
from .model import (
    ACTIVE_PASSIVE,
    AS_PRINTED,
    PASSIVE,
    STANDARD,
    CostMultipliers,
    Design,
    LatentFailure,
    LoadModel,
    Material,
    Scenario,
    ScenarioError,
    load_fraction,
    member_area,
    member_areas,
    scenario_from_dict,
    scenario_from_json,
    usual_design_area,
)
from .optimize import (
    FrontierPoint,
    OptimizationResult,
    rbdo_frontier,
    rbdo_optimize,
    ro_optimize,
)
from .oracle import MCEstimate, simulate_system
from .reliability import (
    ReliabilityBreakdown,
    beta_conditional,
    beta_joint,
    beta_primary,
    p_only_first,
    p_union,
    system_failure_probability,
)

__version__ = "0.1.0"

__all__ = [
    "ACTIVE_PASSIVE", "AS_PRINTED", "PASSIVE", "STANDARD",
    "CostBreakdown", "CostMultipliers", "Design", "FrontierPoint",
    "LatentFailure", "LoadModel", "MCEstimate", "Material",
    "OptimizationResult", "ReliabilityBreakdown", "Scenario", "ScenarioError",
    "beta_conditional", "beta_joint", "beta_primary", "beta_to_pf",
    "load_fraction", "material_cost", "member_area", "member_areas",
    "p_only_first", "p_union", "pf_to_beta", "rbdo_frontier", "rbdo_optimize",
    "risk_objective", "ro_optimize", "scenario_from_dict", "scenario_from_json",
    "simulate_system", "std_normal_cdf", "std_normal_quantile",
    "system_failure_probability", "usual_design_area",
]

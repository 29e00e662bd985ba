"""Closed-form reliability of the two-bar system.

All limit states are linear functions of Gaussian variables, so each
reliability index is exactly the margin mean over the margin standard
deviation, and event probabilities follow from the tail-safe normal CDF.
The system failure probability is assembled over the full two-load event
tree: primary member failure, conditional failure of the survivor (with
dynamic amplification and residual strength), simultaneous failure, and the
latent connection-failure branches.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

from .gauss import beta_to_pf, pf_to_beta, std_normal_cdf
from .model import ACTIVE_PASSIVE, PASSIVE, Design, Scenario, member_areas

__all__ = [
    "ReliabilityBreakdown",
    "beta_primary",
    "beta_conditional",
    "beta_joint",
    "p_only_first",
    "p_union",
    "system_failure_probability",
]


@dataclass(frozen=True)
class ReliabilityBreakdown:
    """Every index and path probability behind one system evaluation.

    ``beta_2g1``/``beta_1g2`` are the conditional indexes at the scenario's
    post-failure factor with the impact factor applied (the variants with
    eta or f forced are internal to the assembly). For passive scenarios
    ``beta2`` is the standby bar's full-static-load index, ``p_f2_only`` is 0
    (bar 2 carries nothing until engagement) and ``p_union`` is the bar-1
    failure probability.
    """

    beta1: float
    beta2: float
    beta_2g1: float
    beta_1g2: float
    beta_joint: float
    p_f1_only: float
    p_f2_only: float
    p_union: float
    p_sys: float
    beta_sys: float


def _sigmas(scenario: Scenario):
    return (scenario.material1.std_dev, scenario.material2.std_dev,
            scenario.load.std_dev)


def beta_primary(design: Design, scenario: Scenario, bar: int) -> float:
    """Reliability index of primary failure of one bar.

    Active-passive bars share the load, so the margin is
    (a1 + a2) * mu_i - mu_P. In a passive system bar 1 carries the full load
    alone, and the standby bar's primary index is that of the bar under the
    full static load.
    """
    if bar not in (1, 2):
        raise ValueError(f"bar must be 1 or 2, got {bar}")
    a1, a2 = member_areas(design, scenario)
    s1, s2, sp = _sigmas(scenario)
    mu_p = scenario.load.mean
    if scenario.redundancy == ACTIVE_PASSIVE:
        atot = a1 + a2
        mu = (scenario.material1.mean_strength if bar == 1
              else scenario.material2.mean_strength)
        sig = s1 if bar == 1 else s2
        return (atot * mu - mu_p) / math.sqrt(atot * atot * sig * sig + sp * sp)
    a = a1 if bar == 1 else a2
    mu = (scenario.material1.mean_strength if bar == 1
          else scenario.material2.mean_strength)
    sig = s1 if bar == 1 else s2
    return (a * mu - mu_p) / math.sqrt(a * a * sig * sig + sp * sp)


def beta_conditional(design: Design, scenario: Scenario, failed_bar: int,
                     eta: float | None = None, f: float | None = None) -> float:
    """Reliability index of the survivor after the other bar has failed.

    The survivor carries the amplified load f * P together with the failed
    bar's residual strength eta * a * S. Defaults: eta of the failed bar's
    material, f = the scenario impact factor. Pass eta=0 for a disconnected
    (rather than broken) bar, f=1 for a static re-application.
    """
    if failed_bar not in (1, 2):
        raise ValueError(f"failed_bar must be 1 or 2, got {failed_bar}")
    a1, a2 = member_areas(design, scenario)
    s1, s2, sp = _sigmas(scenario)
    mu1 = scenario.material1.mean_strength
    mu2 = scenario.material2.mean_strength
    mu_p = scenario.load.mean
    c = scenario.cov_cross_factor
    rho = scenario.rho12
    if f is None:
        f = scenario.load.impact_factor
    if failed_bar == 1:
        if eta is None:
            eta = scenario.material1.post_failure_factor
        num = a2 * mu2 + eta * a1 * mu1 - f * mu_p
        var = (a2 * a2 * s2 * s2 + eta * eta * a1 * a1 * s1 * s1
               + c * eta * a1 * a2 * s1 * s2 * rho + f * f * sp * sp)
    else:
        if eta is None:
            eta = scenario.material2.post_failure_factor
        num = a1 * mu1 + eta * a2 * mu2 - f * mu_p
        var = (a1 * a1 * s1 * s1 + eta * eta * a2 * a2 * s2 * s2
               + c * eta * a1 * a2 * s1 * s2 * rho + f * f * sp * sp)
    return num / math.sqrt(var)


def beta_joint(design: Design, scenario: Scenario,
               include_impact: bool | None = None) -> float:
    """Reliability index of simultaneous failure of both bars.

    The joint margin is a1*S1 + a2*S2 - f*P. For active-passive systems both
    bars are engaged statically and f = 1; for a passive system whose standby
    engages before bar-1 failure the engagement is sudden and f is the impact
    factor. ``include_impact`` overrides the default choice.
    """
    if include_impact is None:
        include_impact = (scenario.redundancy == PASSIVE and scenario.standby_engages)
    a1, a2 = member_areas(design, scenario)
    s1, s2, sp = _sigmas(scenario)
    mu1 = scenario.material1.mean_strength
    mu2 = scenario.material2.mean_strength
    f = scenario.load.impact_factor if include_impact else 1.0
    num = a1 * mu1 + a2 * mu2 - f * scenario.load.mean
    var = (a1 * a1 * s1 * s1 + a2 * a2 * s2 * s2
           + scenario.cov_cross_factor * a1 * a2 * s1 * s2 * scenario.rho12
           + f * f * sp * sp)
    return num / math.sqrt(var)


def p_only_first(design: Design, scenario: Scenario, bar: int) -> float:
    """P[only this bar fails] = max(0, Phi(-beta_bar) - Phi(-beta_joint)).

    The clamp matters when the joint event dominates the single one (small
    standby area with an impact factor above 1). For a passive system only
    bar 1 has a primary failure event; bar 2 returns 0.
    """
    if scenario.redundancy == PASSIVE:
        if bar == 2:
            return 0.0
        pj = _passive_joint_pf(design, scenario)
        return max(0.0, beta_to_pf(beta_primary(design, scenario, 1)) - pj)
    pj = beta_to_pf(beta_joint(design, scenario))
    return max(0.0, beta_to_pf(beta_primary(design, scenario, bar)) - pj)


def p_union(design: Design, scenario: Scenario) -> float:
    """P[F1 or F2], clamped into [0, 1].

    For passive scenarios this is simply the bar-1 failure probability.
    """
    if scenario.redundancy == PASSIVE:
        return beta_to_pf(beta_primary(design, scenario, 1))
    p1 = beta_to_pf(beta_primary(design, scenario, 1))
    p2 = beta_to_pf(beta_primary(design, scenario, 2))
    pj = beta_to_pf(beta_joint(design, scenario))
    return min(1.0, max(0.0, p1 + p2 - pj))


def _passive_joint_pf(design: Design, scenario: Scenario) -> float:
    # A standby that only engages at bar-1 failure cannot fail jointly with it.
    if not scenario.standby_engages:
        return 0.0
    return beta_to_pf(beta_joint(design, scenario, include_impact=True))


def system_failure_probability(design: Design, scenario: Scenario) -> ReliabilityBreakdown:
    """Assemble the system failure probability over the full event tree.

    Both load applications are covered; connection failures can occur only on
    first loading of a connection, with the failed bar contributing no
    residual strength on those branches. Terms are combined with exact
    floating-point summation (math.fsum); the result is clamped into [0, 1].
    """
    if scenario.redundancy == ACTIVE_PASSIVE:
        return _system_active_passive(design, scenario)
    return _system_passive(design, scenario)


def _system_active_passive(design: Design, scenario: Scenario) -> ReliabilityBreakdown:
    q1 = scenario.latent.p1
    q2 = scenario.latent.p2
    b1 = beta_primary(design, scenario, 1)
    b2 = beta_primary(design, scenario, 2)
    bj = beta_joint(design, scenario)
    b21 = beta_conditional(design, scenario, 1)
    b12 = beta_conditional(design, scenario, 2)
    pj = beta_to_pf(bj)
    pf1 = beta_to_pf(b1)
    pf2 = beta_to_pf(b2)
    pf1_only = max(0.0, pf1 - pj)
    pf2_only = max(0.0, pf2 - pj)
    # Connection-failure branches: the disconnected bar keeps no residual
    # strength (eta = 0); the first transfer is amplified, the second load is
    # static.
    p21_c = beta_to_pf(beta_conditional(design, scenario, 1, eta=0.0))
    p12_c = beta_to_pf(beta_conditional(design, scenario, 2, eta=0.0))
    p21_c_static = beta_to_pf(beta_conditional(design, scenario, 1, eta=0.0, f=1.0))
    p12_c_static = beta_to_pf(beta_conditional(design, scenario, 2, eta=0.0, f=1.0))
    terms = (
        (1.0 - q1) * (1.0 - q2) * pf1_only * beta_to_pf(b21),
        (1.0 - q1) * (1.0 - q2) * pf2_only * beta_to_pf(b12),
        (1.0 - q1) * (1.0 - q2) * pj,
        q1 * (1.0 - q2) * (1.0 - p21_c) * p21_c_static,
        q1 * (1.0 - q2) * p21_c,
        (1.0 - q1) * q2 * (1.0 - p12_c) * p12_c_static,
        (1.0 - q1) * q2 * p12_c,
        q1 * q2,
    )
    p_sys = min(1.0, math.fsum(terms))
    return ReliabilityBreakdown(
        beta1=b1, beta2=b2, beta_2g1=b21, beta_1g2=b12, beta_joint=bj,
        p_f1_only=pf1_only, p_f2_only=pf2_only,
        p_union=min(1.0, max(0.0, pf1 + pf2 - pj)),
        p_sys=p_sys, beta_sys=pf_to_beta(p_sys),
    )


def _system_passive(design: Design, scenario: Scenario) -> ReliabilityBreakdown:
    q1 = scenario.latent.p1
    q2 = scenario.latent.p2
    b1 = beta_primary(design, scenario, 1)
    b2 = beta_primary(design, scenario, 2)
    b21 = beta_conditional(design, scenario, 1)
    pf1 = beta_to_pf(b1)
    pj = _passive_joint_pf(design, scenario)
    bj = beta_joint(design, scenario, include_impact=True) if scenario.standby_engages else math.inf
    pf1_only = max(0.0, pf1 - pj)
    # Conditional survivor probabilities. The standby bar is proportioned for
    # and checked against the amplified load in every conditional factor; see
    # the cost module for the matching consequence accounting.
    pc_full = beta_to_pf(b21)
    pc_conn = beta_to_pf(beta_conditional(design, scenario, 1, eta=0.0))
    terms = (
        (1.0 - q1) * (1.0 - q2) * pf1_only * pc_full * pc_full,
        q1 * (1.0 - q2) * (1.0 - pc_conn) * pc_conn,
        (1.0 - q1) * (1.0 - q2) * (1.0 - pf1) * pj,
        (1.0 - q1) * (1.0 - q2) * pf1_only * pc_full,
        (1.0 - q1) * q2 * pf1_only,
        (1.0 - q1) * (1.0 - q2) * pj,
        q1 * (1.0 - q2) * pc_conn,
        q1 * q2,
    )
    p_sys = min(1.0, math.fsum(terms))
    return ReliabilityBreakdown(
        beta1=b1, beta2=b2, beta_2g1=b21, beta_1g2=math.nan, beta_joint=bj,
        p_f1_only=pf1_only, p_f2_only=0.0, p_union=pf1,
        p_sys=p_sys, beta_sys=pf_to_beta(p_sys),
    )

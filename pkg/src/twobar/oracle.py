"""Monte Carlo event-tree simulation, the independent check on closed forms.

The simulator walks the physical event tree replicate by replicate instead of
multiplying marginal probabilities, so it carries the exact dependence
between load applications (strengths are drawn once per replicate) and the
exact sequencing of primary failure, redistribution and connection behaviour.
Where the closed-form assembly approximates a path by a product of marginals,
this is the arbiter.

Streams are deterministic: replicates are processed in fixed-size chunks and
chunk k uses the Philox stream ``Philox(key=seed).jumped(k)``, so a result
depends only on (scenario, design, n, seed) regardless of scheduling.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .model import ACTIVE_PASSIVE, Design, Scenario, member_areas

__all__ = ["MCEstimate", "simulate_system", "CHUNK"]

CHUNK = 1_000_000  # replicates per RNG substream; fixed so (n, seed) pins results


@dataclass(frozen=True)
class MCEstimate:
    """Estimates with standard errors for one simulation run.

    Consequence classes partition the replicates: none / service failure only
    (a bar failed, the system survived) / progressive collapse / direct
    collapse. ``p_sys`` counts both collapse classes.
    """

    n: int
    seed: int
    p_sys: float
    se_p_sys: float
    p_sf: float
    se_p_sf: float
    p_pc: float
    se_p_pc: float
    p_dc: float
    se_p_dc: float
    cost_material: float
    cost_sf: float
    se_cost_sf: float
    cost_pc: float
    se_cost_pc: float
    cost_dc: float
    se_cost_dc: float
    cost_total: float
    se_cost_total: float


def _se_prob(p: float, n: int) -> float:
    return math.sqrt(max(0.0, p * (1.0 - p)) / n)


def _se_mean(total: float, total_sq: float, n: int) -> float:
    mean = total / n
    var = max(0.0, total_sq / n - mean * mean)
    return math.sqrt(var / n)


def _walk_active_passive(sc: Scenario, a1, a2, s1v, s2v, l1, l2, u1, u2):
    eta1 = sc.material1.post_failure_factor
    eta2 = sc.material2.post_failure_factor
    fi = sc.load.impact_factor
    c1 = u1 < sc.latent.p1
    c2 = u2 < sc.latent.p2

    dc = c1 & c2
    pc = np.zeros_like(dc)
    sf1 = np.zeros_like(dc)
    sf2 = np.zeros_like(dc)

    # One connection lost on first loading: the survivor takes the amplified
    # first load alone (no residual from a disconnected bar), then the second
    # load statically. Immediate failure is collapse without warning.
    for only, cap in ((c1 & ~c2, a2 * s2v), (c2 & ~c1, a1 * s1v)):
        fail_now = cap < fi * l1
        dc |= only & fail_now
        pc |= only & ~fail_now & (cap < l2)

    both = ~c1 & ~c2
    cap_joint = a1 * s1v + a2 * s2v
    atot = a1 + a2
    weaker1 = s1v <= s2v  # equal stress, so the lower strength fails first
    cap_weak = atot * np.where(weaker1, s1v, s2v)
    cap_surv = np.where(weaker1, a2 * s2v + eta1 * a1 * s1v,
                        a1 * s1v + eta2 * a2 * s2v)

    dc_1 = both & (cap_joint < l1)
    prim_1 = both & ~dc_1 & (cap_weak < l1)
    pc_1 = prim_1 & (cap_surv < fi * l1)
    wounded = prim_1 & ~pc_1
    intact = both & ~dc_1 & ~prim_1

    dc_2 = intact & (cap_joint < l2)
    prim_2 = intact & ~dc_2 & (cap_weak < l2)
    pc_2 = prim_2 & (cap_surv < fi * l2)
    pc_w = wounded & (cap_surv < l2)  # second application is static

    dc |= dc_1 | dc_2
    pc |= pc_1 | pc_2 | pc_w
    survived_wound = (wounded & ~pc_w) | (prim_2 & ~pc_2)
    sf1 |= survived_wound & weaker1
    sf2 |= survived_wound & ~weaker1
    return dc, pc, sf1, sf2


def _walk_passive(sc: Scenario, a1, a2, s1v, s2v, l1, l2, u1, u2):
    eta1 = sc.material1.post_failure_factor
    fi = sc.load.impact_factor
    c1 = u1 < sc.latent.p1
    c2 = u2 < sc.latent.p2

    dc = np.zeros_like(c1)
    pc = np.zeros_like(c1)
    sf1 = np.zeros_like(c1)
    cap2 = a2 * s2v
    cap1 = a1 * s1v
    cap_surv = cap2 + eta1 * cap1  # bar 1 broken but still connected
    cap_joint = cap1 + cap2

    # Connection 1 lost at first loading: the standby is mobilised at once.
    dc |= c1 & c2
    m = c1 & ~c2
    fail_now = cap2 < fi * l1
    dc |= m & fail_now
    pc |= m & ~fail_now & (cap2 < l2)

    # A standby that breaks during redistribution gives no warning: direct
    # collapse. Only "standby holds the transfer, then fails under the next
    # static load" counts as stepped (progressive) collapse.
    upper = ~c1
    if sc.standby_engages:
        # The standby engages (and its connection is proven) on first loading,
        # so joint failure of both bars is possible under the amplified load.
        dead2 = upper & c2
        dc |= dead2 & ((cap1 < l1) | (cap1 < l2))  # bar 1 alone, no backup
        live = upper & ~c2
        dc_j1 = live & (cap_joint < fi * l1)
        prim_1 = live & ~dc_j1 & (cap1 < l1)
        dc_1 = prim_1 & (cap_surv < fi * l1)
        wounded = prim_1 & ~dc_1
        intact = live & ~dc_j1 & ~prim_1
        dc_j2 = intact & (cap_joint < fi * l2)
        prim_2 = intact & ~dc_j2 & (cap1 < l2)
        dc_2 = prim_2 & (cap_surv < fi * l2)
        pc_w = wounded & (cap_surv < l2)
        dc |= dc_j1 | dc_j2 | dc_1 | dc_2
        pc |= pc_w
        sf1 |= (wounded & ~pc_w) | (prim_2 & ~dc_2)
    else:
        # The standby connection is only loaded (and can only fail) when bar 1
        # fails; no joint-failure path exists.
        prim_1 = upper & (cap1 < l1)
        dc |= prim_1 & c2
        eng_1 = prim_1 & ~c2
        dc_1 = eng_1 & (cap_surv < fi * l1)
        wounded = eng_1 & ~dc_1
        intact = upper & ~prim_1
        prim_2 = intact & (cap1 < l2)
        dc |= prim_2 & c2
        eng_2 = prim_2 & ~c2
        dc_2 = eng_2 & (cap_surv < fi * l2)
        pc_w = wounded & (cap_surv < l2)
        dc |= dc_1 | dc_2
        pc |= pc_w
        sf1 |= (wounded & ~pc_w) | (eng_2 & ~dc_2)
    sf2 = np.zeros_like(sf1)
    return dc, pc, sf1, sf2


def simulate_system(scenario: Scenario, design: Design, n: int, seed: int) -> MCEstimate:
    """Simulate n replicates of the two-load history and classify each one.

    Strengths are sampled with the standard factor-2 covariance construction
    (S2 = mu2 + sigma2 * (rho*Z1 + sqrt(1-rho^2)*Z2)); negative draws are used
    as drawn, consistent with the Gaussian idealization. Costs accumulate the
    same normalization and multipliers as the closed-form risk objective.
    """
    if n < 1:
        raise ValueError(f"sample count must be >= 1, got {n}")
    a1, a2 = member_areas(design, scenario)
    mu1 = scenario.material1.mean_strength
    mu2 = scenario.material2.mean_strength
    sg1 = scenario.material1.std_dev
    sg2 = scenario.material2.std_dev
    mup = scenario.load.mean
    sgp = scenario.load.std_dev
    rho = scenario.rho12
    rho_c = math.sqrt(1.0 - rho * rho)
    k = scenario.costs
    if scenario.redundancy == ACTIVE_PASSIVE:
        repl1 = design.lam1
        repl2 = design.lam2
        walk = _walk_active_passive
    else:
        repl1 = design.lam1
        repl2 = 0.0  # standby failure is never a survivable service failure
        walk = _walk_passive
    from .cost import material_cost
    material = material_cost(design, scenario)

    n_sf = n_pc = n_dc = 0
    sum_sf = sumsq_sf = 0.0
    sum_total = sumsq_total = 0.0

    done = 0
    chunk_index = 0
    while done < n:
        m = min(CHUNK, n - done)
        rng = np.random.Generator(np.random.Philox(key=seed).jumped(chunk_index))
        z = rng.standard_normal((4, m))
        u = rng.random((2, m))
        s1v = mu1 + sg1 * z[0]
        s2v = mu2 + sg2 * (rho * z[0] + rho_c * z[1])
        l1 = mup + sgp * z[2]
        l2 = mup + sgp * z[3]
        dc, pc, sf1, sf2 = walk(scenario, a1, a2, s1v, s2v, l1, l2, u[0], u[1])

        n_dc += int(dc.sum())
        n_pc += int(pc.sum())
        n_sf += int((sf1 | sf2).sum())
        sf_cost = k.k_sf * (repl1 * sf1 + repl2 * sf2)
        total = material + sf_cost + k.k_pc * pc + k.k_dc * dc
        sum_sf += float(sf_cost.sum())
        sumsq_sf += float((sf_cost * sf_cost).sum())
        sum_total += float(total.sum())
        sumsq_total += float((total * total).sum())
        done += m
        chunk_index += 1

    p_dc = n_dc / n
    p_pc = n_pc / n
    p_sf = n_sf / n
    p_sys = (n_dc + n_pc) / n
    return MCEstimate(
        n=n, seed=seed,
        p_sys=p_sys, se_p_sys=_se_prob(p_sys, n),
        p_sf=p_sf, se_p_sf=_se_prob(p_sf, n),
        p_pc=p_pc, se_p_pc=_se_prob(p_pc, n),
        p_dc=p_dc, se_p_dc=_se_prob(p_dc, n),
        cost_material=material,
        cost_sf=sum_sf / n, se_cost_sf=_se_mean(sum_sf, sumsq_sf, n),
        cost_pc=k.k_pc * p_pc, se_cost_pc=k.k_pc * _se_prob(p_pc, n),
        cost_dc=k.k_dc * p_dc, se_cost_dc=k.k_dc * _se_prob(p_dc, n),
        cost_total=sum_total / n, se_cost_total=_se_mean(sum_total, sumsq_total, n),
    )

"""Design optimization: reliability-constrained frontiers and risk optima.

The risk objective is cheap, two-dimensional, multi-modal and nonsmooth at
the clamp boundaries, so the solver is a coarse grid seeding of every local
basin followed by derivative-free simplex refinement per seed. Frontier
tracing solves, for each lam1, the minimal lam2 meeting the reliability
target by bracketed bisection. Everything is deterministic: identical inputs
give identical results.
"""

from __future__ import annotations

import math
import warnings
from dataclasses import dataclass, field

import numpy as np
from scipy.optimize import minimize

from .cost import CostBreakdown, material_cost, risk_objective
from .model import ACTIVE_PASSIVE, Design, Scenario
from .reliability import ReliabilityBreakdown, system_failure_probability

__all__ = ["FrontierPoint", "OptimizationResult", "rbdo_frontier", "rbdo_optimize", "ro_optimize"]

# Local minima closer than this in both coordinates are the same minimum.
_DISTINCT_SEP = 0.05


@dataclass(frozen=True)
class FrontierPoint:
    lam1: float
    lam2_required: float
    beta_sys_achieved: float
    feasible: bool


@dataclass(frozen=True)
class OptimizationResult:
    best: Design
    breakdown: ReliabilityBreakdown
    costs: CostBreakdown
    local_minima: list = field(default_factory=list)  # [(Design, objective value)]
    evaluations: int = 0
    converged: bool = True
    feasible: bool = True
    message: str = ""


def _beta_sys(scenario: Scenario, lam1: float, lam2: float) -> float:
    return system_failure_probability(Design(lam1, lam2), scenario).beta_sys


def _min_lam2(scenario: Scenario, beta_t: float, lam1: float,
              lam_max: float, tol: float) -> FrontierPoint:
    b0 = _beta_sys(scenario, lam1, 0.0)
    if b0 >= beta_t:
        return FrontierPoint(lam1, 0.0, b0, True)
    b_hi = _beta_sys(scenario, lam1, lam_max)
    if b_hi < beta_t:
        return FrontierPoint(lam1, lam_max, b_hi, False)
    lo, hi = 0.0, lam_max
    while hi - lo > tol:
        mid = 0.5 * (lo + hi)
        if _beta_sys(scenario, lam1, mid) >= beta_t:
            hi = mid
        else:
            lo = mid
    achieved = _beta_sys(scenario, lam1, hi)
    # beta_sys should be nondecreasing in lam2 below the root; a qualifying
    # point strictly under the bracket means the bisection root is not minimal.
    for probe in np.linspace(0.0, max(0.0, hi - 4.0 * tol), 17):
        if _beta_sys(scenario, lam1, probe) >= beta_t:
            warnings.warn(
                f"beta_sys is non-monotone in lam2 at lam1={lam1:.6g}: "
                f"constraint already met at lam2={probe:.6g} < {hi:.6g}",
                stacklevel=2)
            break
    return FrontierPoint(lam1, hi, achieved, True)


def rbdo_frontier(scenario: Scenario, beta_t: float, lam1_grid,
                  lam_max: float = 10.0, tol: float = 1e-5) -> list:
    """Minimal lam2 achieving beta_sys >= beta_t for each lam1 in the grid.

    Points where no lam2 <= lam_max qualifies are marked infeasible (their
    ``lam2_required`` holds lam_max and ``beta_sys_achieved`` the best value
    there). The grid must be nonnegative and ascending.
    """
    grid = [float(x) for x in lam1_grid]
    if any(x < 0.0 for x in grid) or any(b < a for a, b in zip(grid, grid[1:])):
        raise ValueError("lam1 grid must be nonnegative and ascending")
    return [_min_lam2(scenario, beta_t, x, lam_max, tol) for x in grid]


def rbdo_optimize(scenario: Scenario, beta_t: float,
                  lam_max: float = 10.0, grid_points: int = 201) -> OptimizationResult:
    """Minimize material cost subject to beta_sys >= beta_t.

    The frontier is traced on a lam1 grid, the cheapest feasible point is
    refined by golden-section search along the frontier, and an infeasible
    problem returns a result object reporting the best attainable beta_sys
    instead of raising.
    """
    evals = 0

    def frontier_at(lam1: float) -> FrontierPoint:
        nonlocal evals
        evals += 1
        return _min_lam2(scenario, beta_t, lam1, lam_max, 1e-5)

    grid = np.linspace(0.0, lam_max, grid_points)
    points = [frontier_at(x) for x in grid]
    feasible = [p for p in points if p.feasible]
    if not feasible:
        best_pt = max(points, key=lambda p: p.beta_sys_achieved)
        design = Design(best_pt.lam1, best_pt.lam2_required)
        return OptimizationResult(
            best=design,
            breakdown=system_failure_probability(design, scenario),
            costs=risk_objective(design, scenario),
            local_minima=[],
            evaluations=evals,
            converged=True,
            feasible=False,
            message=(f"infeasible: max attainable beta_sys = "
                     f"{best_pt.beta_sys_achieved:.4f} < target {beta_t:.4f}"),
        )

    def cost_at(lam1: float) -> float:
        p = frontier_at(lam1)
        if not p.feasible:
            return math.inf
        return material_cost(Design(p.lam1, p.lam2_required), scenario)

    best = min(feasible, key=lambda p: material_cost(Design(p.lam1, p.lam2_required), scenario))
    step = grid[1] - grid[0]
    lo = max(0.0, best.lam1 - step)
    hi = min(lam_max, best.lam1 + step)
    # Golden-section on the frontier-restricted material cost.
    invphi = (math.sqrt(5.0) - 1.0) / 2.0
    a, b = lo, hi
    c = b - invphi * (b - a)
    d = a + invphi * (b - a)
    fc, fd = cost_at(c), cost_at(d)
    while b - a > 1e-6:
        if fc <= fd:
            b, d, fd = d, c, fc
            c = b - invphi * (b - a)
            fc = cost_at(c)
        else:
            a, c, fc = c, d, fd
            d = a + invphi * (b - a)
            fd = cost_at(d)
    lam1_star = 0.5 * (a + b)
    pt = frontier_at(lam1_star)
    if material_cost(Design(best.lam1, best.lam2_required), scenario) < \
            material_cost(Design(pt.lam1, pt.lam2_required), scenario):
        pt = best
    design = Design(pt.lam1, pt.lam2_required)
    if design.lam1 + design.lam2 <= 1e-9:
        msg = "degenerate optimum: the reliability constraint is met by the empty design"
    else:
        msg = ""
    return OptimizationResult(
        best=design,
        breakdown=system_failure_probability(design, scenario),
        costs=risk_objective(design, scenario),
        local_minima=[],
        evaluations=evals,
        converged=True,
        feasible=True,
        message=msg,
    )


def ro_optimize(scenario: Scenario, grid_points: int = 25,
                grid_max: float = 3.0) -> OptimizationResult:
    """Global risk optimization over D = {lam1 >= 0, lam2 >= 0}.

    Every grid cell that is a local minimum among its neighbours seeds a
    Nelder-Mead refinement (negative trials are projected to zero); distinct
    converged minima are reported alongside the global best. For symmetric
    scenarios with mirror-image optima the representative with lam1 <= lam2
    is reported.
    """
    evals = 0

    def objective(x) -> float:
        nonlocal evals
        evals += 1
        return risk_objective(Design(max(0.0, x[0]), max(0.0, x[1])), scenario).total

    xs = np.linspace(0.0, grid_max, grid_points)
    grid = np.array([[objective((x, y)) for y in xs] for x in xs])
    seeds = []
    for i in range(grid_points):
        for j in range(grid_points):
            nb = grid[max(0, i - 1):i + 2, max(0, j - 1):j + 2]
            if grid[i, j] <= nb.min() + 1e-15:
                seeds.append((xs[i], xs[j]))

    minima = []
    any_converged = False
    failures = 0
    for seed in seeds:
        res = minimize(objective, x0=np.asarray(seed), method="Nelder-Mead",
                       options={"xatol": 1e-7, "fatol": 1e-12, "maxiter": 4000})
        if not res.success:
            failures += 1
            warnings.warn(f"simplex refinement did not converge from seed {seed}",
                          stacklevel=2)
        else:
            any_converged = True
        lam1 = max(0.0, float(res.x[0]))
        lam2 = max(0.0, float(res.x[1]))
        minima.append((lam1, lam2, objective((lam1, lam2))))

    # Deduplicate: minima within the separation box are the same basin.
    minima.sort(key=lambda m: m[2])
    distinct = []
    for m in minima:
        if all(abs(m[0] - d[0]) > _DISTINCT_SEP or abs(m[1] - d[1]) > _DISTINCT_SEP
               for d in distinct):
            distinct.append(m)

    lam1, lam2, best_val = distinct[0]
    # Mirror-image tie on symmetric scenarios: canonical representative.
    if scenario.redundancy == ACTIVE_PASSIVE and lam1 > lam2:
        mirrored = objective((lam2, lam1))
        if abs(mirrored - best_val) <= 1e-9 * max(1.0, abs(best_val)):
            lam1, lam2 = lam2, lam1
            best_val = mirrored
    best = Design(lam1, lam2)
    return OptimizationResult(
        best=best,
        breakdown=system_failure_probability(best, scenario),
        costs=risk_objective(best, scenario),
        local_minima=[(Design(m[0], m[1]), m[2]) for m in distinct],
        evaluations=evals,
        converged=any_converged,
        feasible=True,
        message="" if failures == 0 else f"{failures} refinement(s) did not converge",
    )

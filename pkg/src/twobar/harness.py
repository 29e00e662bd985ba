"""Parametric sweeps, contour grids and closed-form-vs-simulation validation."""

from __future__ import annotations

import dataclasses
import json
import math
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field

from .cost import risk_objective
from .model import (
    AS_PRINTED,
    Design,
    LatentFailure,
    LoadModel,
    Material,
    Scenario,
    ScenarioError,
    member_areas,
    scenario_from_dict,
)
from .optimize import rbdo_optimize, ro_optimize
from .oracle import simulate_system
from .reliability import system_failure_probability
from .tables import reference_design, reference_scenario, scenario_for, table_columns

__all__ = [
    "SWEEP_AXES", "SweepSpec", "GridSpec", "ValidationRow",
    "sweep_spec_from_dict", "run_sweep", "run_contour",
    "run_validate", "validate_battery",
    "SWEEP_HEADER", "CONTOUR_HEADER", "VALIDATE_HEADER",
]

# Canonical nesting order for sweep combinations (outermost first).
SWEEP_AXES = ("pL", "fi", "rho12", "eta", "strength_ratio", "cov_ratio")

MAX_GRID_CELLS = 10_000_000


@dataclass(frozen=True)
class SweepSpec:
    base: Scenario
    axes: dict  # name -> list of values, names from SWEEP_AXES
    mode: str = "ro"  # "ro" or "rbdo"
    beta_targets: tuple = ()

    def __post_init__(self):
        unknown = set(self.axes) - set(SWEEP_AXES)
        if unknown:
            raise ScenarioError([f"unknown sweep axis: {', '.join(sorted(unknown))}"])
        if self.mode not in ("ro", "rbdo"):
            raise ScenarioError([f"sweep mode must be 'ro' or 'rbdo', got {self.mode!r}"])
        if self.mode == "rbdo" and not self.beta_targets:
            raise ScenarioError(["rbdo sweep needs at least one beta target"])


def sweep_spec_from_dict(doc: dict) -> SweepSpec:
    """Parse a sweep document::

        {"base": {<scenario>} (optional; default reference scenario),
         "axes": {"pL": [...], "fi": [...], ...},
         "mode": "ro" | {"rbdo": [beta_T, ...]}}
    """
    if not isinstance(doc, dict):
        raise ScenarioError(["sweep spec must be a JSON object"])
    unknown = set(doc) - {"base", "axes", "mode"}
    if unknown:
        raise ScenarioError([f"unknown field(s) in sweep spec: {', '.join(sorted(unknown))}"])
    base = scenario_from_dict(doc["base"]) if "base" in doc else reference_scenario()
    axes = doc.get("axes", {})
    if not isinstance(axes, dict):
        raise ScenarioError(["axes must be an object of name -> value list"])
    mode = doc.get("mode", "ro")
    if isinstance(mode, dict):
        if set(mode) != {"rbdo"}:
            raise ScenarioError(["mode object must be {\"rbdo\": [beta_T, ...]}"])
        return SweepSpec(base, axes, "rbdo", tuple(float(b) for b in mode["rbdo"]))
    return SweepSpec(base, axes, str(mode))


def _apply_axis(scenario: Scenario, name: str, value: float) -> Scenario:
    m1, m2 = scenario.material1, scenario.material2
    if name == "pL":
        return dataclasses.replace(scenario, latent=LatentFailure(value, value))
    if name == "fi":
        return dataclasses.replace(
            scenario, load=LoadModel(scenario.load.mean, scenario.load.cov, value))
    if name == "rho12":
        return dataclasses.replace(scenario, rho12=value)
    if name == "eta":
        return dataclasses.replace(
            scenario,
            material1=Material(m1.mean_strength, m1.cov, value),
            material2=Material(m2.mean_strength, m2.cov, value))
    if name == "strength_ratio":
        # mu2/mu1 = value with the combined mean strength held fixed.
        total = m1.mean_strength + m2.mean_strength
        mu1 = total / (1.0 + value)
        return dataclasses.replace(
            scenario,
            material1=Material(mu1, m1.cov, m1.post_failure_factor),
            material2=Material(total - mu1, m2.cov, m2.post_failure_factor))
    if name == "cov_ratio":
        # d1/d2 = value with the combined COV held fixed.
        total = m1.cov + m2.cov
        d2 = total / (1.0 + value)
        return dataclasses.replace(
            scenario,
            material1=Material(m1.mean_strength, total - d2, m1.post_failure_factor),
            material2=Material(m2.mean_strength, d2, m2.post_failure_factor))
    raise ScenarioError([f"unknown sweep axis: {name}"])


def _combinations(spec: SweepSpec):
    names = [a for a in SWEEP_AXES if a in spec.axes]
    combos = [()]
    for name in names:
        combos = [c + ((name, v),) for c in combos for v in spec.axes[name]]
    return names, combos


SWEEP_HEADER = ("pL", "fi", "rho12", "eta", "strength_ratio", "cov_ratio", "beta_t",
                "lam1", "lam2", "a1", "a2", "beta1", "beta_2g1", "beta_joint",
                "beta_sys", "p_sys", "material", "sf", "pc", "dc", "total",
                "feasible", "converged", "evaluations")


def _sweep_row(axis_values: dict, beta_t, result, areas) -> tuple:
    d = result.best
    bd = result.breakdown
    cb = result.costs
    sc_cells = tuple(axis_values.get(a, "") for a in SWEEP_AXES)
    return sc_cells + (
        "" if beta_t is None else beta_t,
        d.lam1, d.lam2) + tuple(areas) + (
        bd.beta1, bd.beta_2g1, bd.beta_joint, bd.beta_sys, bd.p_sys,
        cb.material, cb.sf, cb.pc, cb.dc, cb.total,
        int(result.feasible), int(result.converged), result.evaluations)


def run_sweep(spec: SweepSpec, jobs: int = 1) -> list:
    """One row per parameter combination (and per beta target for rbdo mode).

    Rows come out in canonical axis order regardless of ``jobs``. Invalid axis
    values are rejected during scenario construction, before any optimization.
    """
    names, combos = _combinations(spec)
    tasks = []
    for combo in combos:
        scenario = spec.base
        for name, value in combo:
            scenario = _apply_axis(scenario, name, value)
        if spec.mode == "ro":
            tasks.append((dict(combo), None, scenario))
        else:
            for beta_t in spec.beta_targets:
                tasks.append((dict(combo), beta_t, scenario))

    def solve(task):
        axis_values, beta_t, scenario = task
        if beta_t is None:
            res = ro_optimize(scenario)
        else:
            res = rbdo_optimize(scenario, beta_t)
        return _sweep_row(axis_values, beta_t, res, member_areas(res.best, scenario))

    if jobs > 1:
        with ThreadPoolExecutor(max_workers=jobs) as pool:
            return list(pool.map(solve, tasks))
    return [solve(t) for t in tasks]


@dataclass(frozen=True)
class GridSpec:
    lam1_start: float
    lam1_stop: float
    lam1_step: float
    lam2_start: float
    lam2_stop: float
    lam2_step: float
    quantity: str = "ro_total"  # or "beta_sys"

    def __post_init__(self):
        if self.lam1_step <= 0.0 or self.lam2_step <= 0.0:
            raise ValueError("grid steps must be > 0")
        if min(self.lam1_start, self.lam2_start) < 0.0:
            raise ValueError("grid ranges must be nonnegative")
        if self.lam1_stop < self.lam1_start or self.lam2_stop < self.lam2_start:
            raise ValueError("grid stop must be >= start")
        if self.quantity not in ("beta_sys", "ro_total"):
            raise ValueError(f"quantity must be 'beta_sys' or 'ro_total', got {self.quantity!r}")

    def axis(self, which: int) -> list:
        start, stop, step = ((self.lam1_start, self.lam1_stop, self.lam1_step)
                             if which == 1 else
                             (self.lam2_start, self.lam2_stop, self.lam2_step))
        n = int(math.floor((stop - start) / step + 1e-9)) + 1
        return [start + i * step for i in range(n)]


CONTOUR_HEADER = ("lam1", "lam2", "value")


def run_contour(scenario: Scenario, grid: GridSpec) -> list:
    """(lam1, lam2, value) triples in row-major order (lam1 varies slowest)."""
    xs = grid.axis(1)
    ys = grid.axis(2)
    if len(xs) * len(ys) > MAX_GRID_CELLS:
        raise ValueError(f"grid of {len(xs) * len(ys)} cells exceeds {MAX_GRID_CELLS}")
    rows = []
    for x in xs:
        for y in ys:
            design = Design(x, y)
            if grid.quantity == "beta_sys":
                value = system_failure_probability(design, scenario).beta_sys
            else:
                value = risk_objective(design, scenario).total
            rows.append((x, y, value))
    return rows


# ---------------------------------------------------------------------------
# Validation against the simulation oracle

VALIDATE_HEADER = ("case", "quantity", "closed_form", "simulated", "std_error",
                   "gap", "gap_se", "status", "note")

# Structural differences between the closed-form assembly and the simulated
# event tree. These are pre-registered: when such a comparison exceeds 3
# standard errors it is listed as a known gap instead of failing the run.
_KNOWN_GAPS = {
    "p_sys": "closed form multiplies per-application marginals and folds "
             "repeat-application collapse paths; the tree carries them exactly",
    "cost_sf": "closed-form service-failure accounting is calibrated to the "
               "reference tables, not to the tree",
    "cost_pc": "closed form multiplies per-application conditional marginals",
    "cost_total": "aggregates component gaps",
}
_PASSIVE_DC_NOTE = ("closed-form direct collapse carries a constant "
                    "standby-connection consequence that is not a tree path")
_CONVENTION_NOTE = ("correlated strengths: closed form uses the single-count "
                    "cross-covariance convention, the sampler the standard one")


@dataclass(frozen=True)
class ValidationRow:
    case: str
    quantity: str
    closed_form: float
    simulated: float
    std_error: float
    status: str  # "pass" | "known" | "fail"
    note: str = ""

    @property
    def gap(self) -> float:
        return self.simulated - self.closed_form

    @property
    def gap_se(self) -> float:
        if self.std_error == 0.0:
            return 0.0 if self.gap == 0.0 else math.inf
        return self.gap / self.std_error


def _compare(case, quantity, closed, simulated, se, note_extra="") -> ValidationRow:
    gap = simulated - closed
    within = abs(gap) <= 3.0 * se if se > 0.0 else gap == 0.0
    note = _KNOWN_GAPS.get(quantity, "")
    if note_extra:
        note = f"{note}; {note_extra}" if note else note_extra
    if within:
        return ValidationRow(case, quantity, closed, simulated, se, "pass", "")
    if note:
        return ValidationRow(case, quantity, closed, simulated, se, "known", note)
    return ValidationRow(case, quantity, closed, simulated, se, "fail", "")


def run_validate(scenario: Scenario, design: Design, n: int, seed: int,
                 case: str = "case") -> list:
    """Side-by-side closed form vs simulation with 3-standard-error verdicts."""
    bd = system_failure_probability(design, scenario)
    cb = risk_objective(design, scenario)
    mc = simulate_system(scenario, design, n, seed)
    convention = (_CONVENTION_NOTE
                  if scenario.rho12 > 0.0 and scenario.covariance_convention == AS_PRINTED
                  else "")
    rows = [
        _compare(case, "p_sys", bd.p_sys, mc.p_sys, mc.se_p_sys, convention),
        _compare(case, "cost_sf", cb.sf, mc.cost_sf, mc.se_cost_sf, convention),
        _compare(case, "cost_pc", cb.pc, mc.cost_pc, mc.se_cost_pc, convention),
    ]
    dc_extra = convention
    if scenario.redundancy == "passive":
        dc_extra = f"{_PASSIVE_DC_NOTE}; {convention}" if convention else _PASSIVE_DC_NOTE
        row = _compare(case, "cost_dc", cb.dc, mc.cost_dc, mc.se_cost_dc)
        if row.status == "fail":
            row = ValidationRow(case, "cost_dc", cb.dc, mc.cost_dc, mc.se_cost_dc,
                                "known", dc_extra)
        rows.append(row)
    else:
        row = _compare(case, "cost_dc", cb.dc, mc.cost_dc, mc.se_cost_dc)
        if row.status == "fail" and convention:
            row = ValidationRow(case, "cost_dc", cb.dc, mc.cost_dc, mc.se_cost_dc,
                                "known", convention)
        rows.append(row)
    rows.append(_compare(case, "cost_total", cb.total, mc.cost_total,
                         mc.se_cost_total, dc_extra))
    return rows


def battery_cases() -> list:
    """The validation battery: every active-passive parameter combination at
    two correlation levels, plus every passive combination, each at its
    reference-table optimum."""
    cases = []
    for col in table_columns(2):
        for rho in (0.0, 0.9):
            sc = scenario_for(2, col["id"])
            sc = dataclasses.replace(sc, rho12=rho)
            label = f"T2{col['id']}_rho{rho:g}"
            cases.append((label, sc, reference_design(2, col["id"])))
    for col in table_columns(5):
        label = f"T5{col['id']}"
        cases.append((label, scenario_for(5, col["id"]), reference_design(5, col["id"])))
    return cases


def validate_battery(n: int, seed: int, jobs: int = 1) -> list:
    cases = battery_cases()

    def solve(item):
        label, scenario, design = item
        return run_validate(scenario, design, n, seed, case=label)

    if jobs > 1:
        with ThreadPoolExecutor(max_workers=jobs) as pool:
            chunks = list(pool.map(solve, cases))
    else:
        chunks = [solve(c) for c in cases]
    return [row for chunk in chunks for row in chunk]

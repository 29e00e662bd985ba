"""Domain model: materials, loads, latent connection failure, scenarios, designs.

Member sizing follows partial load factors. An actively shared bar i is
proportioned so that ``a_i * mu_i = lam_i * mu_P``. A passive standby bar is
proportioned for the amplified load it receives on engagement,
``a_2 = lam_2 * f_i * mu_P / mu_2``.
"""

from __future__ import annotations

import json
from dataclasses import dataclass, field

from .gauss import std_normal_quantile

__all__ = [
    "ACTIVE_PASSIVE", "PASSIVE", "AS_PRINTED", "STANDARD",
    "Material", "LoadModel", "LatentFailure", "CostMultipliers",
    "Scenario", "Design", "ScenarioError",
    "member_area", "member_areas", "usual_design_area", "load_fraction",
    "scenario_from_dict", "scenario_from_json",
]

ACTIVE_PASSIVE = "active_passive"
PASSIVE = "passive"

# Cross-covariance convention for the correlated-strength variance terms:
# "as_printed" keeps a single eta*a1*a2*sigma1*sigma2*rho12 term, "standard"
# applies the usual bilinear factor 2.
AS_PRINTED = "as_printed"
STANDARD = "standard"


class ScenarioError(ValueError):
    """Invalid scenario input; ``violations`` names each broken invariant."""

    def __init__(self, violations):
        self.violations = list(violations)
        super().__init__("; ".join(self.violations))


@dataclass(frozen=True)
class Material:
    """Gaussian strength model with fragile-ductile post-failure behaviour."""

    mean_strength: float
    cov: float
    post_failure_factor: float  # 0 = fragile, 1 = ductile

    @property
    def std_dev(self) -> float:
        return self.cov * self.mean_strength


@dataclass(frozen=True)
class LoadModel:
    """Two independent, identically distributed Gaussian load pulses.

    ``impact_factor`` is the dynamic amplification applied to the load a
    surviving member sees immediately after a sudden transfer.
    """

    mean: float
    cov: float
    impact_factor: float = 1.0

    @property
    def std_dev(self) -> float:
        return self.cov * self.mean


@dataclass(frozen=True)
class LatentFailure:
    """Design-independent connection failure probabilities (one per bar).

    Connection failure events are mutually independent and can occur only on
    first loading of the connection.
    """

    p1: float = 0.0
    p2: float = 0.0

    @property
    def beta_latent(self) -> float:
        """-Phi^-1 of the worse connection probability."""
        return -std_normal_quantile(max(self.p1, self.p2))


@dataclass(frozen=True)
class CostMultipliers:
    """Failure-consequence multipliers relative to reference material cost."""

    k_sf: float = 2.0    # service failure: replace one member
    k_pc: float = 20.0   # progressive (stepped, with warning) collapse
    k_dc: float = 100.0  # direct (without warning) collapse


def _mat_violations(m: Material, name: str) -> list:
    v = []
    if not m.mean_strength > 0.0:
        v.append(f"{name}.mean must be > 0")
    if not m.cov > 0.0:
        v.append(f"{name}.cov must be > 0")
    if not 0.0 <= m.post_failure_factor <= 1.0:
        v.append(f"{name}.eta must lie in [0, 1]")
    return v


@dataclass(frozen=True)
class Scenario:
    """Full problem definition for a two-bar redundant system."""

    material1: Material
    material2: Material
    load: LoadModel
    rho12: float = 0.0
    latent: LatentFailure = field(default_factory=LatentFailure)
    redundancy: str = ACTIVE_PASSIVE
    standby_engages: bool = True  # passive only: standby engaged before bar-1 failure
    costs: CostMultipliers = field(default_factory=CostMultipliers)
    covariance_convention: str = AS_PRINTED

    def __post_init__(self):
        v = []
        v += _mat_violations(self.material1, "material1")
        v += _mat_violations(self.material2, "material2")
        if self.material1.post_failure_factor != self.material2.post_failure_factor:
            v.append("material1.eta must equal material2.eta (mixed assemblies unsupported)")
        if not self.load.mean > 0.0:
            v.append("load.mean must be > 0")
        if not self.load.cov > 0.0:
            v.append("load.cov must be > 0 (beta denominators need sigma_P > 0)")
        if not self.load.impact_factor >= 1.0:
            v.append("load.impact must be >= 1")
        if not 0.0 <= self.rho12 < 1.0:
            v.append("rho12 must lie in [0, 1)")
        for nm, p in (("pL1", self.latent.p1), ("pL2", self.latent.p2)):
            if not 0.0 <= p <= 1.0:
                v.append(f"latent.{nm} must lie in [0, 1]")
        if self.redundancy not in (ACTIVE_PASSIVE, PASSIVE):
            v.append(f"redundancy must be '{ACTIVE_PASSIVE}' or '{PASSIVE}'")
        if self.covariance_convention not in (AS_PRINTED, STANDARD):
            v.append(f"covariance_convention must be '{AS_PRINTED}' or '{STANDARD}'")
        c = self.costs
        if not c.k_sf >= 1.0:
            v.append("costs.kSF must be >= 1")
        if not (c.k_dc > c.k_pc > c.k_sf):
            v.append("costs must be ordered kDC > kPC > kSF")
        if v:
            raise ScenarioError(v)

    @property
    def cov_cross_factor(self) -> float:
        return 2.0 if self.covariance_convention == STANDARD else 1.0


@dataclass(frozen=True)
class Design:
    """Decision vector of partial load factors.

    For passive scenarios lam1 is the active-member factor and lam2 the
    standby-member factor.
    """

    lam1: float
    lam2: float

    def __post_init__(self):
        if self.lam1 < 0.0 or self.lam2 < 0.0:
            raise ValueError(f"load factors must be >= 0, got ({self.lam1}, {self.lam2})")

    def swapped(self) -> "Design":
        return Design(self.lam2, self.lam1)


def member_area(lam: float, bar: int, scenario: Scenario) -> float:
    """Cross-section area of one bar under independent proportioning.

    Bar 1, and bar 2 of an active-passive system: a = lam * mu_P / mu_i.
    Bar 2 of a passive system is sized for the amplified engagement load:
    a = lam * f_i * mu_P / mu_2.
    """
    if lam < 0.0:
        raise ValueError(f"load factor must be >= 0, got {lam}")
    if bar not in (1, 2):
        raise ValueError(f"bar must be 1 or 2, got {bar}")
    mat = scenario.material1 if bar == 1 else scenario.material2
    a = lam * scenario.load.mean / mat.mean_strength
    if bar == 2 and scenario.redundancy == PASSIVE:
        a *= scenario.load.impact_factor
    return a


def member_areas(design: Design, scenario: Scenario) -> tuple:
    return (member_area(design.lam1, 1, scenario),
            member_area(design.lam2, 2, scenario))


def usual_design_area(lam_e: float, bar: int, scenario: Scenario) -> float:
    """Conventional proportional-sharing area: a = lam_E * mu_P / (2 * mu_i)."""
    if lam_e < 0.0:
        raise ValueError(f"load factor must be >= 0, got {lam_e}")
    mat = scenario.material1 if bar == 1 else scenario.material2
    return lam_e * scenario.load.mean / (2.0 * mat.mean_strength)


def load_fraction(a1: float, a2: float, total: float) -> tuple:
    """Load shares of two equally stiff bars at equal displacement.

    Returns (N1, N2) with N1 + N2 == total exactly. Requires a1 + a2 > 0.
    """
    if a1 < 0.0 or a2 < 0.0 or a1 + a2 <= 0.0:
        raise ValueError("areas must be >= 0 with a positive sum")
    n1 = total * a1 / (a1 + a2)
    n2 = total - n1
    # regenerating the first share from the rounded complement makes the pair
    # sum to the load without a 1-ulp leak
    return total - n2, n2


# ---------------------------------------------------------------------------
# JSON ingestion


def _take(d: dict, context: str, required, optional=()):
    unknown = set(d) - set(required) - set(optional)
    if unknown:
        raise ScenarioError([f"unknown field(s) in {context}: {', '.join(sorted(unknown))}"])
    missing = [k for k in required if k not in d]
    if missing:
        raise ScenarioError([f"missing field(s) in {context}: {', '.join(missing)}"])


def _material(d, name) -> Material:
    if not isinstance(d, dict):
        raise ScenarioError([f"{name} must be an object"])
    _take(d, name, required=("mean", "cov", "eta"))
    return Material(float(d["mean"]), float(d["cov"]), float(d["eta"]))


def scenario_from_dict(d: dict) -> Scenario:
    """Build a validated Scenario from its JSON object form.

    Unknown fields anywhere in the document are rejected. Shape::

        {"material1": {"mean":, "cov":, "eta":}, "material2": {...},
         "load": {"mean":, "cov":, "impact":}, "rho12": 0.0,
         "latent": {"pL1":, "pL2":}, "redundancy": "active_passive"|"passive",
         "standby_engages": true, "costs": {"kSF":, "kPC":, "kDC":},
         "covariance_convention": "as_printed"|"standard"}
    """
    if not isinstance(d, dict):
        raise ScenarioError(["scenario document must be a JSON object"])
    _take(d, "scenario",
          required=("material1", "material2", "load"),
          optional=("rho12", "latent", "redundancy", "standby_engages",
                    "costs", "covariance_convention"))
    load_d = d["load"]
    if not isinstance(load_d, dict):
        raise ScenarioError(["load must be an object"])
    _take(load_d, "load", required=("mean", "cov"), optional=("impact",))
    latent_d = d.get("latent", {})
    if not isinstance(latent_d, dict):
        raise ScenarioError(["latent must be an object"])
    _take(latent_d, "latent", required=(), optional=("pL1", "pL2"))
    costs_d = d.get("costs", {})
    if not isinstance(costs_d, dict):
        raise ScenarioError(["costs must be an object"])
    _take(costs_d, "costs", required=(), optional=("kSF", "kPC", "kDC"))
    return Scenario(
        material1=_material(d["material1"], "material1"),
        material2=_material(d["material2"], "material2"),
        load=LoadModel(float(load_d["mean"]), float(load_d["cov"]),
                       float(load_d.get("impact", 1.0))),
        rho12=float(d.get("rho12", 0.0)),
        latent=LatentFailure(float(latent_d.get("pL1", 0.0)),
                             float(latent_d.get("pL2", 0.0))),
        redundancy=d.get("redundancy", ACTIVE_PASSIVE),
        standby_engages=bool(d.get("standby_engages", True)),
        costs=CostMultipliers(float(costs_d.get("kSF", 2.0)),
                              float(costs_d.get("kPC", 20.0)),
                              float(costs_d.get("kDC", 100.0))),
        covariance_convention=d.get("covariance_convention", AS_PRINTED),
    )


def scenario_from_json(path) -> Scenario:
    with open(path, "r", encoding="utf-8") as fh:
        try:
            doc = json.load(fh)
        except json.JSONDecodeError as exc:
            raise ScenarioError([f"config is not valid JSON: {exc}"]) from exc
    return scenario_from_dict(doc)

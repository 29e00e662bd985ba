"""Bundled reference tables and their reproduction machinery.

The package ships the published reference results (optimal designs together
with their reliability and cost breakdowns) as a data file with per-cell
tolerances. ``reproduce_table`` reruns the risk optimization for every column
and compares both the recovered design and the formula values at the
reference design against the stored cells. Cells annotated ``known`` in the
data file are internally inconsistent in the source material; they are
reported with their deviation but do not fail the run.
"""

from __future__ import annotations

import json
from dataclasses import dataclass
from importlib import resources

from .cost import risk_objective
from .model import (
    CostMultipliers,
    Design,
    LatentFailure,
    LoadModel,
    Material,
    Scenario,
    member_areas,
)
from .optimize import ro_optimize
from .reliability import system_failure_probability

__all__ = [
    "TABLE_IDS", "CELLS", "CellCheck", "ReproduceReport",
    "load_tables", "table_columns", "scenario_for", "reference_design",
    "reference_scenario", "reproduce_table",
]

TABLE_IDS = (2, 3, 4, 5)

# Cells compared per column: the design from the optimizer, everything else
# evaluated at the reference design.
CELLS = ("lam1", "lam2", "a1", "a2", "beta1", "beta_2g1", "beta_joint",
         "beta_sys", "material", "sf", "pc", "dc", "total")

_DATA = None


def load_tables() -> dict:
    global _DATA
    if _DATA is None:
        text = resources.files("twobar").joinpath("data/paper_tables.json").read_text("utf-8")
        _DATA = json.loads(text)
    return _DATA


def _table(table_id: int) -> dict:
    data = load_tables()
    key = str(table_id)
    if key not in data["tables"]:
        raise ValueError(f"unknown table id {table_id}; expected one of {TABLE_IDS}")
    return data["tables"][key]


def table_columns(table_id: int) -> list:
    return _table(table_id)["columns"]


def _build_scenario(tab: dict, col: dict) -> Scenario:
    d = load_tables()["defaults"]
    return Scenario(
        material1=Material(tab["mu1"], tab["d1"], col["eta"]),
        material2=Material(tab["mu2"], tab["d2"], col["eta"]),
        load=LoadModel(d["muP"], d["dP"], col["fi"]),
        rho12=col.get("rho12", d["rho12"]),
        latent=LatentFailure(col["pL"], col["pL"]),
        redundancy=tab["kind"],
        costs=CostMultipliers(d["kSF"], d["kPC"], d["kDC"]),
    )


def scenario_for(table_id: int, column_id: str) -> Scenario:
    tab = _table(table_id)
    for col in tab["columns"]:
        if col["id"] == column_id:
            return _build_scenario(tab, col)
    raise ValueError(f"table {table_id} has no column {column_id!r}")


def reference_design(table_id: int, column_id: str) -> Design:
    for col in _table(table_id)["columns"]:
        if col["id"] == column_id:
            return Design(col["expected"]["lam1"], col["expected"]["lam2"])
    raise ValueError(f"table {table_id} has no column {column_id!r}")


def reference_scenario() -> Scenario:
    """Default demonstration scenario (first reference column)."""
    return scenario_for(2, "c1")


@dataclass(frozen=True)
class CellCheck:
    table: int
    column: str
    cell: str
    computed: float
    reference: float
    deviation: float
    tolerance: float
    status: str  # "ok" | "fail" | "known"
    note: str = ""


@dataclass(frozen=True)
class ReproduceReport:
    table: int
    checks: list
    n_ok: int
    n_fail: int
    n_known: int

    @property
    def passed(self) -> bool:
        return self.n_fail == 0


def _computed_cells(scenario: Scenario, optimum: Design, reference: Design) -> dict:
    a1, a2 = member_areas(reference, scenario)
    bd = system_failure_probability(reference, scenario)
    cb = risk_objective(reference, scenario)
    return {
        "lam1": optimum.lam1, "lam2": optimum.lam2,
        "a1": a1, "a2": a2,
        "beta1": bd.beta1, "beta_2g1": bd.beta_2g1,
        "beta_joint": bd.beta_joint, "beta_sys": bd.beta_sys,
        "material": cb.material, "sf": cb.sf, "pc": cb.pc, "dc": cb.dc,
        "total": cb.total,
    }


def reproduce_table(table_id: int) -> ReproduceReport:
    """Re-optimize every column and compare against the stored reference cells."""
    tab = _table(table_id)
    tolerances = load_tables()["tolerances"]
    checks = []
    n_ok = n_fail = n_known = 0
    for col in tab["columns"]:
        scenario = _build_scenario(tab, col)
        expected = col["expected"]
        reference = Design(expected["lam1"], expected["lam2"])
        optimum = ro_optimize(scenario).best
        computed = _computed_cells(scenario, optimum, reference)
        known = col.get("known", {})
        cell_tol = col.get("cell_tolerances", {})
        for cell in CELLS:
            tol = cell_tol.get(cell, tolerances[cell])
            dev = computed[cell] - expected[cell]
            if cell in known:
                status, note = "known", known[cell]
                n_known += 1
            elif abs(dev) <= tol:
                status, note = "ok", ""
                n_ok += 1
            else:
                status, note = "fail", ""
                n_fail += 1
            checks.append(CellCheck(table_id, col["id"], cell, computed[cell],
                                    expected[cell], dev, tol, status, note))
    return ReproduceReport(table_id, checks, n_ok, n_fail, n_known)

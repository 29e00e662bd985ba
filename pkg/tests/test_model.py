import dataclasses

import numpy as np
import pytest

from twobar import (
    Design,
    LatentFailure,
    ScenarioError,
    load_fraction,
    member_area,
    scenario_from_dict,
    usual_design_area,
)

from conftest import make_scenario


def scenario_doc(**overrides):
    doc = {
        "material1": {"mean": 5.0, "cov": 0.1, "eta": 0.0},
        "material2": {"mean": 5.0, "cov": 0.1, "eta": 0.0},
        "load": {"mean": 10.0, "cov": 0.3, "impact": 1.0},
        "rho12": 0.0,
        "latent": {"pL1": 0.001, "pL2": 0.001},
        "redundancy": "active_passive",
        "standby_engages": True,
        "costs": {"kSF": 2.0, "kPC": 20.0, "kDC": 100.0},
        "covariance_convention": "as_printed",
    }
    doc.update(overrides)
    return doc


class TestMemberArea:
    def test_shared_sizing(self):
        sc = make_scenario()
        assert member_area(1.110, 1, sc) == pytest.approx(2.220)

    def test_zero_factor(self):
        sc = make_scenario()
        assert member_area(0.0, 1, sc) == 0.0
        assert member_area(0.0, 2, sc) == 0.0

    def test_standby_sizing_includes_impact(self):
        sc = make_scenario(redundancy="passive", fi=1.3)
        assert member_area(0.435, 2, sc) == pytest.approx(1.131)

    def test_linearity(self):
        sc = make_scenario(mu1=3.0, mu2=7.0)
        for lam in (0.3, 1.0, 2.4):
            assert member_area(2 * lam, 1, sc) == pytest.approx(2 * member_area(lam, 1, sc))

    def test_standby_equals_shared_times_impact(self):
        shared = make_scenario(fi=1.3)
        standby = make_scenario(redundancy="passive", fi=1.3)
        for lam in (0.0, 0.5, 1.7):
            assert member_area(lam, 2, standby) == pytest.approx(
                1.3 * member_area(lam, 2, shared))

    def test_negative_factor_rejected(self):
        sc = make_scenario()
        with pytest.raises(ValueError):
            member_area(-0.1, 1, sc)
        with pytest.raises(ValueError):
            Design(-0.1, 1.0)


class TestUsualDesign:
    def test_values(self):
        sc = make_scenario()
        assert usual_design_area(2.2, 1, sc) == pytest.approx(2.2)
        assert usual_design_area(0.0, 1, sc) == 0.0
        sc2 = make_scenario(mu1=1.0)
        assert usual_design_area(1.0, 1, sc2) == pytest.approx(5.0)


class TestLoadFraction:
    def test_equal_split(self):
        assert load_fraction(2.0, 2.0, 10.0) == (5.0, 5.0)

    def test_proportional_split(self):
        n1, n2 = load_fraction(2.0, 1.0, 9.0)
        assert n1 == pytest.approx(6.0)
        assert n2 == pytest.approx(3.0)

    def test_single_path(self):
        assert load_fraction(1.5, 0.0, 7.0) == (7.0, 0.0)

    def test_zero_total_area_rejected(self):
        with pytest.raises(ValueError):
            load_fraction(0.0, 0.0, 5.0)

    def test_shares_sum_exactly(self):
        rng = np.random.default_rng(5)
        for _ in range(500):
            a1, a2 = rng.uniform(0.0, 5.0, 2)
            if a1 + a2 == 0.0:
                continue
            total = rng.uniform(-20.0, 20.0)
            n1, n2 = load_fraction(a1, a2, total)
            assert n1 + n2 == total


class TestScenarioValidation:
    def test_default_document_accepted(self):
        sc = scenario_from_dict(scenario_doc())
        assert sc.material1.mean_strength == 5.0
        assert sc.load.impact_factor == 1.0

    def test_full_correlation_rejected(self):
        with pytest.raises(ScenarioError, match=r"rho12 must lie in \[0, 1\)"):
            scenario_from_dict(scenario_doc(rho12=1.0))

    def test_zero_load_cov_rejected(self):
        doc = scenario_doc(load={"mean": 10.0, "cov": 0.0, "impact": 1.0})
        with pytest.raises(ScenarioError, match="load.cov"):
            scenario_from_dict(doc)

    def test_unknown_field_rejected(self):
        with pytest.raises(ScenarioError, match="unknown field"):
            scenario_from_dict(scenario_doc(extra=1))
        doc = scenario_doc()
        doc["load"]["impct"] = 1.3
        with pytest.raises(ScenarioError, match="unknown field"):
            scenario_from_dict(doc)

    def test_mixed_post_failure_rejected(self):
        doc = scenario_doc(material2={"mean": 5.0, "cov": 0.1, "eta": 1.0})
        with pytest.raises(ScenarioError, match="eta"):
            scenario_from_dict(doc)

    def test_cost_ordering_enforced(self):
        doc = scenario_doc(costs={"kSF": 2.0, "kPC": 200.0, "kDC": 100.0})
        with pytest.raises(ScenarioError, match="kDC > kPC > kSF"):
            scenario_from_dict(doc)

    def test_violations_are_collected(self):
        doc = scenario_doc(rho12=1.5)
        doc["latent"] = {"pL1": 2.0, "pL2": 0.0}
        with pytest.raises(ScenarioError) as err:
            scenario_from_dict(doc)
        assert len(err.value.violations) == 2

    def test_defaults_applied(self):
        doc = {
            "material1": {"mean": 5.0, "cov": 0.1, "eta": 0.0},
            "material2": {"mean": 5.0, "cov": 0.1, "eta": 0.0},
            "load": {"mean": 10.0, "cov": 0.3},
        }
        sc = scenario_from_dict(doc)
        assert sc.rho12 == 0.0
        assert sc.latent == LatentFailure(0.0, 0.0)
        assert sc.costs.k_dc == 100.0
        assert sc.standby_engages is True


def test_latent_reliability_index():
    assert LatentFailure(1e-3, 1e-3).beta_latent == pytest.approx(3.0902323, abs=1e-6)
    assert LatentFailure(1e-3, 1e-2).beta_latent == pytest.approx(2.3263479, abs=1e-6)


def test_scenarios_are_immutable(shared_scenario):
    with pytest.raises(dataclasses.FrozenInstanceError):
        shared_scenario.rho12 = 0.5

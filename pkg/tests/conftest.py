import numpy as np
import pytest

from twobar import (
    CostMultipliers,
    Design,
    LatentFailure,
    LoadModel,
    Material,
    Scenario,
)
from twobar.tables import reference_design, scenario_for


@pytest.fixture
def shared_scenario():
    """Symmetric shared-load scenario at the first reference column."""
    return scenario_for(2, "c1")


@pytest.fixture
def shared_design():
    return reference_design(2, "c1")


@pytest.fixture
def standby_scenario():
    """Standby scenario with impact amplification (second reference column)."""
    return scenario_for(5, "c2")


def make_scenario(mu1=5.0, mu2=5.0, d1=0.1, d2=0.1, eta=0.0, muP=10.0, dP=0.3,
                  fi=1.0, rho=0.0, pL1=0.001, pL2=0.001,
                  redundancy="active_passive", standby_engages=True,
                  costs=(2.0, 20.0, 100.0)):
    return Scenario(
        material1=Material(mu1, d1, eta),
        material2=Material(mu2, d2, eta),
        load=LoadModel(muP, dP, fi),
        rho12=rho,
        latent=LatentFailure(pL1, pL2),
        redundancy=redundancy,
        standby_engages=standby_engages,
        costs=CostMultipliers(*costs),
    )


def random_scenario(rng: np.random.Generator) -> Scenario:
    eta = float(rng.choice([0.0, 1.0, rng.uniform()]))
    return make_scenario(
        mu1=rng.uniform(1.0, 10.0),
        mu2=rng.uniform(1.0, 10.0),
        d1=rng.uniform(0.02, 0.4),
        d2=rng.uniform(0.02, 0.4),
        eta=eta,
        muP=rng.uniform(5.0, 20.0),
        dP=rng.uniform(0.05, 0.5),
        fi=rng.uniform(1.0, 1.5),
        rho=rng.uniform(0.0, 0.95),
        pL1=10.0 ** rng.uniform(-6.0, -0.31),
        pL2=10.0 ** rng.uniform(-6.0, -0.31),
        redundancy=str(rng.choice(["active_passive", "passive"])),
        standby_engages=bool(rng.integers(0, 2)),
    )


def random_design(rng: np.random.Generator) -> Design:
    return Design(float(rng.uniform(0.0, 3.0)), float(rng.uniform(0.0, 3.0)))

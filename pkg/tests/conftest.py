import sys
from pathlib import Path

import numpy as np
import pytest

sys.path.insert(0, str(Path(__file__).parent))

from pacerose import ModelSpec
from pacerose.synth import (
    SyntheticScenario,
    canonicalized,
    harmonic_histogram,
)

STANDARD_SPEC = ModelSpec(k_max=8, bins=32, network_point_symmetric=True)

# fixed raw ground truth; canonicalization projects it onto the
# identifiable subspace, after which it is exactly recoverable
RAW_ALPHA = np.array([
    30.0, -12.0, 18.0, 8.0, -10.0, 6.0, 9.0, -7.0,
    12.0, 5.0, -8.0, 11.0, 7.0, -9.0, 6.0, 10.0,
])
RAW_BETA = np.array([-14.0, 6.0, 9.0, -5.0, 4.0, -7.0, 8.0, -6.0])
RAW_GAMMA = 240.0


def standard_demand(bins: int = 32):
    return harmonic_histogram(bins, [0.06] * 8, [0.05] * 8)


def standard_network(bins: int = 32):
    return harmonic_histogram(
        bins,
        [0.0, 0.10, 0.0, 0.08, 0.0, 0.07, 0.0, 0.06],
        [0.0, 0.07, 0.0, 0.06, 0.0, 0.05, 0.0, 0.08],
        point_symmetric=True,
    )


def standard_scenario(n_trips=5000, noise_std=0.0, seed=42, canonical=True):
    scenario = SyntheticScenario(
        spec=STANDARD_SPEC,
        gamma=RAW_GAMMA,
        alpha=RAW_ALPHA,
        beta=RAW_BETA,
        demand_hist=standard_demand(),
        network_hist=standard_network(),
        n_trips=n_trips,
        noise_std=noise_std,
        seed=seed,
    )
    return canonicalized(scenario) if canonical else scenario


@pytest.fixture
def scenario():
    return standard_scenario()

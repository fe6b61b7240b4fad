import os
from pathlib import Path

import numpy as np
import pytest

import varioscope as vs


@pytest.fixture
def small_dataset():
    rng = np.random.default_rng(42)
    n = 30
    return vs.SpatialDataset(
        x=rng.uniform(0, 1000, n),
        y=rng.uniform(0, 1000, n),
        outcome=rng.normal(0, 2, n),
        source_name="fixture",
    )


@pytest.fixture
def sim_dataset():
    """A 300-point field with genuine spatial structure."""
    coords = vs.uniform_coords(300, 2000, seed=7)
    spec = vs.FieldSpec(vs.ExpParams(1.0, 2.0, 200.0), coords, seed=8)
    return vs.simulated_dataset(spec)


def birth_data_path() -> Path | None:
    """The paper-scale dataset is an optional external input."""
    env = os.environ.get("VARIOSCOPE_BIRTH_DATA")
    candidates = [Path(env)] if env else []
    candidates += [Path(__file__).parent / "data" / "birth.csv"]
    for c in candidates:
        if c.is_file():
            return c
    return None

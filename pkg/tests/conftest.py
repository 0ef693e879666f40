import math

import numpy as np
import pytest

from lattice import build_preset, square_layout, Grouping, all_interaction_matrices
from settings import Settings


@pytest.fixture
def rng():
    return np.random.default_rng(7)


@pytest.fixture
def g1():
    return build_preset("G1")


@pytest.fixture
def g1_matrices(g1):
    return all_interaction_matrices(g1.layout, g1.grouping)


@pytest.fixture
def g2():
    return build_preset("G2")


@pytest.fixture
def nn_line():
    """Four qubits on a line with nearest-neighbour couplings."""
    return square_layout(4, 1, cutoff=1.0)


@pytest.fixture
def fast_settings(tmp_path):
    """Settings with small optimizer budgets and a temporary output dir."""
    return Settings(
        OUTPUT_DIR=str(tmp_path / "out"),
        OPTIMIZER_STARTS=8,
        RUN_ALL_CONCURRENCY=2,
    )



import pytest

from takagi.stats import grid_experiment


@pytest.fixture(scope="session")
def grid_depth6():
    """Depth-6 classification sweep (8193 ordinates, ~20 s), shared because
    several end-to-end checks read different statistics off the same report."""
    return grid_experiment(6)

"""Shared fixtures: small deterministic synthetic datasets."""

import pytest

from vesselsyn.synopses import SynopsisConfig
from vesselsyn.synthetic import make_fleet


@pytest.fixture()
def default_config():
    return SynopsisConfig()


@pytest.fixture(scope="session")
def fleet_tracks():
    """Three-vessel, 500-report dataset that exercises every annotation type.

    Session-scoped because several modules evaluate it; tests must treat it
    as read-only.
    """
    return make_fleet(500, 3, seed=11)

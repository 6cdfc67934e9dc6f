"""
Shared fixtures and hypothesis profiles
Select a profile with HYPOTHESIS_PROFILE=fast|default|ci
"""

import os

import pytest
from hypothesis import HealthCheck, settings

from beadcalc.graphs import dumbbell, strut, tadpole, tetrahedron, theta, vortex, wheel
from database import ResultsStore

settings.register_profile("default", max_examples=50, deadline=None)
settings.register_profile("fast", max_examples=10, deadline=None)
settings.register_profile("ci", max_examples=200, deadline=None,
                          suppress_health_check=[HealthCheck.too_slow])
settings.load_profile(os.environ.get("HYPOTHESIS_PROFILE", "default"))


@pytest.fixture
def theta_graph():
    return theta()


@pytest.fixture
def strut_graph():
    return strut()


@pytest.fixture
def vortex_graph():
    return vortex()


@pytest.fixture
def wheel_graph():
    return wheel(3)


@pytest.fixture
def tadpole_graph():
    return tadpole()


@pytest.fixture
def dumbbell_graph():
    return dumbbell()


@pytest.fixture
def k4_graph():
    return tetrahedron()


@pytest.fixture
def store(tmp_path):
    results = ResultsStore(str(tmp_path / "results.db"))
    results.initialize_database()
    return results

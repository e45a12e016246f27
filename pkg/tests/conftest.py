from __future__ import annotations

import os

import pytest
from hypothesis import HealthCheck, settings

# the first solver call compiles the search kernel, so per-example deadlines
# would measure compilation rather than the property
settings.register_profile("default", deadline=None, suppress_health_check=[HealthCheck.too_slow])
settings.register_profile("thorough", deadline=None, max_examples=1000,
                          suppress_health_check=[HealthCheck.too_slow])
settings.load_profile(os.environ.get("HYPOTHESIS_PROFILE", "default"))


@pytest.hookimpl(hookwrapper=True)
def pytest_runtest_makereport(item, call):
    # exposes the call-phase result to fixtures, for the acceptance report lines
    outcome = yield
    rep = outcome.get_result()
    if rep.when == "call":
        item.rep_call = rep

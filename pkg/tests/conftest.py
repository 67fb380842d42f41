import numpy as np
import pytest
from hypothesis import HealthCheck, settings

from qudit_epi.states import random_state

settings.register_profile(
    "repo",
    deadline=None,
    derandomize=True,
    max_examples=60,
    suppress_health_check=[HealthCheck.too_slow],
)
settings.load_profile("repo")

ACCEPTANCE_LINES = []


@pytest.fixture
def rng():
    return np.random.default_rng(20240601)


@pytest.fixture
def state_pair(rng):
    def make(d, full_rank=False):
        r1 = d if full_rank else int(rng.integers(1, d + 1))
        r2 = d if full_rank else int(rng.integers(1, d + 1))
        return random_state(d, r1, rng), random_state(d, r2, rng)
    return make


def pytest_terminal_summary(terminalreporter):
    if ACCEPTANCE_LINES:
        terminalreporter.section("acceptance criteria")
        for line in ACCEPTANCE_LINES:
            terminalreporter.write_line(line)

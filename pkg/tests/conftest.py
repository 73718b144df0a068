import random

import pytest
from hypothesis import HealthCheck, settings

settings.register_profile(
    "ddlab",
    max_examples=60,
    deadline=None,
    derandomize=True,
    suppress_health_check=[HealthCheck.too_slow],
)
settings.load_profile("ddlab")


@pytest.fixture
def rng():
    return random.Random(1729)

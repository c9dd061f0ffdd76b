"""Shared fixtures and hypothesis profiles."""

import os

import pytest
from hypothesis import HealthCheck, settings

from arquiver import corpus

settings.register_profile(
    "ci", max_examples=60, suppress_health_check=[HealthCheck.too_slow]
)
settings.register_profile("dev", max_examples=15)
settings.load_profile(os.getenv("HYPOTHESIS_PROFILE", "ci"))


@pytest.fixture(scope="session")
def alg_a2():
    return corpus.a2()


@pytest.fixture(scope="session")
def alg_a3():
    return corpus.a3()


@pytest.fixture(scope="session")
def alg_kronecker():
    return corpus.kronecker()


@pytest.fixture(scope="session")
def alg_loop():
    return corpus.loop()

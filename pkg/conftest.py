"""Shared pytest configuration and fixtures"""

import numpy as np
import pytest

from src.group.params import make_group
from src.utils.settings import get_settings


def pytest_addoption(parser):
    parser.addoption("--runslow", action="store_true", default=False, help="run slow exhaustive checks")


def pytest_configure(config):
    config.addinivalue_line("markers", "slow: large seeded corpora and long exhaustive scans")


def pytest_collection_modifyitems(config, items):
    if config.getoption("--runslow"):
        return
    skip_slow = pytest.mark.skip(reason="needs --runslow")
    for item in items:
        if "slow" in item.keywords:
            item.add_marker(skip_slow)


@pytest.fixture
def z3_2():
    return make_group(3, 2)


@pytest.fixture
def z5_2():
    return make_group(5, 2)


@pytest.fixture
def z3_3():
    return make_group(3, 3)


@pytest.fixture
def rng():
    return np.random.default_rng(get_settings().seed)

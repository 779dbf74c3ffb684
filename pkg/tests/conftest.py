"""
Shared pytest fixtures for engine and lab tests.

Exhaustive scans run in-process (jobs=1) unless a test is about parallelism.
"""
import os
import sys

import numpy as np
import pytest

ROOT = os.path.join(os.path.dirname(__file__), '..')
for _path in (os.path.join(ROOT, 'engine-lite'), os.path.join(ROOT, 'lab-lite')):
    if _path not in sys.path:
        sys.path.insert(0, _path)

from sortengine.machine import CLASSICAL, DEFAULT, PatternSet  # noqa: E402


@pytest.fixture
def default():
    """s_{123,132}"""
    return DEFAULT


@pytest.fixture
def classical():
    """West's map s_21"""
    return CLASSICAL


@pytest.fixture
def rng():
    return np.random.default_rng(20240607)


@pytest.fixture
def pattern_pairs():
    """Every pattern set made of two distinct patterns of length 3."""
    import itertools
    from sortengine.perms import symmetric_group
    return [PatternSet(pair) for pair in itertools.combinations(symmetric_group(3), 2)]


@pytest.fixture(autouse=True)
def isolated_config(monkeypatch):
    """Keep the developer's SORTLAB_* variables and config file out of tests."""
    for name in list(os.environ):
        if name.startswith('SORTLAB_'):
            monkeypatch.delenv(name, raising=False)
    from sortlab import config
    missing = os.path.join(os.path.dirname(__file__), 'no-such-config.yaml')
    config.use(missing)
    yield
    config.use(None)


def pytest_configure(config):
    """Configure custom pytest markers."""
    config.addinivalue_line(
        "markers", "unit: Fast tests of a single module"
    )
    config.addinivalue_line(
        "markers", "integration: End-to-end runs of the command line"
    )
    config.addinivalue_line(
        "markers", "slow: Exhaustive or sampled runs that take significant time"
    )

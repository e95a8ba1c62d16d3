#!/usr/bin/env python3
"""
Pytest configuration and fixtures
"""

import json
import os
import sys
import pytest
from pathlib import Path

# Add parent directory to path
sys.path.insert(0, str(Path(__file__).parent.parent))

from anterial.io import load_default_models, DATA_DIR
from tests.helpers import graph_of


def pytest_configure(config):
    config.addinivalue_line("markers", "slow: acceptance-scale sweeps (deselect with -m 'not slow')")


@pytest.fixture
def make_graph():
    """Graph builder taking "u type v" edge strings."""
    return graph_of


@pytest.fixture
def write_graph(tmp_path):
    """Write graph JSON to a temp file and return its path."""
    def _write(nodes, edges, name="g.json"):
        path = tmp_path / name
        path.write_text(json.dumps({
            "nodes": list(nodes),
            "edges": [{"u": u, "v": v, "type": t} for u, v, t in edges],
        }))
        return str(path)
    return _write


@pytest.fixture
def inducing_graph():
    """1<->2<->3<->4 with 2-->5-->4 and 3-->6-->1: 1 and 4 cannot be separated."""
    return graph_of(
        "1 <-> 2", "2 <-> 3", "3 <-> 4",
        "2 --> 5", "5 --> 4", "3 --> 6", "6 --> 1",
    )


@pytest.fixture(scope="session")
def default_models():
    """The three shipped Gaussian models, keyed by file stem."""
    return load_default_models()


@pytest.fixture(scope="session")
def model_path():
    def _path(name):
        return str(DATA_DIR / f"{name}.json")
    return _path


@pytest.fixture
def mock_env(monkeypatch):
    """Set up mock environment variables."""
    def _mock_env(**kwargs):
        for key, value in kwargs.items():
            monkeypatch.setenv(f"ANTERIAL_{key}", str(value))
    return _mock_env


@pytest.fixture
def clean_env(monkeypatch):
    """Remove all ANTERIAL_ environment variables and their unprefixed fallbacks."""
    from config import _ENV_FIELDS
    bare = {env for _, _, env, _ in _ENV_FIELDS} | {"SEED", "LOG_LEVEL", "VERBOSE"}
    for key in list(os.environ.keys()):
        if key.startswith("ANTERIAL_") or key in bare:
            monkeypatch.delenv(key, raising=False)

"""Shared fixtures for the test suite."""
import numpy as np
import pytest

from app.config import get_settings, reset_settings


@pytest.fixture(autouse=True)
def default_settings(monkeypatch):
    """Run every test against the built-in defaults."""
    monkeypatch.setenv("APP_ENV", "stage")
    reset_settings()
    yield get_settings()
    reset_settings()


@pytest.fixture
def rng():
    return np.random.default_rng(20240611)

import numpy as np
import pytest


@pytest.fixture
def rng():
    return np.random.default_rng(20210611)


@pytest.fixture
def tmp_workdir(tmp_path, monkeypatch):
    """Runs the test from an empty directory so artifacts and logs land in tmp_path."""
    monkeypatch.chdir(tmp_path)
    return tmp_path

import numpy as np
import pytest

SEED = 20240917


@pytest.fixture
def rng():
    return np.random.default_rng(SEED)


def maxabs(a, b):
    return float(np.max(np.abs(np.asarray(a) - np.asarray(b))))

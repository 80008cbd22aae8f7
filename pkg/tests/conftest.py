import numpy as np
import pytest


@pytest.fixture
def rng():
    return np.random.default_rng(20260817)


@pytest.fixture
def gauss(rng):
    """Draw square complex Gaussian matrices from the shared test stream."""

    def draw(d, scale=1.0):
        g = rng.standard_normal((d, d)) + 1j * rng.standard_normal((d, d))
        return scale * g / np.sqrt(2)

    return draw

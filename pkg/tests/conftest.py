import numpy as np
import pytest

from hwmaps.config import SplitMix64


@pytest.fixture
def rng():
    return SplitMix64(20240611)


def random_weights(rng: SplitMix64, d: int) -> np.ndarray:
    return rng.normal(d * d).reshape(d, d)

import math

import numpy as np
import pytest
from hypothesis import strategies as st

from paramnet.wave import PortLabel, ScatterMatrix

TWO_PI = 2 * math.pi

unit = st.floats(0.0, 1.0, allow_nan=False)
unit_open = st.floats(0.0, 0.999, allow_nan=False)
angle = st.floats(0.0, TWO_PI, allow_nan=False, exclude_max=True)


def random_unitary(rng: np.random.Generator, n: int) -> np.ndarray:
    z = rng.normal(size=(n, n)) + 1j * rng.normal(size=(n, n))
    q, r = np.linalg.qr(z)
    return q * (np.diag(r) / np.abs(np.diag(r)))


def labelled(data, element="x", channel="f1") -> ScatterMatrix:
    n = len(data)
    return ScatterMatrix(tuple(PortLabel(element, str(k + 1), channel) for k in range(n)), data)


@pytest.fixture
def rng():
    return np.random.default_rng(20240611)

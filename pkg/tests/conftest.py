import numpy as np
import pytest
from hypothesis import HealthCheck, settings
from hypothesis import strategies as st

from qblob.sampling import random_state

settings.register_profile(
    "default", max_examples=40, deadline=None, suppress_health_check=[HealthCheck.too_slow]
)
settings.load_profile("default")

seeds = st.integers(min_value=0, max_value=2**32 - 1)
modes = st.integers(min_value=1, max_value=3)
hbars = st.sampled_from([1.0, 0.5, 2.0, 0.1])


@st.composite
def states(draw, n=None, x_range=(0.5, 3.0), hbar=None):
    """Random squeezed coherent state from a drawn seed."""
    n = draw(modes) if n is None else n
    h = draw(hbars) if hbar is None else hbar
    rng = np.random.default_rng(draw(seeds))
    return random_state(n, rng, x_range=x_range, hbar=h)


@pytest.fixture
def rng():
    return np.random.default_rng(20240611)

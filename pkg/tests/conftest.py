import numpy as np
import pytest
from hypothesis import settings, strategies as st

from ksnoise.scenarios import random_state

SEED = 20240611

# correlator evaluations run Jacobi on every state check; timing varies by machine
settings.register_profile("ksnoise", deadline=None)
settings.load_profile("ksnoise")


@pytest.fixture
def rng():
    return np.random.default_rng(SEED)


def random_matrix(d, rng, cols=None):
    cols = d if cols is None else cols
    return rng.standard_normal((d, cols)) + 1j * rng.standard_normal((d, cols))


def random_hermitian(d, rng):
    m = random_matrix(d, rng)
    return 0.5 * (m + m.conj().T)


seeds = st.integers(min_value=0, max_value=2**32 - 1)
dims = st.sampled_from([1, 2, 3, 4])

__all__ = ["random_matrix", "random_hermitian", "random_state", "seeds", "dims"]

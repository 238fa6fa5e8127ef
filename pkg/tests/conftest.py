import numpy as np
import pytest


def random_complex(rng, m, n):
    return rng.standard_normal((m, n)) + 1j * rng.standard_normal((m, n))


def random_unit_gram(rng, n, m=None):
    """Gram of a random column-normalized complex m x n matrix."""
    from cohbound.linalg import column_normalize, gram

    m = m or max(2, n // 2)
    return gram(column_normalize(random_complex(rng, m, n)))


@pytest.fixture
def rng():
    return np.random.default_rng(20240611)

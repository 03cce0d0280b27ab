import numpy as np
import pytest

from treelets import SymMatrix


def random_spsd(rng: np.random.Generator, p: int) -> SymMatrix:
    """Random SPSD matrix built as G Gt."""
    g = rng.normal(size=(p, p))
    return SymMatrix.from_dense(g @ g.T)


def random_symmetric(rng: np.random.Generator, p: int, lo=-1.0, hi=1.0) -> SymMatrix:
    d = rng.uniform(lo, hi, (p, p))
    return SymMatrix.from_dense((d + d.T) / 2.0)


@pytest.fixture
def np_rng():
    return np.random.default_rng(20240811)

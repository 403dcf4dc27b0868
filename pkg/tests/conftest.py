import numpy as np
import pytest

from mfssa import (
    MFTS,
    interval,
    make_bspline_basis,
    make_delta_basis,
    make_tensor_basis,
    rectangle,
)

UNIT = interval(0.0, 1.0)
UNIT_SQ = rectangle((0.0, 1.0), (0.0, 1.0))


def random_basis(rng, allow_2d=True):
    choice = rng.integers(0, 3 if allow_2d else 2)
    if choice == 0:
        df = int(rng.integers(4, 7))
        return make_bspline_basis(UNIT, df, 3)
    if choice == 1:
        n = int(rng.integers(3, 8))
        return make_delta_basis(np.linspace(0.0, 1.0, n))
    return make_tensor_basis(UNIT_SQ, (3, 3), 1)


def random_mfts(rng, p=None, N=None, allow_2d=True):
    p = p or int(rng.integers(1, 4))
    N = N or int(rng.integers(20, 61))
    bases = tuple(random_basis(rng, allow_2d) for _ in range(p))
    coeffs = tuple(rng.standard_normal((b.size, N)) for b in bases)
    return MFTS(bases, coeffs)


@pytest.fixture
def rng():
    return np.random.default_rng(12345)

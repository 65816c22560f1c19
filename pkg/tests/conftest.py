import numpy as np
import pytest


def ginibre_density_stack(n: int, rng: np.random.Generator) -> np.ndarray:
    """Random full-rank density matrices G G^dag / Tr, stacked (n, 4, 4)."""
    g = rng.standard_normal((n, 4, 4)) + 1j * rng.standard_normal((n, 4, 4))
    mats = g @ np.conj(np.swapaxes(g, -1, -2))
    tr = np.trace(mats, axis1=-2, axis2=-1).real
    return mats / tr[:, None, None]


def partial_transpose_b(rho: np.ndarray) -> np.ndarray:
    """Transpose qubit B's indices; works on (4, 4) or stacked (n, 4, 4)."""
    if rho.ndim == 2:
        return rho.reshape(2, 2, 2, 2).transpose(0, 3, 2, 1).reshape(4, 4)
    n = rho.shape[0]
    return rho.reshape(n, 2, 2, 2, 2).transpose(0, 1, 4, 3, 2).reshape(n, 4, 4)


@pytest.fixture
def rng() -> np.random.Generator:
    return np.random.default_rng(1234)

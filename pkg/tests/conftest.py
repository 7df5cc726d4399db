import pytest

from lenequiv.fuchsian import sample_representation
from lenequiv.word_algebra import SurfaceSpec

TORUS = SurfaceSpec(genus=1, boundary_components=1)
PANTS = SurfaceSpec(genus=0, boundary_components=3)


@pytest.fixture(scope="session")
def torus_rep():
    return sample_representation(TORUS, 0)


@pytest.fixture(scope="session")
def pants_rep():
    return sample_representation(PANTS, 0)


@pytest.fixture(scope="session")
def pants_reps():
    return [sample_representation(PANTS, seed) for seed in range(5)]

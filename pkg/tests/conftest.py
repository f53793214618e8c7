import functools

import pytest

from dihedral_forge.periods import solve_family


@functools.lru_cache(maxsize=None)
def _solved(family, alpha):
    rec = solve_family(family, alpha)
    assert rec.solved
    return rec


@pytest.fixture(scope="session")
def solved():
    return _solved


@functools.lru_cache(maxsize=None)
def _mesh(family, alpha, resolution=24):
    from dihedral_forge.builder import build_mesh
    return build_mesh(_solved(family, alpha), resolution)


@pytest.fixture(scope="session")
def piece():
    return _mesh

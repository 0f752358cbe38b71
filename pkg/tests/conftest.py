from __future__ import annotations

import pytest

from quasitherm import (BathModel, GaussianDensity, PowerLawDensity,
                        SpringParams, solve_mode)
from quasitherm.sweep import locate_borders


@pytest.fixture(scope="session")
def get_mode():
    """Session-cached (monodromy, trajectory, mode) factory."""
    cache: dict[tuple[float, float], tuple] = {}

    def factory(a: float, q: float):
        key = (a, q)
        if key not in cache:
            cache[key] = solve_mode(SpringParams(a, q))
        return cache[key]

    return factory


@pytest.fixture(scope="session")
def borders8():
    """The three mechanical stability borders of a = 8.0 below q = 10.5."""
    return locate_borders(8.0, 6.0, 10.5, 0.05)


@pytest.fixture(scope="session")
def border82():
    """The single mechanical stability border of a = 8.2 below q = 10."""
    borders = locate_borders(8.2, 9.0, 10.0, 0.05)
    assert len(borders) == 1
    return borders[0]


@pytest.fixture
def ohmic():
    return BathModel(beta=1.0, density=PowerLawDensity(s=1.0))


@pytest.fixture
def subohmic():
    return BathModel(beta=1.0, density=PowerLawDensity(s=0.5))


@pytest.fixture
def superohmic():
    return BathModel(beta=1.0, density=PowerLawDensity(s=2.0))


@pytest.fixture
def gauss32():
    return BathModel(beta=1.0, density=GaussianDensity(omega0=3.2, delta_sq=0.1))


@pytest.fixture
def gauss30():
    return BathModel(beta=1.0, density=GaussianDensity(omega0=3.0, delta_sq=0.1))

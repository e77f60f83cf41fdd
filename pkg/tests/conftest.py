import pytest

from polycoh import sample_generic_parameters, slot_scheme


@pytest.fixture(scope="session")
def hepta():
    """A fixed generic heptagon parameter matrix."""
    return sample_generic_parameters(3, seed=1, bound=10)


@pytest.fixture(scope="session")
def hepta_scheme():
    return slot_scheme(3)


@pytest.fixture(scope="session")
def penta():
    return sample_generic_parameters(2, seed=7, bound=5)


@pytest.fixture(scope="session")
def penta_scheme():
    return slot_scheme(2)

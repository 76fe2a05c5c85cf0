import random

import pytest

from acplab import fixtures


@pytest.fixture(scope="session")
def b_field():
    return fixtures.instance_b_field()


@pytest.fixture(scope="session")
def b_algebra():
    return fixtures.instance_b_algebra()


@pytest.fixture(scope="session")
def b_witness():
    return fixtures.instance_b_witness()


@pytest.fixture(scope="session")
def b3_field():
    return fixtures.instance_b3_field()


@pytest.fixture(scope="session")
def b3_algebra():
    return fixtures.instance_b3_algebra()


@pytest.fixture(scope="session")
def b3_witness():
    return fixtures.instance_b3_witness()


@pytest.fixture(scope="session")
def b_composite():
    return fixtures.composite_b_cuberoot2()


@pytest.fixture(scope="session")
def b3_composite():
    return fixtures.composite_b3_sqrt5()


@pytest.fixture
def rng():
    return random.Random(20240)

import os
import tempfile

# keep test runs out of the working log
os.environ.setdefault("LEFSCHETZ_LOG_DIR", tempfile.mkdtemp(prefix="lefschetz-logs-"))

import pytest

from artinian import eight_cubes
from field_linalg import DEFAULT_PRIME, SECOND_PRIME, PrimeFieldConfig


@pytest.fixture(scope="session")
def field():
    return PrimeFieldConfig(DEFAULT_PRIME)


@pytest.fixture(scope="session")
def second_field():
    return PrimeFieldConfig(SECOND_PRIME)


@pytest.fixture(scope="session")
def cubes(field):
    """Eight general cubes in 7 variables and the general form L, seed 0."""
    return eight_cubes(0, field)


@pytest.fixture(scope="session")
def cubes_spec(cubes):
    return cubes[0]


@pytest.fixture(scope="session")
def cubes_form(cubes):
    return cubes[1]

import pytest

from favard import derive_increments, derive_schedule, linear_growth, sqrt_growth


@pytest.fixture(scope="session")
def linear_params():
    return derive_schedule(derive_increments(linear_growth(6)), c_sep=4)


@pytest.fixture(scope="session")
def sqrt_params():
    return derive_schedule(derive_increments(sqrt_growth(6)), c_sep=4)

import pytest

from mdbv.curve import generate_params, search_group_params
from mdbv.rng import HashDrbg
from mdbv.scheme import setup

_acceptance_lines = []


def record_criterion(line: str) -> None:
    _acceptance_lines.append(line)


def pytest_terminal_summary(terminalreporter, exitstatus, config):
    if _acceptance_lines:
        terminalreporter.section("acceptance criteria")
        for line in _acceptance_lines:
            terminalreporter.write_line(line)


@pytest.fixture(scope="session")
def toy_params():
    """32-bit field, 16-bit group order: fast enough for oracle sweeps."""
    return search_group_params(16, 32, HashDrbg(b"toy-fixture"))


@pytest.fixture(scope="session")
def small_params():
    """Mid-size set for unit tests where 512-bit arithmetic would drag."""
    return search_group_params(56, 128, HashDrbg(b"small-fixture"))


@pytest.fixture(scope="session")
def full_params():
    """The default production scale: 160-bit q over 512-bit p."""
    return generate_params(80, b"test-default-params")


@pytest.fixture(scope="session")
def small_system(small_params):
    params, msk = setup(80, HashDrbg(b"small-system"), group=small_params)
    return params, msk


@pytest.fixture(scope="session")
def full_system(full_params):
    params, msk = setup(80, HashDrbg(b"full-system"), group=full_params)
    return params, msk

import pytest

from sievekit.arithmetic import build_sieve


@pytest.fixture(scope="session")
def sieve_small():
    return build_sieve(10**6)


@pytest.fixture(scope="session")
def sieve_big():
    return build_sieve(10**8)

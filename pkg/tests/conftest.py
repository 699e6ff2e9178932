import pytest

from glnq.field import FqContext, fq


@pytest.fixture(scope="session")
def q2():
    return fq(2)


@pytest.fixture(scope="session")
def q3():
    return fq(3)


@pytest.fixture(scope="session")
def q4():
    return FqContext.get(2, 2, (1, 1, 1))


@pytest.fixture(scope="session")
def q5():
    return fq(5)

import pytest

from commsemi import group


@pytest.fixture(scope="session")
def g3():
    """The smallest non-abelian case: G(3,2,2), i.e. the symmetric group S3."""
    return group.validate(3, 2)


@pytest.fixture(scope="session")
def g5():
    return group.validate(5, 3)


@pytest.fixture(scope="session")
def g7():
    return group.validate(7, 6)


@pytest.fixture(scope="session")
def g63():
    return group.validate(63, 2)

import pytest

from srgrep import graphs


@pytest.fixture(scope="session")
def petersen():
    return graphs.petersen()


@pytest.fixture(scope="session")
def paley13():
    return graphs.paley(13)


@pytest.fixture(scope="session")
def rook3():
    return graphs.rook(3)

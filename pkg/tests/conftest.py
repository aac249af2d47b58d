import pytest

from zetaperiod import corpus, delta_newform


@pytest.fixture(scope="session")
def delta():
    return delta_newform()


@pytest.fixture(scope="session")
def all_forms():
    return corpus()

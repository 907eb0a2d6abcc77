import pytest

from pseudoperiodic import catalog


def entry(name):
    return catalog.builtin_get(name).data


@pytest.fixture
def f1():
    return entry("nielsen-f1")


@pytest.fixture
def f2():
    return entry("nielsen-f2")


@pytest.fixture
def amph():
    return entry("amphidrome-genus2")


@pytest.fixture
def identity2():
    return entry("identity-genus2")

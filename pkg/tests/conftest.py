import pytest

from flatstir import CountContext


@pytest.fixture(scope="session")
def ctx():
    """One shared memo context; tests only grow it, never mutate entries."""
    return CountContext()

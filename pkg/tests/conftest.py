import pytest

from qkbruhat.equiv import Engine, minimal_relations


@pytest.fixture(scope="session")
def engine():
    return Engine(max_support=8)


@pytest.fixture(scope="session")
def db4(engine):
    """Mined minimal relations through degree 4 (includes degrees 2-3)."""
    return minimal_relations(4, 6, engine)

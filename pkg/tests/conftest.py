import pytest

from data.relation_store import default_store
from models.matrices import sample_pairs
from models.trace_calculus import default_reducer

TEST_SEED = 20240601


@pytest.fixture(scope="session")
def store():
    return default_store()


@pytest.fixture(scope="session")
def reducer():
    return default_reducer()


@pytest.fixture(scope="session")
def exact_pairs():
    """Twelve seeded pairs in SL(3, Q)"""
    return sample_pairs(TEST_SEED, 12)


@pytest.fixture(scope="session")
def integral_pairs():
    return sample_pairs(TEST_SEED, 6, integral=True)

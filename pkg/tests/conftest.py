import pytest

from core.distributions import WeightDistribution
from core.estimators import ReplicatePool


@pytest.fixture
def exp1():
    return WeightDistribution.exponential(1.0)


@pytest.fixture
def gamma21():
    return WeightDistribution.gamma(2.0, 1.0)


@pytest.fixture
def pool():
    """单线程、小分片，便于覆盖多分片拼接"""
    return ReplicatePool(workers=1, chunk_size=256, progress=False)


@pytest.fixture
def threaded_pool():
    return ReplicatePool(workers=4, chunk_size=64, progress=False)

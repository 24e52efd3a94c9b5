import pytest

from salemcensus.config import RunConfig


@pytest.fixture(scope="session")
def cfg():
    """Inline single-shard config: fastest on one CPU and fully deterministic."""
    return RunConfig(shards=1)

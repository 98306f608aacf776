import functools

import pytest

from qbw.zoo import build


@functools.lru_cache(maxsize=None)
def zoo_object(name: str):
    return build(name)


@pytest.fixture(scope="session")
def zoo():
    return zoo_object

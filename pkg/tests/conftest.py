import functools

import pytest

from cptgroups.atlas import build_atlas

SHARED_ATLAS = functools.lru_cache(maxsize=None)(build_atlas)


@pytest.fixture(scope="session")
def atlas():
    return SHARED_ATLAS()

import functools
import os

import pytest
from hypothesis import HealthCheck, settings

from pgverify.groups import build_catalog_group

settings.register_profile(
    "default",
    deadline=None,
    max_examples=40,
    suppress_health_check=[HealthCheck.too_slow, HealthCheck.data_too_large],
)
settings.register_profile("thorough", parent=settings.get_profile("default"), max_examples=400)
settings.load_profile(os.environ.get("HYPOTHESIS_PROFILE", "default"))

SMALL = ["cyclic:3", "cyclic:9", "cyclic:27", "elemab:3,2", "elemab:3,3", "heisenberg:3", "metacyclic:3,2"]
MEDIUM = ["product:cyclic:3,heisenberg:3", "semidirect:3;1,1,0;0,1,1;0,0,1"]


@functools.lru_cache(maxsize=None)
def catalog_group(spec):
    return build_catalog_group(spec)


@pytest.fixture(scope="session")
def get_group():
    return catalog_group


@functools.lru_cache(maxsize=None)
def jackson_bundle():
    from pgverify.constructions.jackson import build_jackson_data

    return build_jackson_data(catalog_group("extraspecial5:3"))


@pytest.fixture(scope="session")
def jackson():
    return jackson_bundle()

import os

import pytest
from hypothesis import settings

settings.register_profile("default", max_examples=60, deadline=None)
settings.load_profile(os.environ.get("HYPOTHESIS_PROFILE", "default"))


def rel(a, b):
    return abs(a - b) / abs(b)


@pytest.fixture
def approx_rel():
    return rel

import os
import sys

import pytest
from hypothesis import HealthCheck, settings

sys.path.insert(0, os.path.dirname(__file__))

settings.register_profile("default", deadline=None, max_examples=40,
                          suppress_health_check=[HealthCheck.too_slow])
settings.load_profile("default")


@pytest.fixture(scope="session")
def t():
    from folnf.field import FieldElement
    return [FieldElement.gen(k) for k in range(8)]


@pytest.fixture(scope="session")
def omega12(t):
    from folnf.cone import STANDARD_LINES, construct_example
    return construct_example((t[1], t[2], 1 - t[1] - t[2]), STANDARD_LINES, [t[3], t[4], t[5]], 12)

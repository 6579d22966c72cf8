import os
import sys

import numpy as np
import pytest
from hypothesis import HealthCheck, settings

sys.path.insert(0, os.path.dirname(__file__))

from mczcodes import family  # noqa: E402
from mczcodes.css import build_css, standard_form  # noqa: E402

settings.register_profile("default", max_examples=60, deadline=None,
                          suppress_health_check=[HealthCheck.too_slow])
settings.load_profile("default")


class Pipeline:
    def __init__(self, name):
        self.inst = family.preset(name)
        self.sf = standard_form(self.inst)
        self.css = build_css(self.sf, self.inst)
        self.F = self.inst.field


@pytest.fixture(scope="session")
def rs8():
    return Pipeline("rs8-cz")


@pytest.fixture(scope="session")
def rs16():
    return Pipeline("rs16-ccz")


@pytest.fixture(scope="session")
def rs25():
    return Pipeline("rs25-cz")


@pytest.fixture
def rng():
    return np.random.default_rng(1234)

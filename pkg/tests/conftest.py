import sys

import numpy as np
import pytest
from hypothesis import settings

from channelrank import make_state

settings.register_profile("repro", derandomize=True, deadline=None, max_examples=100)
settings.load_profile("repro")

from fixtures_paper import STATES  # noqa: E402


@pytest.fixture(params=sorted(STATES))
def paper_name(request):
    return request.param


@pytest.fixture
def paper_state():
    return lambda name: make_state(STATES[name])


@pytest.fixture
def rng():
    return np.random.default_rng(1234)


def pytest_terminal_summary(terminalreporter):
    module = sys.modules.get("test_acceptance")
    if module and module.RESULTS:
        terminalreporter.section("acceptance criteria")
        for line in module.RESULTS:
            terminalreporter.write_line(line)

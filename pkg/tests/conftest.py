import os
import sys

import numpy as np
import pytest

from hlusim import PauliRep

SEED = int(os.environ.get("HLU_SEED", "20240611"))


def pytest_report_header(config):
    return f"HLU_SEED={SEED}"


@pytest.fixture
def rng():
    return np.random.default_rng(SEED)


@pytest.fixture
def xy():
    return PauliRep.interaction(np.diag([1.0, 1.0, 0.0]))


@pytest.fixture
def heisenberg():
    return PauliRep.interaction(np.eye(3))


@pytest.fixture
def cnot():
    return np.eye(4, dtype=complex)[[0, 1, 3, 2]]


def pytest_terminal_summary(terminalreporter):
    mod = sys.modules.get("test_acceptance")
    if not mod or not mod.RESULTS:
        return
    terminalreporter.section("acceptance criteria")
    for n in sorted(mod.RESULTS):
        terminalreporter.write_line(mod.RESULTS[n])

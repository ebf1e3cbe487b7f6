import sys

import numpy as np
import pytest
from hypothesis import HealthCheck, settings

from diskspace import _kernels

settings.register_profile("default", deadline=None, max_examples=50,
                          suppress_health_check=[HealthCheck.too_slow])
settings.load_profile("default")


@pytest.fixture(scope="session", autouse=True)
def warm_kernels():
    """Compile the numba kernels once so per-test timings exclude the JIT."""
    z = np.array([0.1 + 0.2j, -0.3j])
    _kernels.horner(np.array([1, 2, 3], complex), z)
    _kernels.gap(np.ones(3), z)
    P = np.array([0.1, 0.5j, -0.2])
    args = (P, P ** 2, 1 - abs(P), 1 - abs(P), np.array([0, 1, 0]), 2,
            _kernels.OMEGA_IDENTITY, 1.0, np.zeros(1), np.zeros(1))
    _kernels.pair_quotient_profile(*args)
    _kernels.pair_quotient_profile(*args, outer_only=True)


@pytest.fixture
def rng():
    return np.random.default_rng(12345)


def pytest_terminal_summary(terminalreporter):
    """Print the acceptance lines collected by tests/test_acceptance.py."""
    mod = sys.modules.get("test_acceptance") or sys.modules.get("tests.test_acceptance")
    if mod is None or not mod.RESULTS:
        return
    terminalreporter.section("acceptance criteria")
    for line in sorted(mod.RESULTS, key=lambda s: int(s.split()[2])):
        terminalreporter.write_line(line)

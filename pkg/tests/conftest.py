import sys
from pathlib import Path

import pytest
from hypothesis import settings

sys.path.insert(0, str(Path(__file__).parent))

from chardeg import kernels  # noqa: E402

# oracles are deliberately naive; timing is not what these tests measure
settings.register_profile("chardeg", deadline=None)
settings.load_profile("chardeg")

BACKENDS = ["numba", "numpy"] if kernels.HAVE_NUMBA else ["numpy"]


@pytest.fixture(params=BACKENDS)
def backend(request):
    with kernels.backend(request.param):
        yield request.param


ACCEPTANCE = {}


@pytest.fixture
def criterion(request):
    """Register an acceptance criterion; its status is set from the call report."""
    ACCEPTANCE.setdefault(request.node.get_closest_marker("criterion").args[0], "FAIL")


@pytest.hookimpl(hookwrapper=True)
def pytest_runtest_makereport(item, call):
    outcome = yield
    report = outcome.get_result()
    marker = item.get_closest_marker("criterion")
    if marker is not None and report.when == "call":
        ACCEPTANCE[marker.args[0]] = "PASS" if report.passed else "FAIL"


def pytest_configure(config):
    config.addinivalue_line("markers", "criterion(label): acceptance criterion")


def pytest_terminal_summary(terminalreporter):
    if not ACCEPTANCE:
        return
    terminalreporter.section("acceptance criteria")
    for label, status in ACCEPTANCE.items():
        terminalreporter.write_line(f"{status}  {label}")

import numpy as np
import pytest

from lflab.lightfield import LightField
from lflab.synthetic import translated_plane

_ACCEPTANCE = {}


@pytest.fixture
def rng():
    return np.random.default_rng(1234)


def random_lf(rng, K=2, L=3, W=5, H=4, lo=0.0, hi=0.0):
    return LightField(rng.integers(0, 256, size=(K, L, H, W, 3), dtype=np.uint8), lo, hi)


@pytest.fixture(scope="session")
def small_baseline_lf():
    """8x8 grid of 64x64 views, plane at disparity 0.5, metadata range -1..1."""
    return translated_plane(8, 8, 64, 64, 0.5, seed=7, disparity_range=(-1.0, 1.0))


def pytest_runtest_logreport(report):
    marker = report.keywords.get("acceptance")
    if marker is None:
        return
    key = report.nodeid
    if report.when == "call" or (report.when == "setup" and report.outcome != "passed"):
        _ACCEPTANCE[key] = report.outcome


def pytest_terminal_summary(terminalreporter):
    if not _ACCEPTANCE:
        return
    terminalreporter.section("acceptance criteria")
    for nodeid, outcome in sorted(_ACCEPTANCE.items()):
        tag = {"passed": "PASS", "failed": "FAIL", "skipped": "SKIP"}.get(outcome, outcome.upper())
        terminalreporter.write_line(f"[{tag}] {nodeid.split('::', 1)[1]}")

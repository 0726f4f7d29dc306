import functools
import sys
from pathlib import Path

import pytest

from hopfgk import load

sys.path.insert(0, str(Path(__file__).parent))


@functools.lru_cache(maxsize=None)
def cached(name):
    return load(name)


@pytest.fixture
def example():
    return cached("wzz-3-5a")


@pytest.fixture
def abelian3():
    return cached("env-abelian-3")


@pytest.fixture
def central():
    return cached("central-acc")


@pytest.fixture
def jacobi():
    return cached("jacobi-violating")


def pytest_terminal_summary(terminalreporter):
    mod = sys.modules.get("test_acceptance")
    if mod is None or not mod.RESULTS:
        return
    terminalreporter.section("acceptance criteria")
    for n in sorted(mod.RESULTS):
        terminalreporter.write_line(mod.RESULTS[n])

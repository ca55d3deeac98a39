import sys
from pathlib import Path

import pytest

sys.path.insert(0, str(Path(__file__).parent))

from dynorder.examples import random_corpus  # noqa: E402


@pytest.fixture(scope="session")
def corpus():
    return random_corpus(300, seed=11)


@pytest.fixture(scope="session")
def sphere_corpus():
    return random_corpus(120, seed=12, sphere=True)


def pytest_terminal_summary(terminalreporter):
    mod = sys.modules.get("test_acceptance")
    if mod is None or not mod.LINES:
        return
    terminalreporter.section("acceptance criteria")
    for line in sorted(mod.LINES):
        terminalreporter.write_line(line)

import json
from pathlib import Path

import pytest


@pytest.fixture(scope="session")
def regression():
    return json.loads((Path(__file__).parent / "fixtures" / "regression.json").read_text())


def mc_close(mean, se, target, sigmas=3.0, allowance=0.0):
    return abs(mean - target) <= sigmas * se + allowance


ACCEPTANCE_LINES = []


@pytest.fixture
def acceptance_record():
    def record(label, ok, detail):
        line = f"[{'PASS' if ok else 'FAIL'}] {label}: {detail}"
        ACCEPTANCE_LINES.append(line)
        print(line)
        return ok

    return record


def pytest_terminal_summary(terminalreporter):
    if ACCEPTANCE_LINES:
        terminalreporter.section("acceptance criteria")
        for line in ACCEPTANCE_LINES:
            terminalreporter.write_line(line)

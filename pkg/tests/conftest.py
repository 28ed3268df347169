import os

import pytest

ACCEPTANCE = []


def corpus_seed() -> int:
    return int(os.environ.get("EQSET_SEED", "1700"))


@pytest.fixture
def seed():
    return corpus_seed()


def record_criterion(number, title, ok, detail=""):
    ACCEPTANCE.append((number, title, ok, detail))


def pytest_terminal_summary(terminalreporter):
    if not ACCEPTANCE:
        return
    terminalreporter.section("acceptance criteria")
    for number, title, ok, detail in sorted(ACCEPTANCE, key=lambda r: r[0]):
        status = "PASS" if ok else "FAIL"
        line = f"[{status}] {number:>2}. {title}"
        if detail:
            line += f" -- {detail}"
        terminalreporter.write_line(line)

from importlib import resources
from pathlib import Path

import pytest

from zipfkit.rankfreq import parse_rank_table

FIXTURES = Path(str(resources.files("zipfkit").joinpath("data/fixtures")))
GOLDEN = Path(__file__).parent / "golden"


@pytest.fixture(scope="session")
def fixture_dir() -> Path:
    return FIXTURES


@pytest.fixture(scope="session")
def rem1003():
    return parse_rank_table(FIXTURES / "rem1003.tsv")


@pytest.fixture(scope="session")
def rem1003_bm():
    return parse_rank_table(FIXTURES / "rem1003-bm.tsv")


@pytest.fixture(scope="session")
def rem1020():
    return parse_rank_table(FIXTURES / "rem1020.tsv")


@pytest.fixture(scope="session")
def rem1020_bm():
    return parse_rank_table(FIXTURES / "rem1020-bm.tsv")


# Acceptance criteria append (label, passed, detail) here; printed after the run.
ACCEPTANCE: list[tuple[str, bool, str]] = []


def pytest_terminal_summary(terminalreporter):
    if not ACCEPTANCE:
        return
    terminalreporter.section("acceptance criteria")
    for label, passed, detail in sorted(ACCEPTANCE, key=lambda r: r[0]):
        terminalreporter.write_line(f"{'PASS' if passed else 'FAIL'}  {label}: {detail}")

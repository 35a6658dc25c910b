from __future__ import annotations

import pytest

from hftwo.cover.adapted import build_adapted
from hftwo.floer.differential import build_catalog
from hftwo.grid import fixture
from hftwo.monodromy import Monodromy, enumerate_monodromies

UNLINK_SIGMA = "12 12 13 13"


@pytest.fixture(scope="session")
def unlink():
    return build_adapted(fixture("UNLINK4"), Monodromy.parse(UNLINK_SIGMA))


@pytest.fixture(scope="session")
def trefoil():
    g = fixture("TREFOIL5")
    return build_adapted(g, enumerate_monodromies(g)[0])


@pytest.fixture(scope="session")
def unlink_catalog(unlink):
    return build_catalog(unlink.diagram)


@pytest.fixture(scope="session")
def trefoil_catalog(trefoil):
    return build_catalog(trefoil.diagram)


ACCEPTANCE_LINES: list[str] = []


@pytest.fixture(scope="session")
def acceptance_report():
    """Record one pass/fail line per acceptance criterion."""

    def report(number: int, ok: bool, detail: str) -> None:
        line = f"criterion {number}: {'PASS' if ok else 'FAIL'}  {detail}"
        ACCEPTANCE_LINES.append(line)
        print(line)

    return report


def pytest_terminal_summary(terminalreporter):
    if ACCEPTANCE_LINES:
        terminalreporter.section("acceptance criteria")
        for line in sorted(ACCEPTANCE_LINES, key=lambda s: int(s.split()[1].rstrip(":"))):
            terminalreporter.write_line(line)

from __future__ import annotations

import pytest

from qlink.braid import read_braid_file
from qlink.cli import bundled_corpus


@pytest.fixture(scope="session")
def corpus():
    """(lineno, braid, annotation) triples from the bundled corpus."""
    return list(read_braid_file(bundled_corpus()))


# criterion number -> (passed, detail), filled by test_acceptance
ACCEPTANCE: dict[int, tuple[bool, str]] = {}


def pytest_terminal_summary(terminalreporter):
    if not ACCEPTANCE:
        return
    terminalreporter.section("acceptance criteria")
    for k in sorted(ACCEPTANCE):
        ok, detail = ACCEPTANCE[k]
        terminalreporter.write_line(f"[{'PASS' if ok else 'FAIL'}] criterion {k}: {detail}")

import os
import sys

sys.path.insert(0, os.path.dirname(__file__))

# filled by test_acceptance; printed at the end of every run
ACCEPTANCE = []


def pytest_terminal_summary(terminalreporter):
    if not ACCEPTANCE:
        return
    terminalreporter.section("acceptance criteria")
    for number, text, ok in sorted(ACCEPTANCE):
        terminalreporter.write_line(f"[{'PASS' if ok else 'FAIL'}] {number}. {text}")


import pytest  # noqa: E402


@pytest.fixture(scope="session")
def taus_by_level():
    """Admissible tau-functions up to level 12 from the enumerator, by length."""
    from cubictau.enumerator import walk

    out = {}
    for node in walk(12):
        out.setdefault(node.depth, []).append(node)
    return out

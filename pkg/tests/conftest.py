from collections import defaultdict

import pytest

CRITERIA = defaultdict(list)


@pytest.fixture
def criterion():
    """Record ``(label, ok, detail)`` rows for the acceptance summary."""

    def record(number: int, label: str, ok: bool, detail: str = "") -> None:
        CRITERIA[number].append((label, ok, detail))

    return record


def pytest_terminal_summary(terminalreporter):
    if not CRITERIA:
        return
    tr = terminalreporter
    tr.section("acceptance criteria")
    for number in sorted(CRITERIA):
        rows = CRITERIA[number]
        failed = [f"{label} ({detail})" if detail else label for label, ok, detail in rows if not ok]
        status = "PASS" if not failed else "FAIL"
        line = f"criterion {number}: {status} [{len(rows) - len(failed)}/{len(rows)} cases, tolerance exact]"
        if failed:
            line += " failing: " + "; ".join(failed)
        tr.write_line(line)

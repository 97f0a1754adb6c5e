import warnings

import pytest

from mollowqed.dressed import DriveWarning

# criterion number -> list of (check, ok, detail), filled by test_acceptance
ACCEPTANCE = {}


def record(criterion, check, ok, detail=""):
    ACCEPTANCE.setdefault(criterion, []).append((check, bool(ok), detail))
    return ok


def pytest_terminal_summary(terminalreporter):
    if not ACCEPTANCE:
        return
    tr = terminalreporter
    tr.section("acceptance criteria")
    for crit in sorted(ACCEPTANCE):
        checks = ACCEPTANCE[crit]
        ok = all(c[1] for c in checks)
        n_ok = sum(c[1] for c in checks)
        tr.write_line(f"{'PASS' if ok else 'FAIL'}  criterion {crit} ({n_ok}/{len(checks)} checks)")
        for check, good, detail in checks:
            tr.write_line(f"        [{'ok' if good else 'FAIL'}] {check}: {detail}")


@pytest.fixture
def quiet():
    with warnings.catch_warnings():
        warnings.simplefilter("ignore", DriveWarning)
        yield

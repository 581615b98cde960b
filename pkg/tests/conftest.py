import collections

import pytest

from plategap import PRESET

ACCEPTANCE = collections.OrderedDict()


def record(criterion: int, name: str, ok: bool, detail: str = "") -> bool:
    """Stores one acceptance check; the summary prints one line per criterion."""
    ACCEPTANCE.setdefault(criterion, []).append((name, bool(ok), detail))
    return bool(ok)


@pytest.fixture
def cfg():
    return PRESET


def pytest_terminal_summary(terminalreporter):
    if not ACCEPTANCE:
        return
    terminalreporter.section("acceptance criteria")
    for crit in sorted(ACCEPTANCE):
        checks = ACCEPTANCE[crit]
        ok = all(c[1] for c in checks)
        bad = [f"{n} ({d})" if d else n for n, good, d in checks if not good]
        line = f"criterion {crit}: {'PASS' if ok else 'FAIL'} [{sum(c[1] for c in checks)}/{len(checks)} checks]"
        if bad:
            line += " failing: " + "; ".join(bad)
        terminalreporter.write_line(line)

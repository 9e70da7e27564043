import time
from contextlib import contextmanager

import pytest

_LINES = pytest.StashKey[list]()


class Criterion:
    """Records one PASS/FAIL line per acceptance criterion."""

    def __init__(self, lines):
        self.lines = lines

    @contextmanager
    def __call__(self, label, limit=None):
        t0 = time.perf_counter()
        status, note = "FAIL", ""
        try:
            yield
            elapsed = time.perf_counter() - t0
            if limit is not None and elapsed >= limit:
                note = f"  (over the {limit:g}s limit)"
                raise AssertionError(f"{label} took {elapsed:.3f}s, limit {limit:g}s")
            status = "PASS"
        except AssertionError as exc:
            if not note:
                note = f"  ({str(exc).splitlines()[0][:100]})" if str(exc) else ""
            raise
        finally:
            elapsed = time.perf_counter() - t0
            line = f"{status}  {label}  [{elapsed:.3f}s]{note}"
            self.lines.append(line)
            print(line)


@pytest.fixture
def criterion(request):
    return Criterion(request.config.stash.setdefault(_LINES, []))


def pytest_terminal_summary(terminalreporter, exitstatus, config):
    lines = config.stash.get(_LINES, [])
    if lines:
        terminalreporter.section("acceptance criteria")
        for line in lines:
            terminalreporter.write_line(line)

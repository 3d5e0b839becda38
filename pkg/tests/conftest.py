from __future__ import annotations

import time
from contextlib import contextmanager

import pytest

_RESULTS = pytest.StashKey[dict]()


class _Record:
    def __init__(self) -> None:
        self.detail = ""


@pytest.fixture
def criterion(request, capsys):
    """Context manager recording one acceptance criterion as PASS or FAIL."""
    store = request.config.stash.setdefault(_RESULTS, {})

    @contextmanager
    def run(number: int, title: str):
        rec = _Record()
        t0 = time.perf_counter()
        status = "FAIL"
        try:
            yield rec
            status = "PASS"
        finally:
            line = f"CRITERION {number:>2}: {status}  {title}  ({time.perf_counter() - t0:.1f}s)"
            if rec.detail:
                line += f"  {rec.detail}"
            store[number] = line
            with capsys.disabled():
                print(f"\n{line}")

    return run


def pytest_terminal_summary(terminalreporter, exitstatus, config):
    store = config.stash.get(_RESULTS, {})
    if not store:
        return
    terminalreporter.section("acceptance criteria")
    for n in sorted(store):
        terminalreporter.write_line(store[n])

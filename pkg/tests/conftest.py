import os

from hypothesis import HealthCheck, settings

settings.register_profile(
    "default", max_examples=60, deadline=None,
    suppress_health_check=[HealthCheck.too_slow],
)
settings.register_profile("thorough", max_examples=500, deadline=None)
settings.load_profile(os.environ.get("HYPOTHESIS_PROFILE", "default"))

import contextlib
import time

import pytest

_CRITERIA: list[str] = []


class _Outcome:
    detail = ""


@pytest.fixture
def criterion():
    """``with criterion(3, "title") as c:`` records PASS/FAIL for an acceptance criterion."""
    @contextlib.contextmanager
    def record(number: int, title: str):
        out = _Outcome()
        start = time.perf_counter()
        try:
            yield out
        except BaseException as exc:
            msg = str(exc).splitlines()[0] if str(exc) else type(exc).__name__
            line = f"criterion {number:>2} FAIL  {title}: {msg}"
            _CRITERIA.append(line)
            print(line)
            raise
        secs = time.perf_counter() - start
        line = f"criterion {number:>2} PASS  {title} ({secs:.1f}s){': ' + out.detail if out.detail else ''}"
        _CRITERIA.append(line)
        print(line)

    return record


def pytest_terminal_summary(terminalreporter):
    if _CRITERIA:
        terminalreporter.section("acceptance criteria")
        for line in sorted(_CRITERIA, key=lambda s: int(s.split()[1])):
            terminalreporter.write_line(line)

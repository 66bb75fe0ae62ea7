import os
import time
from contextlib import contextmanager

import pytest
from hypothesis import HealthCheck, settings

settings.register_profile("default", max_examples=60, deadline=None,
                          suppress_health_check=[HealthCheck.too_slow])
settings.load_profile(os.environ.get("HYPOTHESIS_PROFILE", "default"))


@pytest.fixture
def criterion(request):
    """Context manager timing one acceptance criterion and recording a pass/fail line."""
    lines = request.config.__dict__.setdefault("_acceptance_lines", [])

    @contextmanager
    def run(number, title, limit=None):
        t0 = time.perf_counter()
        ok = False
        try:
            yield
            ok = True
        finally:
            dt = time.perf_counter() - t0
            slow = limit is not None and dt > limit
            status = "PASS" if ok and not slow else "FAIL"
            note = f" (limit {limit:g}s exceeded)" if ok and slow else ""
            line = f"criterion {number:>2}: {status}  {title}  [{dt:.1f}s]{note}"
            lines.append((number, line))
            print(line)
        assert not slow, f"criterion {number} took {dt:.1f}s, limit {limit}s"

    return run


def pytest_terminal_summary(terminalreporter, exitstatus, config):
    lines = getattr(config, "_acceptance_lines", [])
    if lines:
        terminalreporter.section("acceptance criteria")
        for _, line in sorted(lines):
            terminalreporter.write_line(line)

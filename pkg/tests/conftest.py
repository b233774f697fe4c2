import os

import pytest
from hypothesis import HealthCheck, settings

settings.register_profile(
    "default",
    max_examples=60,
    deadline=None,
    suppress_health_check=[HealthCheck.too_slow],
)
settings.register_profile("ci", max_examples=300, deadline=None)
settings.load_profile(os.environ.get("HYPOTHESIS_PROFILE", "default"))


_RESULTS = pytest.StashKey[list]()


@pytest.fixture
def acceptance(request, capsys):
    """Record one pass/fail line per acceptance criterion and echo it immediately."""
    lines = request.config.stash.setdefault(_RESULTS, [])

    def record(number: int, passed: bool, detail: str, seconds: float, limit: float) -> bool:
        ok = passed and seconds < limit
        line = (
            f"criterion {number:>2}: {'PASS' if ok else 'FAIL'}  {detail}  "
            f"[{seconds:.1f} s, limit {limit:g} s]"
        )
        lines.append(line)
        with capsys.disabled():
            print("\n" + line)
        return ok

    return record


def pytest_terminal_summary(terminalreporter, config):
    lines = config.stash.get(_RESULTS, [])
    if lines:
        terminalreporter.section("acceptance criteria")
        for line in sorted(lines):
            terminalreporter.write_line(line)

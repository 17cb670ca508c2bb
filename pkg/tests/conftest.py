import os
import sys

import pytest
from hypothesis import HealthCheck, settings
from hypothesis import strategies as st

sys.path.insert(0, os.path.dirname(__file__))

from conflictual import Profile  # noqa: E402

settings.register_profile("default", max_examples=150, deadline=None,
                          suppress_health_check=[HealthCheck.too_slow])
settings.load_profile("default")

DATA = os.path.join(os.path.dirname(__file__), "data")


@st.composite
def profiles(draw, min_m=2, max_m=5, max_ballots=6, max_weight=3):
    """Small random profiles with integer multiplicities."""
    m = draw(st.integers(min_m, max_m))
    k = draw(st.integers(1, max_ballots))
    ballots = [tuple(draw(st.permutations(range(m)))) for _ in range(k)]
    weights = [draw(st.integers(1, max_weight)) for _ in range(k)]
    return Profile(tuple(ballots), tuple(weights))


@pytest.fixture
def data_dir():
    return DATA


# one line per acceptance criterion, echoed at the end of the run
ACCEPTANCE: list[str] = []


def record(criterion: int, ok: bool, detail: str) -> None:
    line = f"{'PASS' if ok else 'FAIL'} criterion {criterion}: {detail}"
    ACCEPTANCE.append(line)
    print(line)


def pytest_terminal_summary(terminalreporter):
    if ACCEPTANCE:
        terminalreporter.section("acceptance criteria")
        for line in sorted(ACCEPTANCE, key=lambda s: int(s.split()[2].rstrip(":"))):
            terminalreporter.write_line(line)

import sys
from fractions import Fraction
from pathlib import Path

import pytest

sys.path.insert(0, str(Path(__file__).parent))

from balcap.domain import realize  # noqa: E402
from balcap.functor import nu0_generators, nu_l_generators, paper_ground  # noqa: E402

GAMES = Path(__file__).resolve().parents[1] / "src" / "balcap" / "games"

_acceptance = {}


def pytest_configure(config):
    config.addinivalue_line("markers", "acceptance(number, title): acceptance criterion")


@pytest.hookimpl(hookwrapper=True)
def pytest_runtest_makereport(item, call):
    outcome = yield
    report = outcome.get_result()
    marker = item.get_closest_marker("acceptance")
    if marker is None:
        return
    if report.when == "call" or (report.when == "setup" and report.outcome != "passed"):
        _acceptance[marker.args[0]] = (marker.args[1], report.outcome)


def pytest_terminal_summary(terminalreporter):
    if not _acceptance:
        return
    terminalreporter.section("acceptance criteria")
    for number in sorted(_acceptance):
        title, outcome = _acceptance[number]
        verdict = "PASS" if outcome == "passed" else "FAIL"
        terminalreporter.write_line(f"[{verdict}] criterion {number}: {title}")


@pytest.fixture
def paper():
    return paper_ground()


@pytest.fixture
def nu0():
    return realize(nu0_generators())


@pytest.fixture
def nu_l():
    return {l: realize(nu_l_generators(l)) for l in (1, 2, 3, 4)}


@pytest.fixture
def games_dir():
    return GAMES


def F(x):
    return Fraction(x)

import numpy as np
import pytest

from linca.ca import LocalRule, random_rule

RULE_48600 = "m=48600; l=-3; c=15,20,27,16,30,5"
RULE_M4 = "m=4; l=1; c=2,2,2,1"


@pytest.fixture
def r48600():
    return LocalRule(48600, -3, (15, 20, 27, 16, 30, 5))


@pytest.fixture
def rm4():
    return LocalRule(4, 1, (2, 2, 2, 1))


@pytest.fixture
def m6_rule():
    # 3 x_0 + 4 x_1 mod 6
    return LocalRule(6, 0, (3, 4))


def seeded_rules(count, seed, max_m=30, max_radius=3):
    rng = np.random.default_rng(seed)
    out = []
    for _ in range(count):
        m = int(rng.integers(2, max_m + 1))
        out.append(random_rule(rng, m, int(rng.integers(0, max_radius + 1))))
    return out


# --- acceptance reporting: one line per criterion in the terminal summary ---

_ACCEPTANCE = []


def pytest_configure(config):
    config.addinivalue_line("markers", "acceptance(label, title): acceptance criterion")


@pytest.hookimpl(hookwrapper=True)
def pytest_runtest_makereport(item, call):
    outcome = yield
    rep = outcome.get_result()
    marker = item.get_closest_marker("acceptance")
    if marker is None or rep.when != "call":
        return
    label, title = marker.args
    detail = getattr(item, "acceptance_detail", "")
    _ACCEPTANCE.append((label, title, rep.passed, detail))


def pytest_terminal_summary(terminalreporter):
    if not _ACCEPTANCE:
        return
    terminalreporter.section("acceptance criteria")
    for label, title, passed, detail in sorted(_ACCEPTANCE, key=lambda r: r[0]):
        status = "PASS" if passed else "FAIL"
        line = f"[{status}] {label:<3} {title}"
        if detail:
            line += f" -- {detail}"
        terminalreporter.write_line(line)

"""Shared fixtures and the per-criterion acceptance summary."""

import pytest

from kregular.series import d_table

CRITERIA = {
    1: "Q-ratio grid (16 cells, t=4) within 1e-5 of frozen reference values",
    2: "exact census k,t <= 10, n <= 300: verdicts and stable families",
    3: "N_k(t, delta) spot cells within 2% with passing certificates",
    4: "main-term sandwich at (3,4,1), delta=3, n in {2000, 5000}",
    5: "500 seeded points per arc bound all hold",
    6: "oracle equivalences (enumeration, indivisible DP, p(100))",
    7: "difference asymptotic ratios in [0.9, 1.1] at n=10000",
}

_outcomes = {}


def pytest_configure(config):
    config.addinivalue_line("markers", "criterion(n): acceptance criterion number")
    config.addinivalue_line("markers", "slow: takes more than a few seconds")


def pytest_runtest_logreport(report):
    crit = getattr(report, "criterion", None)
    if crit is None:
        return
    failed = report.failed or (report.when == "call" and report.outcome != "passed")
    if report.when == "call" or failed:
        prev = _outcomes.get(crit, True)
        _outcomes[crit] = prev and not failed


@pytest.hookimpl(hookwrapper=True)
def pytest_runtest_makereport(item, call):
    outcome = yield
    report = outcome.get_result()
    marker = item.get_closest_marker("criterion")
    if marker is not None:
        report.criterion = marker.args[0]


def pytest_terminal_summary(terminalreporter):
    if not _outcomes:
        return
    terminalreporter.section("acceptance criteria")
    for crit in sorted(CRITERIA):
        if crit not in _outcomes:
            status = "NOT RUN"
        else:
            status = "PASS" if _outcomes[crit] else "FAIL"
        terminalreporter.write_line(f"criterion {crit}: {status}  {CRITERIA[crit]}")


@pytest.fixture(scope="session")
def t4_tables():
    """Exact tables for k = 3, 4 at t = 4 up to n = 10000 (built once)."""
    return {k: d_table(k, 4, 10000) for k in (3, 4)}

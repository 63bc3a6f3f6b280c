import pytest

from homdil import builtin_system


@pytest.fixture(scope="session")
def trace_m2():
    return builtin_system("normalized_trace", {"algebra": "full_matrix", "n": 2})


@pytest.fixture(scope="session")
def trace_t2():
    return builtin_system("normalized_trace", {"algebra": "upper_triangular", "n": 2})


@pytest.fixture(scope="session")
def trace_t3():
    return builtin_system("normalized_trace", {"algebra": "upper_triangular", "n": 3})


@pytest.fixture(scope="session")
def transpose_t2():
    return builtin_system("transpose_t_to_m", {"n": 2})


def pytest_terminal_summary(terminalreporter, exitstatus, config):
    """One line per acceptance criterion at the end of the run."""
    rows = []
    for outcome, mark in (("passed", "PASS"), ("failed", "FAIL"), ("error", "FAIL")):
        for rep in terminalreporter.stats.get(outcome, []):
            if getattr(rep, "when", "call") != "call":
                continue
            nodeid = getattr(rep, "nodeid", "")
            if "test_acceptance.py::" not in nodeid:
                continue
            rows.append((nodeid.split("::")[-1], mark))
    if rows:
        terminalreporter.write_sep("=", "acceptance criteria")
        for name, mark in sorted(rows):
            terminalreporter.write_line(f"{mark}  {name}")

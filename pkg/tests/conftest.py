import pytest

import cases
from thuecm import certify_instance, solve_thue


@pytest.fixture(scope="session")
def k2():
    return cases.quadratic(2)


@pytest.fixture(scope="session")
def ex3():
    return cases.example3()


@pytest.fixture(scope="session")
def ex4():
    return cases.example4()


@pytest.fixture(scope="session")
def rel3(ex3):
    return certify_instance(ex3)


@pytest.fixture(scope="session")
def rel4(ex4):
    return certify_instance(ex4)


@pytest.fixture(scope="session")
def sol3(ex3):
    return solve_thue(ex3)


@pytest.fixture(scope="session")
def sol4(ex4):
    return solve_thue(ex4)


def pytest_terminal_summary(terminalreporter):
    import sys
    mod = sys.modules.get("test_acceptance")
    if mod is None or not mod.RESULTS:
        return
    terminalreporter.section("acceptance criteria")
    for k in sorted(mod.RESULTS):
        terminalreporter.write_line(mod.RESULTS[k])

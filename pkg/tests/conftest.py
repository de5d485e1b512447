import pytest

from normspan.group import cyclic, direct_product, small_groups, symmetric


@pytest.fixture(scope="session")
def groups():
    return small_groups(8)


@pytest.fixture(scope="session")
def C2():
    return cyclic(2)


@pytest.fixture(scope="session")
def C4():
    return cyclic(4)


@pytest.fixture(scope="session")
def S3():
    return symmetric(3)


@pytest.fixture(scope="session")
def V4():
    return direct_product(cyclic(2), cyclic(2))



def pytest_terminal_summary(terminalreporter):
    try:
        from test_acceptance import RESULTS
    except ImportError:
        return
    if RESULTS:
        terminalreporter.section("acceptance criteria")
        for number in sorted(RESULTS):
            terminalreporter.write_line(RESULTS[number])

import pytest

from bernrec.engines import BernoulliTable, EngineKind, extend_table

from oracles import bernoulli_brute

ACCEPTANCE_LINES = []


@pytest.fixture(scope="session")
def brute():
    """B_0..B_120 from the naive full-history oracle."""
    return bernoulli_brute(120)


@pytest.fixture(scope="session")
def shortened_600():
    t = BernoulliTable()
    extend_table(t, 600, EngineKind.SHORTENED)
    return t


@pytest.fixture(scope="session")
def classical_600():
    t = BernoulliTable()
    extend_table(t, 600, EngineKind.CLASSICAL)
    return t


@pytest.fixture(scope="session")
def zeta2_direct_1e6():
    from bernrec.zeta import zeta_direct

    return zeta_direct(2, 10**6)


def pytest_terminal_summary(terminalreporter):
    if ACCEPTANCE_LINES:
        terminalreporter.section("acceptance criteria")
        for line in ACCEPTANCE_LINES:
            terminalreporter.write_line(line)

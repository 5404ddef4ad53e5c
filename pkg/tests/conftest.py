import sys

import pytest

from mubcurves import GF2n, enumerate_bundles, enumerate_structures


@pytest.fixture(scope="session")
def gf4():
    return GF2n(2)


@pytest.fixture(scope="session")
def gf8():
    return GF2n(3)


@pytest.fixture(scope="session")
def census4(gf4):
    return enumerate_structures(gf4)


@pytest.fixture(scope="session")
def bundles4(gf4, census4):
    return enumerate_bundles(gf4, census4)


@pytest.fixture(scope="session")
def census8(gf8):
    return enumerate_structures(gf8)


@pytest.fixture(scope="session")
def bundles8(gf8, census8):
    return enumerate_bundles(gf8, census8)


@pytest.fixture(scope="session")
def tables4(bundles4):
    return {b.label: b for b in bundles4}



def pytest_terminal_summary(terminalreporter):
    module = next((m for name, m in sys.modules.items() if name.endswith("test_acceptance")), None)
    results = getattr(module, "RESULTS", {})
    if results:
        terminalreporter.section("acceptance criteria")
        for k in sorted(results):
            terminalreporter.write_line(results[k])

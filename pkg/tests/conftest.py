import os
import sys

import pytest
from hypothesis import settings

sys.path.insert(0, os.path.dirname(__file__))

from ctcompanion.exchange import Quiver, initial_seed, mutate_seed  # noqa: E402
from ctcompanion.repq import tilting_from_dims  # noqa: E402
from ctcompanion.root_system import root_system  # noqa: E402

settings.register_profile("default", max_examples=60, deadline=None)
settings.load_profile("default")


def pytest_addoption(parser):
    parser.addoption("--extended", action="store_true", help="also run the A7, A8, D6, E6 sweep")


def pytest_collection_modifyitems(config, items):
    if config.getoption("--extended") or os.environ.get("CTCOMPANION_EXTENDED"):
        return
    skip = pytest.mark.skip(reason="needs --extended")
    for item in items:
        if "extended" in item.keywords:
            item.add_marker(skip)


# D4 with the branch vertex 3 (1-based); everything below is 0-based.
Q_ARROWS = [(2, 3), (4, 3), (3, 1)]
GAMMA_ARROWS = {(3, 2), (2, 1), (1, 3), (3, 4), (4, 1)}
QPRIME_ARROWS = [(3, 1), (3, 2), (4, 3)]

PSI = [(1, 0, 0, 0), (0, 1, 1, 0), (0, 0, 1, 0), (0, 0, 1, 1)]
PSI_PRIME = {(1, 0, 0, 0), (0, 1, 0, 0), (0, 0, 1, 0), (0, 0, 1, 1)}

GAMMA_D_SET = frozenset(
    [
        (1, 0, 0, 0), (0, 1, 1, 0), (0, 0, 1, 0), (0, 0, 1, 1),
        (1, 0, 1, 0), (0, 1, 0, 0), (0, 0, 0, 1), (1, 1, 0, 0),
        (1, 0, 0, 1), (0, 1, 1, 1), (1, 1, 1, 1), (1, 1, 0, 1),
    ]
)

PHI_B_T1 = frozenset(
    [
        (1, 0, 0, 0), (0, 1, 1, 0), (0, 0, -1, 0), (0, 0, 1, 1),
        (1, 0, -1, 0), (0, 1, 0, 0), (0, 0, 0, 1), (1, 1, 0, 0),
        (1, 0, 0, 1), (0, 1, 1, 1), (1, 1, 1, 1), (1, 1, 0, 1),
    ]
)

T1_DIMS = [(1, 0, 0, 0), (1, 1, 1, 0), (1, 1, 1, 1), (1, 0, 1, 1)]
T2_DIMS = [(0, 0, 0, 1), (1, 0, 0, 0), (1, 1, 1, 1), (0, 1, 0, 0)]


@pytest.fixture(scope="session")
def d4():
    return root_system("D", 4)


@pytest.fixture(scope="session")
def quiver_q():
    return Quiver.from_one_based(4, Q_ARROWS)


@pytest.fixture(scope="session")
def quiver_q_prime():
    return Quiver.from_one_based(4, QPRIME_ARROWS)


@pytest.fixture(scope="session")
def gamma_seed(quiver_q):
    return mutate_seed(initial_seed(quiver_q), 2)


@pytest.fixture(scope="session")
def b_gamma(gamma_seed):
    return gamma_seed.b


@pytest.fixture(scope="session")
def tilting_t1(quiver_q):
    return tilting_from_dims(quiver_q, T1_DIMS)


@pytest.fixture(scope="session")
def tilting_t2(quiver_q_prime):
    return tilting_from_dims(quiver_q_prime, T2_DIMS)


# acceptance results, printed once at the end of the run
ACCEPTANCE: dict[int, tuple[bool, str]] = {}


def pytest_terminal_summary(terminalreporter):
    if not ACCEPTANCE:
        return
    terminalreporter.section("acceptance criteria")
    for num in sorted(ACCEPTANCE):
        ok, text = ACCEPTANCE[num]
        terminalreporter.write_line(f"criterion {num}: {'PASS' if ok else 'FAIL'}  {text}")

from functools import lru_cache

import pytest

from pgrdim import catalog
from pgrdim.reptheory import character_table

# Groups exercised across the suite, by catalog spec.
CATALOG_SPECS = [
    "cyclic(3)",
    "elementary(3, 2)",
    "elementary(2, 5)",
    "product(cyclic(4), cyclic(2))",
    "q8",
    "d8",
    "heisenberg(2, 2, 1)",
    "heisenberg(2, 4, 1)",
    "heisenberg(2, 4, 2)",
    "heisenberg(3, 2, 1)",
    "heisenberg(3, 4, 1)",
    "heisenberg(5, 2, 1)",
    "product(cyclic(3), heisenberg(3, 2, 1))",
    "exceptional128",
]


@lru_cache(maxsize=None)
def group(spec: str):
    return catalog.build(spec)


@lru_cache(maxsize=None)
def table(spec: str):
    return character_table(group(spec))


@pytest.fixture(scope="session")
def heis27():
    return group("heisenberg(3, 2, 1)")


@pytest.fixture(scope="session")
def ex128():
    return group("exceptional128")


# -- acceptance summary -------------------------------------------------------

ACCEPTANCE_RESULTS: dict[str, tuple[str, str]] = {}


@pytest.hookimpl(hookwrapper=True)
def pytest_runtest_makereport(item, call):
    outcome = yield
    rep = outcome.get_result()
    label = getattr(item.function, "criterion", None)
    if label and rep.when == "call":
        ACCEPTANCE_RESULTS[label] = ("PASS" if rep.passed else "FAIL", item.function.__doc__ or "")


def pytest_terminal_summary(terminalreporter):
    if not ACCEPTANCE_RESULTS:
        return
    terminalreporter.section("acceptance criteria")
    for label in sorted(ACCEPTANCE_RESULTS, key=lambda s: int(s.split()[-1])):
        status, doc = ACCEPTANCE_RESULTS[label]
        terminalreporter.write_line(f"[{status}] {label}: {doc.strip().splitlines()[0]}")

import importlib.util
import os
import shutil
import sys

import pytest

from hypercube_dml.core import Labeling
from hypercube_dml.paper_data import paper_labelings

SOLVER_ENV = "HYPERCUBE_DML_SOLVER"


def find_external_solver():
    """Command template for a DIMACS solver, or None.

    Order: $HYPERCUBE_DML_SOLVER, a cadical/kissat binary on PATH, then the
    bundled python-sat wrapper when python-sat is importable.
    """
    if os.environ.get(SOLVER_ENV):
        return os.environ[SOLVER_ENV]
    if shutil.which("cadical"):
        return "cadical -q --seed={seed} {cnf}"
    if shutil.which("kissat"):
        return "kissat -q --seed={seed} {cnf}"
    if importlib.util.find_spec("pysat") is not None:
        return f"{sys.executable} -m hypercube_dml.pysat_solver {{cnf}} --seed {{seed}}"
    return None


@pytest.fixture(scope="session")
def external_solver():
    return find_external_solver()


@pytest.fixture(scope="session")
def paper_labs():
    return paper_labelings()


@pytest.fixture
def q2_identity():
    return Labeling(2, (0, 1, 2, 3))


_criteria: dict[int, tuple[str, str]] = {}


def pytest_configure(config):
    config.addinivalue_line("markers", "criterion(number, title): acceptance criterion exercised by the test")


@pytest.hookimpl(hookwrapper=True)
def pytest_runtest_makereport(item, call):
    outcome = yield
    rep = outcome.get_result()
    mark = item.get_closest_marker("criterion")
    if mark is None:
        return
    number, title = mark.args
    if rep.when == "call" or (rep.when == "setup" and not rep.passed):
        if rep.skipped:
            status = "UNKNOWN (skipped: {})".format(rep.longrepr[2] if isinstance(rep.longrepr, tuple) else rep.longrepr)
        else:
            status = "PASS" if rep.passed else "FAIL"
        prev = _criteria.get(number)
        if prev is None or prev[1] == "PASS":
            _criteria[number] = (title, status)


def pytest_terminal_summary(terminalreporter):
    if not _criteria:
        return
    terminalreporter.section("acceptance criteria")
    for number in sorted(_criteria):
        title, status = _criteria[number]
        terminalreporter.write_line(f"criterion {number}: {status} - {title}")

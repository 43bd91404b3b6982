from __future__ import annotations

import numpy as np
import pytest

from helpers import dyad_fixture_cells, make_tensor, random_active_grids, write_edge_list


@pytest.fixture
def rng() -> np.random.Generator:
    return np.random.default_rng(20150612)


@pytest.fixture
def small_tensor(rng):
    return make_tensor(random_active_grids(rng, 6, density=0.7, high=40))


@pytest.fixture
def dyad_year_files(tmp_path):
    """The 12-journal dyad fixture written as three TSV edge lists."""
    paths = {}
    for label, cells in dyad_fixture_cells().items():
        path = tmp_path / f"year_{label}.tsv"
        write_edge_list(path, cells, comment="fixture")
        paths[label] = path
    return paths


# One pass/fail line per acceptance criterion at the end of the run.
_ACCEPTANCE_RESULTS: dict[str, str] = {}


def pytest_runtest_logreport(report):
    if "test_acceptance" not in report.nodeid:
        return
    name = report.nodeid.split("::")[-1]
    if report.when == "call":
        _ACCEPTANCE_RESULTS[name] = "PASS" if report.passed else "FAIL"
    elif report.when == "setup" and report.skipped:
        _ACCEPTANCE_RESULTS[name] = "SKIP"
    elif report.when == "setup" and report.failed:
        _ACCEPTANCE_RESULTS[name] = "ERROR"


def pytest_terminal_summary(terminalreporter, exitstatus, config):
    if not _ACCEPTANCE_RESULTS:
        return
    terminalreporter.write_sep("-", "acceptance criteria")
    for name in sorted(_ACCEPTANCE_RESULTS):
        terminalreporter.write_line(f"{_ACCEPTANCE_RESULTS[name]}  {name}")

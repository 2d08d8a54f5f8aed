"""Shared fixtures and the acceptance checklist reporter.

Acceptance tests register one verdict per numbered check via
``record_check``; a terminal summary block then prints one PASS/FAIL line
per check so the overall gate can be read at a glance.
"""
from __future__ import annotations

import sys
from pathlib import Path

import pytest

sys.path.insert(0, str(Path(__file__).parent))

from repdays import default_config, distance_matrix, generate
from repdays.ingest import normalize

_CHECKS: dict[int, tuple[str, bool, str]] = {}


def record_check(number: int, name: str, passed: bool, detail: str = "") -> None:
    """Register an acceptance verdict for the terminal summary."""
    _CHECKS[number] = (name, passed, detail)


def pytest_terminal_summary(terminalreporter, exitstatus, config):
    if not _CHECKS:
        return
    tr = terminalreporter
    tr.section("acceptance checks")
    for number in sorted(_CHECKS):
        name, passed, detail = _CHECKS[number]
        verdict = "PASS" if passed else "FAIL"
        line = f"[{number}] {name}: {verdict}"
        if detail:
            line += f"  ({detail})"
        tr.write_line(line, green=passed, red=not passed)


# ---------------------------------------------------------------------------
# flagship dataset: seed 42, two years hourly, load + solar, ~2% labeled
# outlier days; shared across the qualitative acceptance checks

@pytest.fixture(scope="session")
def flagship_result():
    return generate(default_config(seed=42, n_days=730))


@pytest.fixture(scope="session")
def flagship_ds(flagship_result):
    return normalize(flagship_result.dataset)


@pytest.fixture(scope="session")
def flagship_dm(flagship_ds):
    # 730*729/2 pairwise multivariate DTW calls; a few seconds with numba
    return distance_matrix(flagship_ds)


# smaller dataset for module-level tests

@pytest.fixture(scope="session")
def small_ds():
    return normalize(generate(default_config(seed=7, n_days=90)).dataset)


@pytest.fixture(scope="session")
def small_dm(small_ds):
    return distance_matrix(small_ds)

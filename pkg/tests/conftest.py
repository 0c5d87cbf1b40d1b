"""Shared fixtures and the acceptance summary printed after the run."""

from __future__ import annotations

import os

import pytest
from hypothesis import HealthCheck, settings

from bridge_elicit.cards import parse_deal, parse_hand
from bridge_elicit.synthetic import planted_dataset

settings.register_profile("default", deadline=None, suppress_health_check=[HealthCheck.too_slow])
settings.load_profile(os.environ.get("HYPOTHESIS_PROFILE", "default"))

EXAMPLE1_LINE = "n N:6.AQ93.KQT42.A94 E:T3.J84.A7.QJ8762 S:Q94.KT652.95.KT3 W:AKJ8752.7.J863.5"
EXAMPLE2_LINE = "n N:J2.AJ73.AK106.AJ9 E:7.Q98.QJ74.Q7652 S:Q94.KT652.95.KT3 W:AKT8653.4.832.84"

# criterion number -> (passed, detail); filled by test_acceptance.py
ACCEPTANCE: dict[int, tuple[bool, str]] = {}


@pytest.fixture(scope="session")
def example1():
    return parse_deal(EXAMPLE1_LINE)


@pytest.fixture(scope="session")
def example2():
    return parse_deal(EXAMPLE2_LINE)


@pytest.fixture(scope="session")
def example1_south():
    return parse_hand("Q94.KT652.95.KT3")


@pytest.fixture(scope="session")
def planted_train():
    return planted_dataset(500, 1)


@pytest.fixture(scope="session")
def planted_heldout():
    return planted_dataset(500, 2)


def pytest_terminal_summary(terminalreporter):
    if not ACCEPTANCE:
        return
    terminalreporter.section("acceptance criteria")
    for n in sorted(ACCEPTANCE):
        ok, detail = ACCEPTANCE[n]
        terminalreporter.write_line(f"criterion {n:2d}: {'PASS' if ok else 'FAIL'}  {detail}")

"""Acceptance gate: every named verification criterion at its pinned tolerance.

The suite is executed once at the default configuration; each criterion then
gets its own pass/fail test line, followed by the runtime budgets.
"""

import pytest

from bosonreg.checks import CRITERION_NAMES, VerifyConfig, run_criteria


@pytest.fixture(scope="module")
def results():
    outcome = run_criteria(VerifyConfig())
    return {r.name: r for r in outcome}


def test_all_criteria_present(results):
    assert tuple(results) == CRITERION_NAMES
    assert len(results) == 12


@pytest.mark.parametrize("name", CRITERION_NAMES)
def test_criterion(results, name):
    r = results[name]
    verdict = "PASS" if r.passed else "FAIL"
    print(
        f"{verdict} {name}: max_deviation={r.max_deviation:.3g}"
        f" tolerance={r.tolerance:g} ({r.seconds:.2f}s)"
    )
    assert r.passed, f"{name}: {r.detail}"


def test_runtime_budgets(results):
    assert results["product-table-closure"].seconds < 1.0
    assert results["gate-identities"].seconds < 1.0
    assert results["bosonic-filter"].seconds < 5.0
    assert results["coherent-dynamics"].seconds < 5.0
    assert sum(r.seconds for r in results.values()) < 60.0

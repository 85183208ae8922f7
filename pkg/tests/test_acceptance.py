"""Acceptance criteria A1-A10, one test per criterion.

Each test runs the corresponding registered check at its stated depth and
prints one PASS/FAIL line with the measured detail.
"""

import pytest

from sheafcount import checks

_IDS = [cid for cid, _ in checks.available()]


def _run_one(check_id):
    (result,) = checks.run(only=[check_id])
    status = "PASS" if result.passed else "FAIL"
    print(f"{result.check_id}: {status} [{result.name}] {result.detail}")
    assert result.passed, result.detail


@pytest.mark.parametrize("check_id", _IDS)
def test_acceptance(check_id):
    _run_one(check_id)


def test_all_ten_criteria_are_registered():
    assert _IDS == [f"A{i}" for i in range(1, 11)]

"""Acceptance criteria, one test each, at their stated tolerances.

Each test prints a single PASS/FAIL line with the measured errors. Run the
file directly (``python tests/test_acceptance.py``) for the bare report.
"""

import sys
import time

import pytest

from qblob import acceptance


@pytest.mark.parametrize("criterion", acceptance.ALL_CRITERIA, ids=lambda c: c.__name__.removeprefix("criterion_"))
def test_criterion(criterion, capsys):
    result = criterion()
    with capsys.disabled():
        print("\n" + result.line())
    assert result.passed, result.line()


def test_full_suite_runtime():
    t0 = time.perf_counter()
    results = acceptance.run()
    elapsed = time.perf_counter() - t0
    assert all(r.passed for r in results)
    assert elapsed <= 60.0, f"full suite took {elapsed:.1f}s"


def test_fast_subset_runtime():
    t0 = time.perf_counter()
    acceptance.run(acceptance.FAST_CRITERIA)
    assert time.perf_counter() - t0 <= 10.0


def test_wigner_criterion_runtime():
    assert acceptance.criterion_wigner_closed_form().seconds <= 10.0


if __name__ == "__main__":
    results = acceptance.run()
    for r in results:
        print(r.line())
    sys.exit(0 if all(r.passed for r in results) else 1)

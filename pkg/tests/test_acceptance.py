"""Every acceptance criterion, one PASS/FAIL line each (collected into the terminal summary)."""
import pytest

from hodgering.selftest import CRITERIA, run_criterion

RESULTS = []


@pytest.mark.parametrize("num, title, fn", CRITERIA, ids=[f"criterion_{n}" for n, _, _ in CRITERIA])
def test_criterion(num, title, fn):
    passed, detail = run_criterion(fn, seed=0)
    line = f"{'PASS' if passed else 'FAIL'} criterion {num} ({title}): {detail}"
    RESULTS.append(line)
    print(line)
    assert passed, detail

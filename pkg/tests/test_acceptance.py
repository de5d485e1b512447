"""The eleven acceptance criteria, each run at its stated scope and time limit."""

import pytest

from normspan import verify

RESULTS = {}


def line(number, title, ok, dt, limit, res):
    status = "PASS" if ok else "FAIL"
    extra = "" if res.passed else f"; first failure: {res.failures[0]}"
    return f"criterion {number:2d} {status}  {title}  ({res.checked} checks, {dt:.1f}s of {limit}s{extra})"


@pytest.mark.parametrize("number,title,limit", [(n, t, s) for n, t, s, _ in verify.CRITERIA],
                         ids=[f"criterion_{n}" for n, *_ in verify.CRITERIA])
def test_criterion(number, title, limit):
    res, dt, in_time = verify.run_criterion(number)
    ok = res.passed and in_time
    RESULTS[number] = line(number, title, ok, dt, limit, res)
    print(RESULTS[number])
    assert res.passed, res.failures
    assert in_time, f"took {dt:.1f}s, limit {limit}s"

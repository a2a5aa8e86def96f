"""The twelve acceptance criteria, one test each.

Each test prints a single pass/fail line (also collected into the terminal
summary) and then asserts the check and its runtime limit.
"""
import pytest

from hilbert49 import verify

LIMITS = {  # seconds
    "trace_tables": 1,
    "character_identity": 30,
    "eisenstein_expansions": 10,
    "relation": 300,
    "octic_orbit": 300,
    "toric_checks": 1,
}


@pytest.mark.parametrize("fn", verify.ALL_CHECKS, ids=[f.__name__ for f in verify.ALL_CHECKS])
def test_criterion(fn, acceptance_log):
    number = verify.ALL_CHECKS.index(fn) + 1
    check = verify.run_check(fn, verify.Config())
    limit = LIMITS.get(fn.__name__)
    in_time = limit is None or check.seconds < limit
    ok = check.passed and in_time
    line = f"criterion {number:2d} {'PASS' if ok else 'FAIL'}  {check.line()}"
    if not in_time:
        line += f"  over the {limit}s limit"
    print(line)
    acceptance_log.append(line)
    assert check.passed, (check.value, check.expected, check.notes)
    assert in_time, f"{check.id} took {check.seconds:.2f}s, limit {limit}s"

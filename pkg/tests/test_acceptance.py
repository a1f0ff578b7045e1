"""The nine acceptance criteria, one test each.

Each test prints a PASS/FAIL line; the lines are also collected and shown
in the terminal summary.  Run directly with ``python tests/test_acceptance.py``.
"""

import sys

import pytest

from loopcoh import verification as v

LINES = []

TIME_LIMITS = {1: 1.0, 2: 1.0, 3: 60.0}


@pytest.mark.parametrize("check", v.CHECKS, ids=[f"criterion_{i}" for i in range(1, 10)])
def test_criterion(check):
    res = v.run_check(check)
    limit = TIME_LIMITS.get(res.number)
    if limit is not None and res.seconds >= limit:
        res.passed = False
        res.detail += f"; took {res.seconds:.2f}s, limit {limit}s"
    LINES.append(res.line())
    print(res.line())
    if res.number == 7:
        print(v.format_inverse_property_table(res.data["rows"]))
    assert res.passed, res.line()


if __name__ == "__main__":
    results = v.run_suite(out=sys.stdout)
    sys.exit(0 if all(r.passed for r in results) else 1)

"""Acceptance gate: every advertised guarantee at its stated tolerance.

Run with ``pytest tests/test_acceptance.py -v -s`` to see one line per
criterion; ``turan verify --suite all`` prints the same checks.
"""

import time

import pytest

from turan.verify import CHECKS

CRITERIA = [
    ("1", "lagrangian-targets", 5.0 * 10),  # <5s per target, 10 targets
    ("2", "segment-certificates", 1.0),
    ("3", "construction-fidelity", 1.0),
    ("4", "extremal-counts", 10.0),
    ("5", "homomorphism-lemmas", 60.0),
    ("6", "feasible-region", 30.0),
    ("7", "property-suites", None),
    ("8", "stability-fit", 60.0),
]


@pytest.mark.parametrize("number,name,time_budget", CRITERIA, ids=[c[1] for c in CRITERIA])
def test_criterion(number, name, time_budget):
    started = time.monotonic()
    results = CHECKS[name](seed=0)
    elapsed = time.monotonic() - started
    for line in results:
        status = "PASS" if line.passed else "FAIL"
        detail = f"  [{line.detail}]" if line.detail else ""
        print(f"{status}  criterion {number} ({name}): {line.name}{detail}")
    print(f"criterion {number} ({name}) finished in {elapsed:.2f}s")
    failed = [line.name for line in results if not line.passed]
    assert not failed, f"criterion {number} failed: {failed}"
    if time_budget is not None:
        assert elapsed <= time_budget, f"criterion {number} took {elapsed:.2f}s"

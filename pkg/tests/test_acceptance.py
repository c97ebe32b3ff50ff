"""Acceptance criteria, one check per criterion.

Run ``python3 tests/test_acceptance.py`` for a PASS/FAIL line per criterion,
or ``pytest tests/test_acceptance.py -s`` to see the same lines under pytest.
"""

import random
import sys
import time

import pytest

from tropscheme import verify
from tropscheme.cli import JobConfig, run

SEED = 0


def _timed(fn, key):
    t0 = time.perf_counter()
    res = fn(random.Random(f"{SEED}:{key}"))
    return res, time.perf_counter() - t0


def _suite(key, fn, limit=None, extra=lambda res: True):
    res, dt = _timed(fn, key)
    ok = res.passed and extra(res) and (limit is None or dt < limit)
    budget = f" (limit {limit:g} s)" if limit else ""
    detail = f"{res.checked} checks, {len(res.failures)} failures, {dt:.2f} s{budget}"
    return ok, detail


def c1():
    return _suite("1", verify.suite_tropical_line, 1.0, lambda r: r.checked == 17 * 17)


def c2():
    return _suite("2", verify.suite_nary_relation, 1.0)


def c3():
    return _suite("3", verify.suite_bend_recovery, 10.0, lambda r: r.details["polynomials"] >= 50)


def c4():
    return _suite("4", verify.suite_seminorm, None, lambda r: r.checked == 3 * 10_000 + 3 * 1000)


def c5():
    return _suite("5", verify.suite_berkovich)


def c6():
    return _suite("6", verify.suite_idem_pos)


def c7():
    return _suite("7", verify.suite_extended)


def c8():
    return _suite("8", verify.suite_padic_agreement, 1.0, lambda r: r.checked == 13 * 13)


def c9():
    cfg = JobConfig("verify", seed=SEED)
    a, ok_a = run(cfg)
    b, ok_b = run(cfg)
    return a == b and ok_a and ok_b, f"{len(a.encode())} bytes, identical={a == b}"


CRITERIA = [
    ("1 tropical line agrees with max-twice on [0,4]^2 step 1/4", c1),
    ("2 n-ary relation equals iterated set hypersum", c2),
    ("3 bend relations derived both ways, trivial and 3-adic", c3),
    ("4 p-adic seminorm axioms and multi-term decompositions", c4),
    ("5 line image nontrivial exactly for T, T+1, infinity", c5),
    ("6 idempotent normal forms and order criterion", c6),
    ("7 extended tropical semiring laws", c7),
    ("8 three-way agreement for T1+T2+3 over 3-adics", c8),
    ("9 verify reports are byte-identical for equal seeds", c9),
]


@pytest.mark.parametrize("name,fn", CRITERIA, ids=[n.split()[0] for n, _ in CRITERIA])
def test_criterion(name, fn):
    ok, detail = fn()
    print(f"{'PASS' if ok else 'FAIL'} criterion {name}: {detail}")
    assert ok, detail


if __name__ == "__main__":
    failed = 0
    for name, fn in CRITERIA:
        ok, detail = fn()
        failed += not ok
        print(f"{'PASS' if ok else 'FAIL'} criterion {name}: {detail}")
    sys.exit(1 if failed else 0)

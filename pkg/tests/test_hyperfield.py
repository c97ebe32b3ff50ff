from fractions import Fraction

import pytest
from hypothesis import given, strategies as st

from tropscheme.hyperfield import Ghost, HyperSet, Point, ext_add, ext_mul, hypersum, hypersum_n, leq_T
from tropscheme.verify import ext_add_oracle, fold_membership_oracle

vals = st.fractions(min_value=0, max_value=6, max_denominator=3)


def test_hypersum_examples():
    assert hypersum(2, 3) == HyperSet.singleton(3)
    assert hypersum(2, 2) == HyperSet.interval0(2)
    assert hypersum(0, 5) == HyperSet.singleton(5)
    assert hypersum(0, 0) == HyperSet.singleton(0)


def test_hypersum_n_examples():
    assert hypersum_n([2, 2, 1]) == HyperSet.interval0(2)
    assert hypersum_n([3, 1, 2]) == HyperSet.singleton(3)
    assert hypersum_n([Fraction(5, 2)]) == HyperSet.singleton(Fraction(5, 2))
    with pytest.raises(ValueError):
        hypersum_n([])


def test_leq_examples():
    assert leq_T(0, [2, 2, 1])
    assert not leq_T(2, [1, 1])
    assert not leq_T(3, [])
    assert leq_T(0, [])


def test_negative_rejected():
    with pytest.raises(ValueError):
        hypersum(-1, 2)


@given(st.lists(vals, min_size=1, max_size=5), vals)
def test_leq_matches_set_fold(values, c):
    assert leq_T(c, values) == fold_membership_oracle(values, c) == (c in hypersum_n(values))


def test_extended_examples():
    assert ext_add(Point(2), Point(2)) == Ghost(2)
    assert ext_add(Ghost(3), Point(1)) == Ghost(3)
    assert ext_mul(Ghost(2), Point(3)) == Ghost(6)
    assert ext_add(Ghost(1), Point(3)) == Point(3)


elems = st.builds(lambda v, g: Ghost(v) if g else Point(v), vals, st.booleans())


@given(elems, elems, elems)
def test_extended_semiring_laws(x, y, z):
    assert ext_add(x, y) == ext_add(y, x)
    assert ext_add(ext_add(x, y), z) == ext_add(x, ext_add(y, z))
    assert ext_mul(x, ext_add(y, z)) == ext_add(ext_mul(x, y), ext_mul(x, z))


@given(elems, elems, vals)
def test_extended_add_is_set_sum(x, y, c):
    assert (c in ext_add(x, y).as_set()) == ext_add_oracle(x, y, c)

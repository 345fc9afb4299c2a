"""Value groups: lexicographic tuples, finitely supported sequences, and
the rationals, with their shared ordered-group API."""

import pytest
from hypothesis import given
from hypothesis import strategies as st

from ivlab import LexZ, LexZOmega, Rationals, ValidationError, group_from_token


lex3 = LexZ(3)
omega = LexZOmega()
rats = Rationals()

vec3 = st.tuples(*(st.integers(min_value=-6, max_value=6) for _ in range(3)))

sparse = st.lists(
    st.tuples(st.integers(min_value=1, max_value=9),
              st.integers(min_value=-5, max_value=5).filter(lambda v: v != 0)),
    max_size=4,
    unique_by=lambda p: p[0],
).map(lambda ps: tuple(sorted(ps)))

fractions = st.fractions(min_value=-8, max_value=8, max_denominator=16)


def test_group_names():
    assert lex3.name() == "lexZ(3)"
    assert omega.name() == "lexZ(omega)"
    assert rats.name() == "Q"


def test_group_from_token():
    assert group_from_token("lexZ(2)") == LexZ(2)
    assert group_from_token("lexZ(omega)") == LexZOmega()
    assert group_from_token("Q") == Rationals()
    with pytest.raises(ValidationError):
        group_from_token("lexZ(0)")


def test_lexz_rank_validation():
    with pytest.raises(ValidationError):
        LexZ(0)


def test_lex_order_is_dictionary_order():
    assert lex3.cmp((1, -9, -9), (0, 9, 9)) == 1
    assert lex3.cmp((0, 1, -9), (0, 0, 9)) == 1
    assert lex3.cmp((0, 0, 1), (0, 0, 2)) == -1
    assert lex3.cmp((2, 0, 0), (2, 0, 0)) == 0


def test_leading_level():
    assert lex3.leading_level((0, 0, 4)) == 3
    assert lex3.leading_level((0, -1, 4)) == 2
    assert omega.leading_level(((4, 2), (7, -1))) == 4
    with pytest.raises(ValidationError):
        lex3.leading_level((0, 0, 0))


def test_omega_check_rejects_bad_support():
    with pytest.raises(ValidationError):
        omega.check(((2, 1), (2, 3)))     # repeated index
    with pytest.raises(ValidationError):
        omega.check(((3, 0),))            # zero value stored
    with pytest.raises(ValidationError):
        omega.check(((0, 1),))            # indices start at one


def test_omega_make_normalizes():
    assert omega.make([(3, 2), (1, 0), (5, -1)]) == ((3, 2), (5, -1))
    assert omega.make([(2, 1), (2, -1)]) == ()


@given(vec3, vec3)
def test_lex_translation_invariance(x, y):
    z = (1, -2, 3)
    assert lex3.cmp(x, y) == lex3.cmp(lex3.add(x, z), lex3.add(y, z))


@given(vec3, vec3)
def test_lex_add_sub_inverse(x, y):
    assert lex3.sub(lex3.add(x, y), y) == x
    assert lex3.add(x, lex3.neg(x)) == lex3.zero()


@given(sparse, sparse)
def test_omega_add_sub_inverse(x, y):
    assert omega.sub(omega.add(x, y), y) == x
    assert omega.add(x, omega.neg(x)) == omega.zero()


@given(sparse, sparse)
def test_omega_order_matches_dense_comparison(x, y):
    top = max([i for i, _ in x] + [i for i, _ in y] + [1])
    dense = lambda e: tuple(dict(e).get(i, 0) for i in range(1, top + 1))
    want = (dense(x) > dense(y)) - (dense(x) < dense(y))
    assert omega.cmp(x, y) == want


@given(sparse, sparse)
def test_omega_translation_invariance(x, y):
    z = ((2, -1), (6, 4))
    assert omega.cmp(x, y) == omega.cmp(omega.add(x, z), omega.add(y, z))


@given(fractions, fractions)
def test_rationals_order_and_arithmetic(x, y):
    assert rats.cmp(x, y) == (x > y) - (x < y)
    assert rats.sub(rats.add(x, y), y) == x


def test_unit_at():
    assert lex3.unit_at(2) == (0, 1, 0)
    assert omega.unit_at(5) == ((5, 1),)
    assert rats.unit_at(1) == 1


def test_sample_elements_are_valid_and_deterministic():
    import random

    for g in (lex3, omega, rats):
        a = g.sample_elements(random.Random(7), 16)
        b = g.sample_elements(random.Random(7), 16)
        assert a == b
        for x in a:
            g.check(x)

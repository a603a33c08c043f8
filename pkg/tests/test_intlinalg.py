"""Exact integer rank and rational span membership."""

import random

from hypothesis import given, settings
from hypothesis import strategies as st

from sumsetlab.intlinalg import in_rational_span, int_rank


def test_rank_basics():
    assert int_rank([]) == 0
    assert int_rank([[0, 0]]) == 0
    assert int_rank([[1, 0], [0, 1]]) == 2
    assert int_rank([[2, 4], [1, 2], [3, 6]]) == 1
    assert int_rank([[1, 2, 3], [4, 5, 6], [7, 8, 9]]) == 2


def test_rank_large_entries():
    # Bareiss elimination must not overflow or lose precision
    big = 10**30
    assert int_rank([[big, 0], [0, big]]) == 2
    assert int_rank([[big, big], [2 * big, 2 * big]]) == 1


def test_span_membership():
    assert in_rational_span((2, 4), [(1, 2)])
    assert in_rational_span((1, 1), [(2, 0), (0, 3)])
    assert not in_rational_span((0, 1), [(1, 0)])
    assert in_rational_span((0, 0), [])
    assert not in_rational_span((1,), [])


vecs = st.lists(
    st.lists(st.integers(-9, 9), min_size=3, max_size=3), min_size=0, max_size=5
)


@given(vecs)
@settings(max_examples=100)
def test_rank_bounds(rows):
    r = int_rank(rows)
    assert 0 <= r <= min(len(rows), 3)


@given(vecs, st.randoms(use_true_random=False))
@settings(max_examples=100)
def test_rank_invariant_under_row_permutation(rows, rnd):
    shuffled = list(rows)
    rnd.shuffle(shuffled)
    assert int_rank(shuffled) == int_rank(rows)


@given(vecs, st.integers(1, 7))
@settings(max_examples=100)
def test_rank_invariant_under_scaling(rows, c):
    scaled = [[c * x for x in r] for r in rows]
    assert int_rank(scaled) == int_rank(rows)


@given(vecs, st.lists(st.integers(-3, 3), min_size=5, max_size=5))
@settings(max_examples=100)
def test_combinations_stay_in_span(rows, coeffs):
    combo = [0, 0, 0]
    for c, r in zip(coeffs, rows):
        for i in range(3):
            combo[i] += c * r[i]
    assert in_rational_span(tuple(combo), rows)

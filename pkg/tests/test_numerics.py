import random
from fractions import Fraction
from math import gcd

import pytest
from hypothesis import given, settings, strategies as st

from nnrep.errors import RankDeficient, Singular
from nnrep.numerics import (
    RationalMatrix,
    det,
    format_rational,
    mp_inverse,
    parse_rational,
    resolution_matrix,
    resolution_scalar,
    solve_linear,
)


def naive_resolution(q):
    a, b = q.numerator, q.denominator
    r = 0
    while abs(a + 1) > 2**r or abs(b + 1) > 2**r:
        r += 1
    return r


@pytest.mark.parametrize(
    "q, expected",
    [(Fraction(1, 2), 2), (Fraction(0), 1), (Fraction(-3, 4), 3), (Fraction(-1), 1), (Fraction(3), 2)],
)
def test_resolution_scalar(q, expected):
    assert resolution_scalar(q) == expected


def test_resolution_scalar_matches_naive_oracle():
    rng = random.Random(1234)
    for _ in range(10_000):
        a = rng.randint(-(2**40), 2**40) >> rng.randint(0, 40)
        b = rng.randint(1, 2**40) >> rng.randint(0, 39) or 1
        q = Fraction(a, b)
        assert resolution_scalar(q) == naive_resolution(q)


def test_resolution_matrix():
    half = Fraction(1, 2)
    assert resolution_matrix(RationalMatrix([[half, half], [1, 1]])) == 2
    assert resolution_matrix(RationalMatrix.identity(2)) == 1
    assert resolution_matrix(RationalMatrix([[Fraction(-3, 4)]])) == resolution_scalar(Fraction(-3, 4))
    assert resolution_matrix(RationalMatrix([], cols=3)) == 0


rationals = st.fractions(max_denominator=10**6)


@given(rationals, rationals)
def test_arithmetic_closure_stays_normalized(p, q):
    results = [p + q, p - q, p * q] + ([p / q] if q else [])
    for r in results:
        assert r.denominator > 0
        assert gcd(abs(r.numerator), r.denominator) == 1


def test_negative_denominator_normalized():
    q = Fraction(3, -6)
    assert (q.numerator, q.denominator) == (-1, 2)


@pytest.mark.parametrize("text, value", [("3/4", Fraction(3, 4)), ("-7", Fraction(-7)), ("+2/6", Fraction(1, 3))])
def test_parse_rational(text, value):
    assert parse_rational(text) == value


@pytest.mark.parametrize("text", ["1 /2", " 3", "0.5", "1/0", "a/b", "1/-2", ""])
def test_parse_rational_rejects(text):
    with pytest.raises(ValueError):
        parse_rational(text)


@given(rationals)
def test_format_parse_roundtrip(q):
    text = format_rational(q)
    assert parse_rational(text) == q
    assert ("/" in text) == (q.denominator != 1)


def test_det_examples():
    assert det(RationalMatrix.identity(3)) == 1
    assert det([[1, 2], [2, 4]]) == 0
    assert det([[0, 1], [1, 0]]) == -1


def test_solve_examples():
    assert solve_linear([[2, 0], [0, 2]], [1, 1]) == (Fraction(1, 2), Fraction(1, 2))
    with pytest.raises(Singular):
        solve_linear([[1, 2], [2, 4]], [1, 1])


def test_det_against_cofactor_expansion():
    def cofactor(a):
        if len(a) == 1:
            return a[0][0]
        return sum(
            (-1) ** j * a[0][j] * cofactor([row[:j] + row[j + 1:] for row in a[1:]]) for j in range(len(a))
        )

    rng = random.Random(7)
    for _ in range(50):
        k = rng.randint(1, 5)
        a = [[rng.randint(-4, 4) for _ in range(k)] for _ in range(k)]
        assert det(a) == cofactor(a)


def test_mp_inverse_examples():
    assert mp_inverse(RationalMatrix.identity(2)) == RationalMatrix.identity(2)
    assert mp_inverse([[1, 1]]) == RationalMatrix([[Fraction(1, 2)], [Fraction(1, 2)]])
    W = RationalMatrix([[1, 2, 0], [0, 1, -3]])
    assert W @ mp_inverse(W) == RationalMatrix.identity(2)


def test_mp_inverse_rank_deficient():
    with pytest.raises(RankDeficient):
        mp_inverse([[1, 1], [2, 2]])
    with pytest.raises(RankDeficient):
        mp_inverse([[1], [2]])


@st.composite
def full_row_rank(draw):
    n = draw(st.integers(1, 6))
    m = draw(st.integers(1, n))
    entries = st.integers(-5, 5)
    W = draw(st.lists(st.lists(entries, min_size=n, max_size=n), min_size=m, max_size=m))
    M = RationalMatrix(W)
    from hypothesis import assume

    assume(det(M @ M.T) != 0)
    return M


@settings(max_examples=150, deadline=None)
@given(full_row_rank())
def test_mp_inverse_is_right_inverse(W):
    assert W @ mp_inverse(W) == RationalMatrix.identity(W.rows)

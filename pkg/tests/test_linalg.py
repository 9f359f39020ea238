from fractions import Fraction as F

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from leibsuper import linalg
from leibsuper.linalg import identity, kernel, matvec, rank, rank_power_sequence, rref, zeros

small = st.fractions(min_value=-3, max_value=3, max_denominator=3)


@st.composite
def matrices(draw, max_rows=5, max_cols=5):
    r = draw(st.integers(0, max_rows))
    c = draw(st.integers(1, max_cols))
    return [[draw(small) for _ in range(c)] for _ in range(r)]


@st.composite
def square(draw, max_dim=5):
    d = draw(st.integers(1, max_dim))
    return [[draw(small) for _ in range(d)] for _ in range(d)]


def test_rref_examples():
    assert rref(identity(2)) == (identity(2), 2)
    assert rref(zeros(3, 4)) == (zeros(3, 4), 0)
    # hand elimination: R2 -= 2 R1
    R, r = rref([[1, 2], [2, 4]])
    assert R == [[1, 2], [0, 0]] and r == 1


def test_rref_hand_example_with_fractions():
    R, r = rref([[2, 4, 1], [1, 1, 0]])
    # R1/2 = [1, 2, 1/2]; R2 - R1 = [0, -1, -1/2]; -R2 = [0, 1, 1/2]; R1 - 2 R2
    assert R == [[1, 0, F(-1, 2)], [0, 1, F(1, 2)]] and r == 2


def test_kernel_examples():
    assert kernel(identity(3)) == []
    assert kernel(zeros(2, 3)) == identity(3)
    K = kernel([[1, 1, 0]])
    assert len(K) == 2
    for v in K:
        assert v[0] + v[1] == 0  # substitution: x1 = -x2, x3 free
    assert linalg.rank(K) == 2


def test_kernel_of_empty_row_list_needs_width():
    assert kernel([], ncols=2) == identity(2)


def test_rank_power_sequence_examples():
    shift = [[0] * 4 for _ in range(4)]
    for i in range(3):
        shift[i + 1][i] = 1
    assert rank_power_sequence(shift) == [4, 3, 2, 1, 0]
    assert rank_power_sequence(zeros(3, 3)) == [3, 0]
    assert rank_power_sequence(identity(4)) == [4, 4]


def test_rank_power_sequence_needs_square():
    with pytest.raises(ValueError):
        rank_power_sequence([[1, 2, 3]])


def test_floats_are_rejected():
    with pytest.raises(TypeError):
        linalg.to_fraction(0.5)
    with pytest.raises(TypeError):
        linalg.to_fraction(True)


def test_inverse_and_singular():
    M = [[2, 1], [1, 1]]
    assert linalg.matmul(M, linalg.inverse(M)) == identity(2)
    with pytest.raises(ZeroDivisionError):
        linalg.inverse([[1, 2], [2, 4]])


@settings(max_examples=150, deadline=None)
@given(matrices())
def test_rref_idempotent(M):
    R, r = rref(M)
    assert rref(R) == (R, r)


@settings(max_examples=150, deadline=None)
@given(matrices())
def test_rank_nullity_and_kernel_rows(M):
    cols = len(M[0]) if M else 1
    K = kernel(M, cols)
    assert rank(M) + len(K) == cols
    for v in K:
        assert all(x == 0 for x in matvec(M, v))
    assert rref(K)[0][: len(K)] == K  # returned already reduced


@settings(max_examples=150, deadline=None)
@given(matrices())
def test_fraction_free_rank_matches_rref(M):
    assert rank(M) == rref(M)[1]


@settings(max_examples=100, deadline=None)
@given(square())
def test_rank_power_sequence_against_explicit_powers(M):
    seq = rank_power_sequence(M)
    # oracle: form the powers and reduce each one
    expect = [len(M)]
    P = identity(len(M))
    while True:
        P = linalg.matmul(P, M)
        expect.append(rref(P)[1])
        if expect[-1] in (expect[-2], 0):
            break
    assert seq == expect
    assert all(a >= b for a, b in zip(seq, seq[1:]))
    assert len(seq) <= len(M) + 2

import itertools
import random
from fractions import Fraction

import pytest
from hypothesis import given, settings, strategies as st

from ribbonseries.exact import (
    GF,
    QQ,
    ExactMatrix,
    LaurentPoly,
    determinant,
    laurent_derivative,
    parse_field,
    rank_and_kernel,
    solve_linear,
    window_project,
)

from conftest import laurent_polys

F7 = GF(7)


def lp(d, field=QQ):
    return LaurentPoly.from_dict(d, field)


# --- laurent_derivative -------------------------------------------------------

def test_derivative_power_rule():
    assert laurent_derivative(lp({2: 1, 1: 3})) == lp({1: 2, 0: 3})


def test_derivative_of_constant_is_zero():
    assert laurent_derivative(lp({0: 5})).is_zero()


def test_derivative_negative_exponent_mod_7():
    assert laurent_derivative(lp({-2: 1}, F7)) == lp({-3: 5}, F7)


@given(laurent_polys(QQ), laurent_polys(QQ))
def test_leibniz_rule_rationals(p, q):
    assert (p * q).derivative() == p.derivative() * q + p * q.derivative()


@given(laurent_polys(F7), laurent_polys(F7))
def test_leibniz_rule_f7(p, q):
    assert (p * q).derivative() == p.derivative() * q + p * q.derivative()


# --- window_project -----------------------------------------------------------

def test_window_examples():
    assert window_project(lp({3: 1, -1: 1, -9: 1}), -5, -1) == lp({-1: 1})
    assert window_project(LaurentPoly.zero(QQ), -3, 4).is_zero()
    assert window_project(lp({-2: 2, -5: 1}), -4, -1) == lp({-2: 2})


def test_window_rejects_inverted_bounds():
    with pytest.raises(ValueError):
        window_project(lp({0: 1}), 1, 0)


@given(laurent_polys(QQ), laurent_polys(QQ), st.integers(-5, 5), st.integers(-5, 5), st.integers(-4, 0), st.integers(0, 4))
def test_window_idempotent_and_linear(p, q, a, b, lo, hi):
    w = lambda x: window_project(x, lo, hi)
    assert w(w(p)) == w(p)
    assert w(p.scale(a) + q.scale(b)) == w(p).scale(a) + w(q).scale(b)


def test_zero_is_canonical():
    assert lp({1: 0, -3: 0}) == LaurentPoly.zero(QQ)
    assert lp({2: 1}) - lp({2: 1}) == LaurentPoly.zero(QQ)


def test_field_mismatch_rejected():
    with pytest.raises(ValueError):
        lp({1: 1}) + lp({1: 1}, F7)


# --- rank_and_kernel ----------------------------------------------------------

def test_identity_rank():
    rank, ker = rank_and_kernel(ExactMatrix.from_rows([[1, 0, 0], [0, 1, 0], [0, 0, 1]], QQ))
    assert rank == 3 and ker == []


def test_zero_matrix_kernel():
    rank, ker = rank_and_kernel(ExactMatrix.zeros(4, 2, QQ))
    assert rank == 0 and len(ker) == 2


def test_worked_rank_example_with_enumeration_oracle():
    rows = [[0, 2], [1, 0], [0, 0], [0, 0]]
    rank, ker = rank_and_kernel(ExactMatrix.from_rows(rows, QQ))
    assert rank == 2 and ker == []
    # oracle: null vectors of the mod-3 reduction, by enumeration
    null = [v for v in itertools.product(range(3), repeat=2)
            if all(sum(r[j] * v[j] for j in range(2)) % 3 == 0 for r in rows)]
    assert null == [(0, 0)]


def _gauss_rank_oracle(rows):
    """Plain Fraction Gaussian elimination, no pivoting tricks."""
    m = [[Fraction(x) for x in r] for r in rows]
    rank = 0
    ncols = len(m[0]) if m else 0
    for c in range(ncols):
        piv = next((i for i in range(rank, len(m)) if m[i][c] != 0), None)
        if piv is None:
            continue
        m[rank], m[piv] = m[piv], m[rank]
        for i in range(len(m)):
            if i != rank and m[i][c] != 0:
                f = m[i][c] / m[rank][c]
                m[i] = [x - f * y for x, y in zip(m[i], m[rank])]
        rank += 1
    return rank


matrices = st.integers(1, 6).flatmap(
    lambda r: st.integers(1, 6).flatmap(
        lambda c: st.lists(st.lists(st.integers(-4, 4), min_size=c, max_size=c), min_size=r, max_size=r)
    )
)


@given(matrices)
def test_bareiss_matches_fraction_elimination(rows):
    M = ExactMatrix.from_rows(rows, QQ)
    rank, ker = rank_and_kernel(M)
    assert rank == _gauss_rank_oracle(rows)
    assert rank + len(ker) == M.cols
    for v in ker:
        assert all(x == 0 for x in M.apply(v))


@given(matrices)
def test_rational_entries_keep_exactness(rows):
    scaled = [[Fraction(x, (i + j) % 3 + 1) for j, x in enumerate(r)] for i, r in enumerate(rows)]
    M = ExactMatrix.from_rows(scaled, QQ)
    rank, ker = rank_and_kernel(M)
    assert rank == _gauss_rank_oracle(scaled)
    for v in ker:
        assert all(x == 0 for x in M.apply(v))


@given(matrices, st.sampled_from([2, 3, 5, 7, 101]))
def test_prime_field_kernel(rows, p):
    M = ExactMatrix.from_rows(rows, GF(p))
    rank, ker = rank_and_kernel(M)
    assert rank + len(ker) == M.cols
    for v in ker:
        assert all(x == 0 for x in M.apply(v))
    assert rank_and_kernel(ExactMatrix.from_rows([list(v) for v in ker], GF(p), cols=M.cols))[0] == len(ker) if ker else True


def test_rank_equals_rank_of_transpose():
    rng = random.Random(1)
    for _ in range(50):
        r, c = rng.randint(1, 6), rng.randint(1, 6)
        for field in (QQ, GF(5)):
            M = ExactMatrix.from_rows([[rng.randint(-3, 3) for _ in range(c)] for _ in range(r)], field)
            assert M.rank() == M.transpose().rank()


def test_rational_rank_dominates_prime_rank():
    rng = random.Random(2)
    for _ in range(50):
        r, c = rng.randint(1, 5), rng.randint(1, 5)
        rows = [[rng.randint(-50, 50) for _ in range(c)] for _ in range(r)]
        rq = ExactMatrix.from_rows(rows, QQ).rank()
        r101 = ExactMatrix.from_rows(rows, GF(101)).rank()
        r103 = ExactMatrix.from_rows(rows, GF(103)).rank()
        assert rq >= r101 and rq >= r103
        assert rq in (r101, r103)


def _leibniz_det(rows):
    n = len(rows)
    total = Fraction(0)
    for perm in itertools.permutations(range(n)):
        inv = sum(1 for i in range(n) for j in range(i + 1, n) if perm[i] > perm[j])
        prod = Fraction(1)
        for i in range(n):
            prod *= rows[i][perm[i]]
        total += -prod if inv % 2 else prod
    return total


@given(st.integers(1, 4).flatmap(lambda n: st.lists(st.lists(st.integers(-5, 5), min_size=n, max_size=n), min_size=n, max_size=n)))
def test_determinant_matches_permutation_expansion(rows):
    half = [[Fraction(x, 2) for x in r] for r in rows]
    assert determinant(ExactMatrix.from_rows(half, QQ)) == _leibniz_det(half)
    assert determinant(ExactMatrix.from_rows(rows, GF(7))) == _leibniz_det(rows) % 7


def test_solve_linear_consistent_and_inconsistent():
    A = ExactMatrix.from_rows([[1, 1], [2, 2]], QQ)
    x, ker = solve_linear(A, [QQ(3), QQ(6)])
    assert A.apply(x) == (3, 6) and len(ker) == 1
    assert solve_linear(A, [QQ(3), QQ(5)]) is None


def test_field_parsing_and_format():
    assert parse_field("q") == QQ
    assert parse_field("fp:7") == F7
    with pytest.raises(ValueError):
        parse_field("fp:8")
    assert QQ.format(QQ.parse("-6/4")) == "-3/2"
    assert F7.parse("1/2") == 4
    assert F7.format(F7(-1)) == "6"


def test_matrix_json_round_trip():
    M = ExactMatrix.from_rows([[Fraction(1, 2), 0], [3, -1]], QQ)
    data = M.to_json()
    assert data == {"rows": 2, "cols": 2, "entries": [["1/2", "0"], ["3", "-1"]]}
    assert ExactMatrix.from_json(data, QQ) == M

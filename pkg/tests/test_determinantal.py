import itertools

import pytest

from ribbonseries.determinantal import (
    bn_entries,
    bn_space,
    build_A,
    build_Abar,
    catalecticant,
    catalecticant_space,
    clifford_check,
    in_BW,
    in_W,
    projective_space,
)
from ribbonseries.exact import GF, QQ, ExactMatrix, LaurentPoly
from ribbonseries.ribbon import BundleDatum, ProjBundlePoint, RibbonDatum
from ribbonseries.sections import delta_L

from conftest import random_bundle


def bundle(g, F, n, G, field=QQ):
    return BundleDatum.from_coefficients(RibbonDatum.from_coefficients(g, F, field), n, G)


def rows_of(M):
    return [list(r) for r in M.to_rows()]


# --- build_A -----------------------------------------------------------------

def test_hankel_example():
    A = build_A(bundle(5, [0, 0, 0], 2, [1, 2, 3, 4, 5]))
    assert rows_of(A.matrix) == [[1, 2, 3], [2, 3, 4], [3, 4, 5]]


def test_worked_example_with_delta_cross_check():
    L = bundle(5, [1, 0, 0], 1, [0, 1, 0, 0, 0])
    A = build_A(L)
    assert rows_of(A.matrix) == [[0, 2], [1, 0], [0, 0], [0, 0]]
    cols = [delta_L(L, LaurentPoly.monomial(j, QQ)) for j in range(2)]
    assert [[-cols[j].coeff(-m) for j in range(2)] for m in range(1, 5)] == rows_of(A.matrix)


def test_rank_one_example():
    A = build_A(bundle(5, [1, 0, 0], 2, [1, 0, 0, 0, 0]))
    assert rows_of(A.matrix) == [[1, 1, 0], [0, 0, 0], [0, 0, 0]]
    assert A.rank() == 1


def test_shape_guard():
    with pytest.raises(ValueError):
        build_A(bundle(5, [1, 0, 0], 5, [0] * 5))
    with pytest.raises(ValueError):
        build_A(bundle(5, [1, 0, 0], -1, [0] * 5))


def test_entry_formula_literal(rng):
    for _ in range(50):
        g = rng.randint(3, 10)
        n = rng.randint(0, g - 1)
        F = [rng.randint(-5, 5) for _ in range(g - 2)]
        G = [rng.randint(-5, 5) for _ in range(g)]
        Fk = lambda k: F[k - 1] if 1 <= k <= g - 2 else 0
        Gk = lambda k: G[k - 1] if 1 <= k <= g else 0
        want = [[Gk(i + j - 1) + (j - 1) * Fk(i + j - 2) for j in range(1, n + 2)] for i in range(1, g - n + 1)]
        assert rows_of(build_A(bundle(g, F, n, G)).matrix) == want


def test_row_delta_agreement(rng, field):
    for _ in range(150):
        g = rng.randint(3, 10)
        n = rng.randint(0, g - 1)
        L = random_bundle(rng, field, g, n)
        cols = [delta_L(L, LaurentPoly.monomial(j, field)) for j in range(n + 1)]
        neg = [[field.neg(cols[j].coeff(-m)) for j in range(n + 1)] for m in range(1, g - n + 1)]
        assert neg == rows_of(build_A(L).matrix)


# --- build_Abar --------------------------------------------------------------

def test_abar_affine_slice(rng):
    for _ in range(30):
        L = random_bundle(rng, QQ, rng.randint(3, 9), 0)
        L = BundleDatum(L.parent, rng.randint(0, L.g - 1), L.G)
        P = ProjBundlePoint.from_bundle(L)
        assert build_Abar(P).matrix == build_A(L).matrix


def test_abar_boundary_is_catalecticant():
    R = RibbonDatum.from_coefficients(6, [1, 2, 3, 4])
    G = [1, -1, 2, 0, 5, 3]
    P = ProjBundlePoint(R, 2, (0, *G))
    assert build_Abar(P).matrix == catalecticant(6, 2, G)


def test_abar_only_g0():
    R = RibbonDatum.from_coefficients(5, [1, 0, 0])
    P = ProjBundlePoint(R, 2, (1, 0, 0, 0, 0, 0))
    assert rows_of(build_Abar(P).matrix) == [[0, 1, 0], [0, 0, 0], [0, 0, 0]]


def test_abar_zero_point_rejected():
    R = RibbonDatum.from_coefficients(5, [1, 0, 0])
    with pytest.raises(ValueError):
        build_Abar(ProjBundlePoint(R, 2, (0,) * 6))


def test_abar_rank_rescaling(rng):
    R = RibbonDatum.from_coefficients(7, [1, -2, 0, 3, 1])
    for _ in range(50):
        coords = [rng.randint(-3, 3) for _ in range(8)]
        if not any(coords):
            coords[0] = 1
        c = rng.choice([-5, -2, -1, 2, 3, 7])
        a = build_Abar(ProjBundlePoint(R, 3, tuple(coords))).rank()
        b = build_Abar(ProjBundlePoint(R, 3, tuple(c * x for x in coords))).rank()
        assert a == b


def test_hankel_symmetry(rng):
    for _ in range(30):
        g = rng.randint(3, 10)
        n = rng.randint(0, g - 1)
        M = rows_of(build_A(bundle(g, [0] * (g - 2), n, [rng.randint(-9, 9) for _ in range(g)])).matrix)
        for i, j in itertools.product(range(g - n), range(n + 1)):
            assert M[i][j] == M[i + j][0] if i + j < g - n else M[i][j] == M[g - n - 1][i + j - (g - n - 1)]


# --- membership --------------------------------------------------------------

def test_in_W_examples():
    for g, n in [(5, 2), (7, 3), (6, 1)]:
        for r in range(n + 1):
            assert in_W(bundle(g, [0] * (g - 2), n, [0] * g), r)
    for c in range(-3, 4):
        assert in_W(bundle(5, [1, 0, 0], 2, [c, 0, 0, 0, 0]), 1)
    assert not in_W(bundle(5, [1, 0, 0], 2, [1, 0, 0, 0, 0]), 2)


def test_in_W_range_guard():
    with pytest.raises(ValueError):
        in_W(bundle(5, [1, 0, 0], 3, [0] * 5), 1)
    with pytest.raises(ValueError):
        in_W(bundle(5, [1, 0, 0], 2, [0] * 5), 3)


def test_in_W_monotone():
    F3 = GF(3)
    R = RibbonDatum.from_coefficients(7, [1, 0, 2, 0, 0], F3)
    for Gc in itertools.product(range(3), repeat=7):
        L = BundleDatum.from_coefficients(R, 3, Gc)
        flags = [in_W(L, r) for r in range(4)]
        assert flags == sorted(flags, reverse=True)


def test_in_BW_matches_in_W_on_chart(rng):
    for _ in range(30):
        L = random_bundle(rng, QQ, 7, 3, height=1)
        P = ProjBundlePoint.from_bundle(L)
        for r in range(4):
            assert in_BW(P, r) == in_W(L, r)


# --- Clifford ----------------------------------------------------------------

def test_clifford_examples():
    rec = clifford_check(bundle(5, [0, 0, 0], 2, [0] * 5))
    assert rec.equality and rec.pullback_witness and rec.h0 == rec.bound == 3
    rec = clifford_check(bundle(5, [1, 0, 0], 2, [0] * 5))
    assert rec.h0 <= 2 and not rec.equality and not rec.pullback_witness


def test_clifford_exhaustive_f3_oracle():
    F3 = GF(3)
    hits = []
    for Fc in itertools.product(range(3), repeat=3):
        R = RibbonDatum.from_coefficients(5, Fc, F3)
        for Gc in itertools.product(range(3), repeat=5):
            rec = clifford_check(BundleDatum.from_coefficients(R, 2, Gc))
            assert rec.consistent()
            if rec.equality:
                hits.append((Fc, Gc))
    assert hits == [((0, 0, 0), (0, 0, 0, 0, 0))]


def test_clifford_range_guard():
    with pytest.raises(ValueError):
        clifford_check(bundle(5, [1, 0, 0], 4, [0] * 5))
    with pytest.raises(ValueError):
        clifford_check(bundle(5, [1, 0, 0], 0, [0] * 5))


# --- linear spaces -----------------------------------------------------------

def test_spaces_evaluate_like_builders(rng):
    for _ in range(20):
        g = rng.randint(3, 9)
        n = rng.randint(0, (g - 1) // 2)
        L = random_bundle(rng, QQ, g, n)
        pt = list(L.coefficients) + list(L.parent.coefficients)
        assert bn_space(g, n).evaluate(pt) == build_A(L).matrix
        P = ProjBundlePoint(L.parent, n, (QQ(2), *[2 * x for x in L.coefficients]))
        assert projective_space(L.parent, n).evaluate(list(P.coords)) == build_Abar(P).matrix
        assert catalecticant_space(g, n).evaluate(list(L.coefficients)) == catalecticant(g, n, L.coefficients)


def test_bn_entries_g0_factor():
    ent = bn_entries(5, 2, [1, 0, 0], [0] * 5, QQ, G0=0)
    assert all(x == 0 for row in ent for x in row)

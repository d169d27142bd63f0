import random

import numpy as np
import pytest

from ribbonseries import kernels
from ribbonseries.determinantal import bn_space
from ribbonseries.exact import GF, ExactMatrix
from ribbonseries.loci import _kernel_arrays

py = kernels.python_backend


def test_backend_reported():
    assert kernels.BACKEND in ("cython", "python")


def test_rank_mod_p_matches_exact(rng):
    for _ in range(200):
        r, c = rng.randint(1, 6), rng.randint(1, 6)
        p = rng.choice([2, 3, 5, 7, 101, 2147483629])
        rows = [[rng.randint(-p, p) for _ in range(c)] for _ in range(r)]
        flat = np.array([x for row in rows for x in row], dtype=np.int64)
        want = ExactMatrix.from_rows(rows, GF(p)).rank()
        assert kernels.rank_mod_p(flat, r, c, p) == want
        assert py.rank_mod_p(flat, r, c, p) == want


@pytest.mark.parametrize("g,n,p", [(5, 2, 2), (5, 2, 3), (6, 2, 2), (7, 3, 2)])
def test_count_backends_agree(g, n, p):
    space = bn_space(g, n)
    T, c = _kernel_arrays(space, p)
    total = p ** space.nvars
    for bound in range(0, min(space.rows, space.cols) + 1):
        fast = kernels.count_rank_le(T, c, space.rows, space.cols, p, bound, 0, total)
        slow = py.count_rank_le(T, c, space.rows, space.cols, p, bound, 0, total)
        assert fast == slow


def test_count_chunks_partition(rng):
    space = bn_space(5, 2)
    T, c = _kernel_arrays(space, 3)
    total = 3 ** 8
    whole = kernels.count_rank_le(T, c, 3, 3, 3, 1, 0, total)
    cuts = sorted({0, total, *(rng.randrange(total) for _ in range(7))})
    parts = sum(kernels.count_rank_le(T, c, 3, 3, 3, 1, a, b) for a, b in zip(cuts, cuts[1:]))
    assert parts == whole == 105
    assert kernels.count_rank_le(T, c, 3, 3, 3, 1, 10, 10) == 0


def test_odometer_matches_point_list():
    space = bn_space(5, 2)
    p = 3
    T, c = _kernel_arrays(space, p)
    start, stop = 1234, 2345
    pts = []
    for idx in range(start, stop):
        digits, rem = [], idx
        for _ in range(space.nvars):
            digits.append(rem % p)
            rem //= p
        pts.append(digits)
    pts = np.array(pts, dtype=np.int64)
    want = kernels.count_rank_le(T, c, 3, 3, p, 1, start, stop)
    assert kernels.count_rank_le_points(T, c, 3, 3, p, 1, pts) == want
    assert py.count_rank_le_points(T, c, 3, 3, p, 1, pts) == want


def test_points_negative_coordinates():
    space = bn_space(5, 2)
    T, c = _kernel_arrays(space, 5)
    pts = np.array([[-1, 0, 0, 0, 0, 4, 0, 0], [4, 0, 0, 0, 0, -1, 0, 0]], dtype=np.int64)
    assert kernels.count_rank_le_points(T, c, 3, 3, 5, 1, pts) == py.count_rank_le_points(T, c, 3, 3, 5, 1, pts)

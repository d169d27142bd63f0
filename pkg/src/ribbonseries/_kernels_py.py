"""Pure-Python versions of the compiled kernels in ``_kernels.pyx``.

Same signatures and results; used when the extension is not built or when
``RIBBONSERIES_PURE_PYTHON`` is set.
"""

from __future__ import annotations


def _tolist(x):
    return x.tolist() if hasattr(x, "tolist") else [list(r) if isinstance(r, (list, tuple)) else r for r in x]


def _rank_inplace(a: list[int], rows: int, cols: int, p: int, stop_above: int) -> int:
    r = 0
    for c in range(cols):
        if r == rows:
            break
        piv = -1
        for i in range(r, rows):
            if a[i * cols + c]:
                piv = i
                break
        if piv < 0:
            continue
        if piv != r:
            for j in range(c, cols):
                a[r * cols + j], a[piv * cols + j] = a[piv * cols + j], a[r * cols + j]
        inv = pow(a[r * cols + c], -1, p)
        base = r * cols
        for i in range(r + 1, rows):
            m = a[i * cols + c]
            if not m:
                continue
            m = m * inv % p
            off = i * cols
            for j in range(c, cols):
                a[off + j] = (a[off + j] - m * a[base + j]) % p
        r += 1
        if r > stop_above:
            return r
    return r


def rank_mod_p(mat, rows: int, cols: int, p: int) -> int:
    work = [x % p for x in _tolist(mat)]
    return _rank_inplace(work, rows, cols, p, rows + cols)


def count_rank_le(coeffs, const_term, rows: int, cols: int, p: int, bound: int, start: int, stop: int) -> int:
    cf = [[x % p for x in row] for row in _tolist(coeffs)]
    nvars = len(cf)
    size = rows * cols
    if stop <= start:
        return 0
    digits = []
    rem = start
    for _ in range(nvars):
        digits.append(rem % p)
        rem //= p
    cur = [x % p for x in _tolist(const_term)]
    for v in range(nvars):
        if digits[v]:
            d = digits[v]
            cur = [(x + d * c) % p for x, c in zip(cur, cf[v])]
    count = 0
    for _ in range(start, stop):
        if _rank_inplace(cur[:], rows, cols, p, bound) <= bound:
            count += 1
        v = 0
        while v < nvars:
            digits[v] += 1
            cur = [(x + c) % p for x, c in zip(cur, cf[v])]
            if digits[v] < p:
                break
            digits[v] = 0
            v += 1
    assert len(cur) == size
    return count


def count_rank_le_points(coeffs, const_term, rows: int, cols: int, p: int, bound: int, points) -> int:
    cf = [[x % p for x in row] for row in _tolist(coeffs)]
    base = [x % p for x in _tolist(const_term)]
    count = 0
    for pt in _tolist(points):
        cur = base[:]
        for d, row in zip(pt, cf):
            d %= p
            if d:
                cur = [(x + d * c) % p for x, c in zip(cur, row)]
        if _rank_inplace(cur, rows, cols, p, bound) <= bound:
            count += 1
    return count

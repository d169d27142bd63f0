"""The matrices A_F(G), their projective closure, and the Clifford bound.

Entry ``(i, j)`` (1-based) of ``A_F(G)`` is ``G_{i+j-1} + (j-1) F_{i+j-2}``
with ``F_k = 0`` outside ``1..g-2`` and ``G_k = 0`` outside ``1..g``.  Row
``m`` is the ``t^-m`` coefficient of ``p'F + pG`` as a linear form in the
coefficients of ``p``, so ``h0(L) = n + 1 - rank A_F(G)`` for ``0 <= n <= g-1``.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Sequence

from .exact import QQ, ExactMatrix, Field, Scalar, rank_and_kernel
from .ribbon import BundleDatum, ProjBundlePoint, RibbonDatum, is_hyperelliptic
from .sections import h0 as sections_h0


def _check_shape(g: int, n: int) -> None:
    if not 0 <= n <= g - 1:
        raise ValueError(f"need 0 <= n <= g-1, got g={g}, n={n}")


def _check_bn_range(g: int, n: int, r: int) -> None:
    if not 0 <= r <= n:
        raise ValueError(f"need 0 <= r <= n, got r={r}, n={n}")
    if 2 * n > g - 1:
        raise ValueError(f"the determinantal description needs 2n <= g-1, got g={g}, n={n}")


@dataclass(frozen=True)
class BNMatrix:
    matrix: ExactMatrix
    g: int
    n: int
    F: tuple[Scalar, ...]
    G: tuple[Scalar, ...]

    def rank(self) -> int:
        return self.matrix.rank()

    def to_json(self) -> dict:
        return self.matrix.to_json()


@dataclass(frozen=True)
class ProjBNMatrix:
    matrix: ExactMatrix
    parent: ProjBundlePoint

    def rank(self) -> int:
        return self.matrix.rank()

    def to_json(self) -> dict:
        return self.matrix.to_json()


def bn_entries(g: int, n: int, F: Sequence, G: Sequence, field: Field, G0=1) -> list[list[Scalar]]:
    """Rows of ``A`` (``G0 = 1``) or ``Abar``; ``F[k-1] = F_k``, ``G[k-1] = G_k``."""
    fd = field

    def Fk(k):
        return F[k - 1] if 1 <= k <= g - 2 else fd.zero

    def Gk(k):
        return G[k - 1] if 1 <= k <= g else fd.zero

    G0 = fd(G0)
    rows = []
    for i in range(1, g - n + 1):
        row = []
        for j in range(1, n + 2):
            twist = fd.mul(fd.mul(fd(j - 1), Fk(i + j - 2)), G0)
            row.append(fd.add(Gk(i + j - 1), twist))
        rows.append(row)
    return rows


def build_A(L: BundleDatum) -> BNMatrix:
    _check_shape(L.g, L.n)
    F, G = L.parent.coefficients, L.coefficients
    M = ExactMatrix.from_rows(bn_entries(L.g, L.n, F, G, L.field), L.field, cols=L.n + 1)
    return BNMatrix(M, L.g, L.n, F, G)


def build_Abar(P: ProjBundlePoint) -> ProjBNMatrix:
    g = P.parent.g
    _check_shape(g, P.n)
    f = P.parent.field
    rows = bn_entries(g, P.n, P.parent.coefficients, P.coords[1:], f, G0=P.coords[0])
    return ProjBNMatrix(ExactMatrix.from_rows(rows, f, cols=P.n + 1), P)


def catalecticant(g: int, n: int, G: Sequence, field: Field = QQ) -> ExactMatrix:
    """Hankel matrix with entries ``G_{i+j-1}``."""
    _check_shape(g, n)
    G = [field(x) for x in G]
    return ExactMatrix.from_rows(bn_entries(g, n, [field.zero] * (g - 2), G, field), field, cols=n + 1)


def in_W(L: BundleDatum, r: int) -> bool:
    _check_bn_range(L.g, L.n, r)
    return build_A(L).rank() <= L.n - r


def in_BW(P: ProjBundlePoint, r: int) -> bool:
    _check_bn_range(P.parent.g, P.n, r)
    return build_Abar(P).rank() <= P.n - r


@dataclass(frozen=True)
class CliffordRecord:
    h0: int
    bound: int
    equality: bool
    pullback_witness: bool

    def consistent(self) -> bool:
        """Bound holds and equality happens exactly at the pullback bundle."""
        return self.h0 <= self.bound and self.equality == self.pullback_witness

    def to_json(self) -> dict:
        return {
            "h0": self.h0,
            "bound": self.bound,
            "equality": self.equality,
            "pullback_witness": self.pullback_witness,
        }


def clifford_check(L: BundleDatum) -> CliffordRecord:
    if not 1 <= L.n <= L.g - 2:
        raise ValueError(f"Clifford bound needs 1 <= n <= g-2, got n={L.n}, g={L.g}")
    h = sections_h0(L)
    bound = L.n + 1
    witness = is_hyperelliptic(L.parent) and L.G.is_zero()
    return CliffordRecord(h, bound, h == bound, witness)


# ---------------------------------------------------------------------------
# Linear spaces of matrices


@dataclass(frozen=True)
class LinearMatrixSpace:
    """Matrices ``const + sum_v x_v * coeffs[v]`` in variables ``x_v``.

    Matrices are stored as row-major tuples of length ``rows * cols``.
    """

    rows: int
    cols: int
    var_names: tuple[str, ...]
    const: tuple[Scalar, ...]
    coeffs: tuple[tuple[Scalar, ...], ...]
    field: Field
    label: str = ""

    @property
    def nvars(self) -> int:
        return len(self.var_names)

    def is_linear(self) -> bool:
        return all(self.field.is_zero(c) for c in self.const)

    def evaluate(self, point: Sequence) -> ExactMatrix:
        f = self.field
        if len(point) != self.nvars:
            raise ValueError(f"expected {self.nvars} coordinates, got {len(point)}")
        vals = list(self.const)
        for x, C in zip(point, self.coeffs):
            x = f(x)
            if f.is_zero(x):
                continue
            vals = [f.add(v, f.mul(x, c)) for v, c in zip(vals, C)]
        return ExactMatrix(self.rows, self.cols, tuple(vals), f)

    def coefficient_matrix(self, v: int) -> ExactMatrix:
        return ExactMatrix(self.rows, self.cols, self.coeffs[v], self.field)

    def over(self, field: Field) -> LinearMatrixSpace:
        """Reduce or coerce every coefficient into ``field``."""
        return LinearMatrixSpace(
            self.rows, self.cols, self.var_names,
            tuple(field(c) for c in self.const),
            tuple(tuple(field(c) for c in C) for C in self.coeffs),
            field, self.label,
        )

    def generalized_entry(self, a: Sequence, b: Sequence) -> tuple[Scalar, ...]:
        """Coefficients of the linear form ``a^T M(x) b`` (linear part only)."""
        f = self.field
        out = []
        for C in self.coeffs:
            acc = f.zero
            for i in range(self.rows):
                ai = f(a[i])
                if f.is_zero(ai):
                    continue
                for j in range(self.cols):
                    c = C[i * self.cols + j]
                    if not f.is_zero(c):
                        acc = f.add(acc, f.mul(ai, f.mul(c, f(b[j]))))
            out.append(acc)
        return tuple(out)


def _space_from_entries(g: int, n: int, entry, var_names, field: Field, label: str) -> LinearMatrixSpace:
    """``entry(i, j)`` returns (constant, {var index: coefficient}) for 1-based (i, j)."""
    rows, cols = g - n, n + 1
    const = []
    coeffs = [[field.zero] * (rows * cols) for _ in var_names]
    for i in range(1, rows + 1):
        for j in range(1, cols + 1):
            c0, lin = entry(i, j)
            const.append(field(c0))
            for v, c in lin.items():
                coeffs[v][(i - 1) * cols + (j - 1)] = field.add(coeffs[v][(i - 1) * cols + (j - 1)], field(c))
    return LinearMatrixSpace(rows, cols, tuple(var_names), tuple(const), tuple(tuple(C) for C in coeffs), field, label)


def catalecticant_space(g: int, n: int, field: Field = QQ) -> LinearMatrixSpace:
    _check_shape(g, n)
    names = [f"G{k}" for k in range(1, g + 1)]
    return _space_from_entries(g, n, lambda i, j: (0, {i + j - 2: 1}), names, field, f"Catalecticant({g},{n})")


def affine_space(R: RibbonDatum, n: int) -> LinearMatrixSpace:
    """``A_F(G)`` with F fixed, variables ``G_1..G_g``."""
    g = R.g
    _check_shape(g, n)
    f = R.field
    names = [f"G{k}" for k in range(1, g + 1)]

    def entry(i, j):
        return f.mul(f(j - 1), R.coeff(i + j - 2)), {i + j - 2: 1}

    return _space_from_entries(g, n, entry, names, f, f"A_F({g},{n})")


def projective_space(R: RibbonDatum, n: int) -> LinearMatrixSpace:
    """``Abar_F(G)`` with F fixed, variables ``G_0..G_g``."""
    g = R.g
    _check_shape(g, n)
    f = R.field
    names = [f"G{k}" for k in range(0, g + 1)]

    def entry(i, j):
        lin = {i + j - 1: 1}
        tw = f.mul(f(j - 1), R.coeff(i + j - 2))
        if not f.is_zero(tw):
            lin[0] = tw
        return 0, lin

    return _space_from_entries(g, n, entry, names, f, f"Abar_F({g},{n})")


def bn_space(g: int, n: int, field: Field = QQ) -> LinearMatrixSpace:
    """``A_F(G)`` with both G and F varying: variables ``G_1..G_g, F_1..F_{g-2}``."""
    _check_shape(g, n)
    names = [f"G{k}" for k in range(1, g + 1)] + [f"F{k}" for k in range(1, g - 1)]

    def entry(i, j):
        lin = {i + j - 2: 1}
        k = i + j - 2
        if 1 <= k <= g - 2 and j > 1:
            lin[g + k - 1] = j - 1
        return 0, lin

    return _space_from_entries(g, n, entry, names, field, f"BNSpace({g},{n})")


def rank_at(space: LinearMatrixSpace, point: Sequence) -> int:
    return rank_and_kernel(space.evaluate(point))[0]

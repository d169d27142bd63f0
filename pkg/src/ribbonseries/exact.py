"""Exact scalars, Laurent polynomials and dense exact linear algebra.

Two coefficient fields are supported: the rationals (values are
:class:`fractions.Fraction`) and prime fields ``F_p`` (values are ints in
``[0, p)``).  Field objects carry the arithmetic; scalars are plain Python
values so that the hot paths stay cheap.
"""

from __future__ import annotations

import math
import random
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from typing import Any, Iterable, Iterator, Mapping, Sequence

Scalar = Any  # Fraction for QQ, int in [0, p) for GF(p)


def is_prime(p: int) -> bool:
    if p < 2:
        return False
    if p < 4:
        return True
    if p % 2 == 0:
        return False
    return all(p % d for d in range(3, math.isqrt(p) + 1, 2))


class Field:
    """Base class of the two exact fields.  Subclasses are immutable."""

    characteristic: int = 0

    zero: Scalar
    one: Scalar

    def __call__(self, x) -> Scalar:
        raise NotImplementedError

    def add(self, a, b):
        raise NotImplementedError

    def sub(self, a, b):
        raise NotImplementedError

    def mul(self, a, b):
        raise NotImplementedError

    def neg(self, a):
        raise NotImplementedError

    def inv(self, a):
        raise NotImplementedError

    def div(self, a, b):
        return self.mul(a, self.inv(b))

    def is_zero(self, a) -> bool:
        return a == 0

    def parse(self, text: str) -> Scalar:
        raise NotImplementedError

    def format(self, a) -> str:
        return str(a)

    def random_element(self, rng: random.Random) -> Scalar:
        raise NotImplementedError

    @property
    def label(self) -> str:
        raise NotImplementedError


class RationalField(Field):
    characteristic = 0
    zero = Fraction(0)
    one = Fraction(1)

    def __call__(self, x) -> Fraction:
        if isinstance(x, str):
            return self.parse(x)
        return Fraction(x)

    def add(self, a, b):
        return a + b

    def sub(self, a, b):
        return a - b

    def mul(self, a, b):
        return a * b

    def neg(self, a):
        return -a

    def inv(self, a):
        if a == 0:
            raise ZeroDivisionError("inverse of zero")
        return 1 / Fraction(a)

    def parse(self, text: str) -> Fraction:
        return Fraction(text.strip())

    def format(self, a) -> str:
        a = Fraction(a)
        return str(a.numerator) if a.denominator == 1 else f"{a.numerator}/{a.denominator}"

    def random_element(self, rng: random.Random, height: int = 5) -> Fraction:
        return Fraction(rng.randint(-height, height))

    @property
    def label(self) -> str:
        return "q"

    def __repr__(self) -> str:
        return "QQ"

    def __eq__(self, other) -> bool:
        return isinstance(other, RationalField)

    def __hash__(self) -> int:
        return hash("QQ")

    def __reduce__(self):
        return (RationalField, ())


class PrimeField(Field):
    """The field with ``p`` elements; canonical residues in ``[0, p)``."""

    def __init__(self, p: int):
        if not is_prime(p):
            raise ValueError(f"{p} is not prime")
        self.p = p
        self.characteristic = p
        self.zero = 0
        self.one = 1 % p

    def __call__(self, x) -> int:
        if isinstance(x, str):
            return self.parse(x)
        if isinstance(x, Fraction):
            return self.div(x.numerator % self.p, x.denominator % self.p)
        return int(x) % self.p

    def add(self, a, b):
        return (a + b) % self.p

    def sub(self, a, b):
        return (a - b) % self.p

    def mul(self, a, b):
        return (a * b) % self.p

    def neg(self, a):
        return (-a) % self.p

    def inv(self, a):
        if a % self.p == 0:
            raise ZeroDivisionError("inverse of zero")
        return pow(a, -1, self.p)

    def parse(self, text: str) -> int:
        return self(Fraction(text.strip()))

    def random_element(self, rng: random.Random) -> int:
        return rng.randrange(self.p)

    @property
    def label(self) -> str:
        return f"fp:{self.p}"

    def __repr__(self) -> str:
        return f"GF({self.p})"

    def __eq__(self, other) -> bool:
        return isinstance(other, PrimeField) and other.p == self.p

    def __hash__(self) -> int:
        return hash(("GF", self.p))

    def __reduce__(self):
        return (GF, (self.p,))


QQ = RationalField()


@lru_cache(maxsize=None)
def GF(p: int) -> PrimeField:
    return PrimeField(p)


def parse_field(text: str) -> Field:
    """Parse ``q`` or ``fp:<p>``."""
    text = text.strip().lower()
    if text in ("q", "qq"):
        return QQ
    if text.startswith("fp:"):
        return GF(int(text[3:]))
    raise ValueError(f"unknown field {text!r}; expected 'q' or 'fp:<p>'")


# ---------------------------------------------------------------------------
# Laurent polynomials


@dataclass(frozen=True)
class LaurentPoly:
    """Finite Laurent series in ``t`` with exact coefficients.

    ``terms`` is sorted by exponent and never holds a zero coefficient, so the
    empty tuple is the unique zero and structural equality is value equality.
    """

    terms: tuple[tuple[int, Scalar], ...]
    field: Field

    @classmethod
    def from_dict(cls, coeffs: Mapping[int, Scalar], field: Field) -> LaurentPoly:
        items = []
        for k in sorted(coeffs):
            c = field(coeffs[k])
            if not field.is_zero(c):
                items.append((int(k), c))
        return cls(tuple(items), field)

    @classmethod
    def zero(cls, field: Field) -> LaurentPoly:
        return cls((), field)

    @classmethod
    def monomial(cls, k: int, field: Field, c=1) -> LaurentPoly:
        return cls.from_dict({k: c}, field)

    @classmethod
    def from_coefficients(cls, coeffs: Sequence, field: Field, start: int = 0, step: int = 1) -> LaurentPoly:
        """``coeffs[i]`` becomes the coefficient of ``t**(start + step*i)``."""
        return cls.from_dict({start + step * i: c for i, c in enumerate(coeffs)}, field)

    def as_dict(self) -> dict[int, Scalar]:
        return dict(self.terms)

    def coeff(self, k: int) -> Scalar:
        for e, c in self.terms:
            if e == k:
                return c
        return self.field.zero

    @property
    def support(self) -> tuple[int, ...]:
        return tuple(e for e, _ in self.terms)

    def is_zero(self) -> bool:
        return not self.terms

    def __bool__(self) -> bool:
        return bool(self.terms)

    def _check(self, other: LaurentPoly) -> None:
        if other.field != self.field:
            raise ValueError(f"field mismatch: {self.field!r} vs {other.field!r}")

    def __add__(self, other: LaurentPoly) -> LaurentPoly:
        self._check(other)
        f = self.field
        acc = dict(self.terms)
        for e, c in other.terms:
            acc[e] = f.add(acc[e], c) if e in acc else c
        return LaurentPoly(tuple((e, acc[e]) for e in sorted(acc) if not f.is_zero(acc[e])), f)

    def __neg__(self) -> LaurentPoly:
        f = self.field
        return LaurentPoly(tuple((e, f.neg(c)) for e, c in self.terms), f)

    def __sub__(self, other: LaurentPoly) -> LaurentPoly:
        return self + (-other)

    def __mul__(self, other: LaurentPoly) -> LaurentPoly:
        self._check(other)
        f = self.field
        acc: dict[int, Scalar] = {}
        for e1, c1 in self.terms:
            for e2, c2 in other.terms:
                e = e1 + e2
                prod = f.mul(c1, c2)
                acc[e] = f.add(acc[e], prod) if e in acc else prod
        return LaurentPoly(tuple((e, acc[e]) for e in sorted(acc) if not f.is_zero(acc[e])), f)

    def scale(self, c) -> LaurentPoly:
        f = self.field
        c = f(c)
        if f.is_zero(c):
            return LaurentPoly((), f)
        return LaurentPoly(tuple((e, f.mul(c, a)) for e, a in self.terms), f)

    def shift(self, k: int) -> LaurentPoly:
        """Multiply by ``t**k``."""
        return LaurentPoly(tuple((e + k, c) for e, c in self.terms), self.field)

    def invert_variable(self) -> LaurentPoly:
        """Substitute ``t -> t**-1``."""
        return LaurentPoly(tuple((-e, c) for e, c in reversed(self.terms)), self.field)

    def derivative(self) -> LaurentPoly:
        return laurent_derivative(self)

    def window(self, lo: int, hi: int) -> LaurentPoly:
        return window_project(self, lo, hi)

    def degree(self) -> int | None:
        return self.terms[-1][0] if self.terms else None

    def low_degree(self) -> int | None:
        return self.terms[0][0] if self.terms else None

    def __iter__(self) -> Iterator[tuple[int, Scalar]]:
        return iter(self.terms)

    def __str__(self) -> str:
        if not self.terms:
            return "0"
        fmt = self.field.format
        parts = []
        for e, c in reversed(self.terms):
            if e == 0:
                parts.append(fmt(c))
            else:
                mono = "t" if e == 1 else f"t^{e}"
                parts.append(mono if c == 1 else f"{fmt(c)}*{mono}")
        return " + ".join(parts)


def laurent_derivative(p: LaurentPoly) -> LaurentPoly:
    f = p.field
    out = []
    for e, c in p.terms:
        d = f.mul(f(e), c)
        if not f.is_zero(d):
            out.append((e - 1, d))
    return LaurentPoly(tuple(out), f)


def window_project(p: LaurentPoly, lo: int, hi: int) -> LaurentPoly:
    """Keep the terms with exponent in ``[lo, hi]``.

    This is the canonical representative of ``p`` modulo the span of
    ``t**k`` for ``k > hi`` and ``k < lo``.  Use ``math.inf``-like bounds via
    large integers for a one-sided window.
    """
    if lo > hi:
        raise ValueError(f"empty window [{lo}, {hi}]")
    return LaurentPoly(tuple((e, c) for e, c in p.terms if lo <= e <= hi), p.field)


# ---------------------------------------------------------------------------
# Matrices


@dataclass(frozen=True)
class ExactMatrix:
    rows: int
    cols: int
    entries: tuple[Scalar, ...]
    field: Field

    def __post_init__(self):
        if len(self.entries) != self.rows * self.cols:
            raise ValueError("entries do not match the declared shape")

    @classmethod
    def from_rows(cls, rows: Sequence[Sequence], field: Field, cols: int | None = None) -> ExactMatrix:
        rows = [list(r) for r in rows]
        ncols = cols if cols is not None else (len(rows[0]) if rows else 0)
        if any(len(r) != ncols for r in rows):
            raise ValueError("ragged rows")
        return cls(len(rows), ncols, tuple(field(x) for r in rows for x in r), field)

    @classmethod
    def zeros(cls, rows: int, cols: int, field: Field) -> ExactMatrix:
        return cls(rows, cols, (field.zero,) * (rows * cols), field)

    def __getitem__(self, ij: tuple[int, int]) -> Scalar:
        i, j = ij
        return self.entries[i * self.cols + j]

    def row(self, i: int) -> tuple[Scalar, ...]:
        return self.entries[i * self.cols:(i + 1) * self.cols]

    def to_rows(self) -> list[list[Scalar]]:
        return [list(self.row(i)) for i in range(self.rows)]

    def transpose(self) -> ExactMatrix:
        return ExactMatrix(
            self.cols, self.rows,
            tuple(self[i, j] for j in range(self.cols) for i in range(self.rows)),
            self.field,
        )

    def apply(self, v: Sequence) -> tuple[Scalar, ...]:
        f = self.field
        out = []
        for i in range(self.rows):
            acc = f.zero
            for a, x in zip(self.row(i), v):
                acc = f.add(acc, f.mul(a, x))
            out.append(acc)
        return tuple(out)

    def scale(self, c) -> ExactMatrix:
        f = self.field
        c = f(c)
        return ExactMatrix(self.rows, self.cols, tuple(f.mul(c, x) for x in self.entries), f)

    def submatrix(self, rows: Sequence[int], cols: Sequence[int]) -> ExactMatrix:
        return ExactMatrix(len(rows), len(cols), tuple(self[i, j] for i in rows for j in cols), self.field)

    def rank(self) -> int:
        return rank_and_kernel(self)[0]

    def kernel(self) -> list[tuple[Scalar, ...]]:
        return rank_and_kernel(self)[1]

    def is_zero(self) -> bool:
        return all(self.field.is_zero(x) for x in self.entries)

    def to_json(self) -> dict:
        fmt = self.field.format
        return {
            "rows": self.rows,
            "cols": self.cols,
            "entries": [[fmt(x) for x in self.row(i)] for i in range(self.rows)],
        }

    @classmethod
    def from_json(cls, data: Mapping, field: Field) -> ExactMatrix:
        rows = [[field.parse(str(x)) for x in r] for r in data["entries"]]
        return cls.from_rows(rows, field, cols=int(data["cols"])) if rows else cls.zeros(0, int(data["cols"]), field)

    def __str__(self) -> str:
        fmt = self.field.format
        cells = [[fmt(x) for x in self.row(i)] for i in range(self.rows)]
        width = max((len(c) for r in cells for c in r), default=1)
        return "\n".join("[" + " ".join(c.rjust(width) for c in r) + "]" for r in cells)


def _echelon_integer(rows: list[list[int]], ncols: int) -> list[int]:
    """Fraction-free (Bareiss) row echelon form in place; returns pivot columns.

    Every division is exact: after ``k`` pivots each live entry is a
    ``(k+1)``-minor of the input.
    """
    nrows = len(rows)
    pivots: list[int] = []
    prev = 1
    r = 0
    for c in range(ncols):
        if r == nrows:
            break
        piv = next((i for i in range(r, nrows) if rows[i][c]), None)
        if piv is None:
            continue
        if piv != r:
            rows[r], rows[piv] = rows[piv], rows[r]
        top = rows[r]
        a = top[c]
        for i in range(r + 1, nrows):
            row = rows[i]
            b = row[c]
            for j in range(c + 1, ncols):
                row[j] = (a * row[j] - b * top[j]) // prev
            row[c] = 0
        prev = a
        pivots.append(c)
        r += 1
    return pivots


def _rank_kernel_rational(M: ExactMatrix) -> tuple[int, list[tuple[Fraction, ...]]]:
    rows = []
    for i in range(M.rows):
        row = [Fraction(x) for x in M.row(i)]
        den = math.lcm(*(x.denominator for x in row)) if row else 1
        rows.append([int(x * den) for x in row])
    pivots = _echelon_integer(rows, M.cols)
    rank = len(pivots)
    free = [c for c in range(M.cols) if c not in set(pivots)]
    kernel = []
    for fcol in free:
        x = [Fraction(0)] * M.cols
        x[fcol] = Fraction(1)
        for k in range(rank - 1, -1, -1):
            pc = pivots[k]
            row = rows[k]
            s = sum((row[j] * x[j] for j in range(pc + 1, M.cols) if row[j]), Fraction(0))
            x[pc] = -s / row[pc]
        kernel.append(tuple(x))
    return rank, kernel


def _rank_kernel_modp(M: ExactMatrix) -> tuple[int, list[tuple[int, ...]]]:
    p = M.field.p
    rows = [list(M.row(i)) for i in range(M.rows)]
    ncols = M.cols
    pivots: list[int] = []
    r = 0
    for c in range(ncols):
        if r == len(rows):
            break
        piv = next((i for i in range(r, len(rows)) if rows[i][c]), None)
        if piv is None:
            continue
        rows[r], rows[piv] = rows[piv], rows[r]
        inv = pow(rows[r][c], -1, p)
        top = [(x * inv) % p for x in rows[r]]
        rows[r] = top
        for i in range(len(rows)):
            if i != r and rows[i][c]:
                b = rows[i][c]
                rows[i] = [(x - b * y) % p for x, y in zip(rows[i], top)]
        pivots.append(c)
        r += 1
    pivset = set(pivots)
    kernel = []
    for fcol in range(ncols):
        if fcol in pivset:
            continue
        x = [0] * ncols
        x[fcol] = 1
        for k, pc in enumerate(pivots):
            x[pc] = (-rows[k][fcol]) % p
        kernel.append(tuple(x))
    return len(pivots), kernel


def rank_and_kernel(M: ExactMatrix) -> tuple[int, list[tuple[Scalar, ...]]]:
    """Exact rank and a basis of the right null space of ``M``."""
    if M.rows == 0 or M.cols == 0:
        f = M.field
        basis = [tuple(f.one if k == j else f.zero for k in range(M.cols)) for j in range(M.cols)]
        return 0, basis
    if isinstance(M.field, PrimeField):
        return _rank_kernel_modp(M)
    return _rank_kernel_rational(M)


def determinant(M: ExactMatrix) -> Scalar:
    if M.rows != M.cols:
        raise ValueError("determinant of a non-square matrix")
    f = M.field
    n = M.rows
    if n == 0:
        return f.one
    if isinstance(f, PrimeField):
        p = f.p
        a = [list(M.row(i)) for i in range(n)]
        det = 1
        for c in range(n):
            piv = next((i for i in range(c, n) if a[i][c]), None)
            if piv is None:
                return 0
            if piv != c:
                a[c], a[piv] = a[piv], a[c]
                det = -det
            det = det * a[c][c] % p
            inv = pow(a[c][c], -1, p)
            for i in range(c + 1, n):
                if a[i][c]:
                    m = a[i][c] * inv % p
                    a[i] = [(x - m * y) % p for x, y in zip(a[i], a[c])]
        return det % p
    den = 1
    ints = []
    for i in range(n):
        r = [Fraction(x) for x in M.row(i)]
        d = math.lcm(*(x.denominator for x in r))
        den *= d
        ints.append([int(x * d) for x in r])
    # Bareiss with sign tracking
    sign = 1
    prev = 1
    for c in range(n):
        piv = next((i for i in range(c, n) if ints[i][c]), None)
        if piv is None:
            return Fraction(0)
        if piv != c:
            ints[c], ints[piv] = ints[piv], ints[c]
            sign = -sign
        a = ints[c][c]
        for i in range(c + 1, n):
            b = ints[i][c]
            for j in range(c + 1, n):
                ints[i][j] = (a * ints[i][j] - b * ints[c][j]) // prev
            ints[i][c] = 0
        prev = a
    return Fraction(sign * ints[n - 1][n - 1], den)


def solve_linear(A: ExactMatrix, b: Sequence) -> tuple[tuple[Scalar, ...], list[tuple[Scalar, ...]]] | None:
    """Solve ``A x = b``; return (particular solution, kernel basis) or None."""
    f = A.field
    aug = ExactMatrix.from_rows([list(A.row(i)) + [b[i]] for i in range(A.rows)], f, cols=A.cols + 1)
    rank_aug, ker_aug = rank_and_kernel(aug)
    rank_a, ker_a = rank_and_kernel(A)
    if rank_aug != rank_a:
        return None
    # a kernel vector of [A | b] with last coordinate -1 gives A x = b
    for v in ker_aug:
        last = v[-1]
        if not f.is_zero(last):
            s = f.neg(f.inv(last))
            return tuple(f.mul(s, x) for x in v[:-1]), ker_a
    return None


def vectors_rank(vectors: Iterable[Sequence], field: Field, length: int) -> int:
    vs = [list(v) for v in vectors]
    if not vs:
        return 0
    return ExactMatrix.from_rows(vs, field, cols=length).rank()

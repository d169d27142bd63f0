"""Gluing data for ribbons on P^1 and their even-degree line bundles.

A genus ``g`` ribbon is glued by ``s^-1 = t + F(t) eta`` and is recorded by
the canonical window representative ``F = sum_{i=1}^{g-2} F_i t^-i``.  A
degree ``2n`` line bundle is glued by ``e1 = (t + F eta)^n (1 + G eta) e2``
with ``G = sum_{j=1}^{g} G_j t^-j``.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Mapping, Sequence

from .exact import QQ, Field, LaurentPoly, Scalar, window_project


def _as_poly(x, field: Field) -> LaurentPoly:
    if isinstance(x, LaurentPoly):
        return x
    if x is None or (isinstance(x, int) and x == 0):
        return LaurentPoly.zero(field)
    return LaurentPoly.from_coefficients(list(x), field)


def _require_polynomial(p: LaurentPoly, name: str) -> None:
    if p.terms and p.terms[0][0] < 0:
        raise ValueError(f"{name} must be a polynomial (no negative exponents)")


@dataclass(frozen=True)
class RibbonDatum:
    g: int
    F: LaurentPoly

    def __post_init__(self):
        if self.g < 3:
            raise ValueError(f"genus must be at least 3, got {self.g}")
        if any(not -(self.g - 2) <= e <= -1 for e in self.F.support):
            raise ValueError("F is not in canonical window form; use normalize_ribbon")

    @property
    def field(self) -> Field:
        return self.F.field

    def coeff(self, k: int) -> Scalar:
        """``F_k``; zero outside ``1..g-2``."""
        return self.F.coeff(-k)

    @property
    def coefficients(self) -> tuple[Scalar, ...]:
        return tuple(self.coeff(k) for k in range(1, self.g - 1))

    @classmethod
    def from_coefficients(cls, g: int, coeffs: Sequence, field: Field = QQ) -> RibbonDatum:
        coeffs = list(coeffs)
        if len(coeffs) != g - 2:
            raise ValueError(f"expected {g - 2} F coefficients, got {len(coeffs)}")
        return cls(g, LaurentPoly.from_coefficients(coeffs, field, start=-1, step=-1))

    @classmethod
    def hyperelliptic(cls, g: int, field: Field = QQ) -> RibbonDatum:
        return cls(g, LaurentPoly.zero(field))

    def to_json(self) -> dict:
        fmt = self.field.format
        return {"g": self.g, "F": [fmt(c) for c in self.coefficients]}


@dataclass(frozen=True)
class BundleDatum:
    parent: RibbonDatum
    n: int
    G: LaurentPoly

    def __post_init__(self):
        g = self.parent.g
        if self.G.field != self.parent.field:
            raise ValueError("G and F live over different fields")
        if any(not -g <= e <= -1 for e in self.G.support):
            raise ValueError("G is not in canonical window form")

    @property
    def g(self) -> int:
        return self.parent.g

    @property
    def field(self) -> Field:
        return self.parent.field

    @property
    def degree(self) -> int:
        return 2 * self.n

    def coeff(self, k: int) -> Scalar:
        """``G_k``; zero outside ``1..g``."""
        return self.G.coeff(-k)

    @property
    def coefficients(self) -> tuple[Scalar, ...]:
        return tuple(self.coeff(k) for k in range(1, self.g + 1))

    @classmethod
    def from_coefficients(cls, parent: RibbonDatum, n: int, coeffs: Sequence) -> BundleDatum:
        coeffs = list(coeffs)
        if len(coeffs) != parent.g:
            raise ValueError(f"expected {parent.g} G coefficients, got {len(coeffs)}")
        return cls(parent, n, LaurentPoly.from_coefficients(coeffs, parent.field, start=-1, step=-1))

    @classmethod
    def pullback(cls, parent: RibbonDatum, n: int) -> BundleDatum:
        """The pullback of O(n) from the reduced line (``G = 0``)."""
        return cls(parent, n, LaurentPoly.zero(parent.field))

    def to_json(self) -> dict:
        data = self.parent.to_json()
        data["n"] = self.n
        data["G"] = [self.field.format(c) for c in self.coefficients]
        return data


@dataclass(frozen=True)
class ProjBundlePoint:
    """A point ``[G_0 : G_1 : ... : G_g]`` of the compactified locus."""

    parent: RibbonDatum
    n: int
    coords: tuple[Scalar, ...]

    def __post_init__(self):
        f = self.parent.field
        if len(self.coords) != self.parent.g + 1:
            raise ValueError(f"expected {self.parent.g + 1} projective coordinates")
        object.__setattr__(self, "coords", tuple(f(c) for c in self.coords))
        if all(f.is_zero(c) for c in self.coords):
            raise ValueError("projective point with all coordinates zero")

    @classmethod
    def from_bundle(cls, L: BundleDatum) -> ProjBundlePoint:
        return cls(L.parent, L.n, (L.field.one,) + L.coefficients)

    def affine(self) -> BundleDatum:
        """The ``G_0 = 1`` chart; fails on the hyperplane ``G_0 = 0``."""
        f = self.parent.field
        g0 = self.coords[0]
        if f.is_zero(g0):
            raise ValueError("point lies on the hyperplane G_0 = 0")
        s = f.inv(g0)
        return BundleDatum.from_coefficients(self.parent, self.n, [f.mul(s, c) for c in self.coords[1:]])

    def rescale(self, c) -> ProjBundlePoint:
        f = self.parent.field
        return ProjBundlePoint(self.parent, self.n, tuple(f.mul(f(c), x) for x in self.coords))


def normalize_ribbon(g: int, F_raw: LaurentPoly) -> RibbonDatum:
    if g < 3:
        raise ValueError(f"genus must be at least 3, got {g}")
    return RibbonDatum(g, window_project(F_raw, -(g - 2), -1))


def is_hyperelliptic(R: RibbonDatum) -> bool:
    return R.F.is_zero()


def reparameterize(R: RibbonDatum, p, q) -> RibbonDatum:
    """Apply ``s' = s + p(s) eps`` and ``t = t' + q(t) eta``.

    The transformed datum is ``F + q(t) - t^(1-g) p(t^-1)``, whose extra terms
    fall outside the window, so the canonical F never changes.
    """
    field = R.field
    p = _as_poly(p, field)
    q = _as_poly(q, field)
    _require_polynomial(p, "p")
    _require_polynomial(q, "q")
    correction = p.invert_variable().shift(1 - R.g)
    return normalize_ribbon(R.g, R.F + q - correction)


def iso_over_P1(R1: RibbonDatum, R2: RibbonDatum) -> bool:
    """True iff ``F1 = a F2`` for a nonzero scalar ``a``."""
    if R1.g != R2.g:
        raise ValueError(f"genus mismatch: {R1.g} vs {R2.g}")
    if R1.field != R2.field:
        raise ValueError("ribbons over different fields")
    F1, F2 = R1.F, R2.F
    if F1.is_zero() or F2.is_zero():
        return F1.is_zero() and F2.is_zero()
    if F1.support != F2.support:
        return False
    f = R1.field
    e0 = F1.terms[0][0]
    a = f.div(F1.coeff(e0), F2.coeff(e0))
    return F1 == F2.scale(a)


def twist_bundle(L: BundleDatum, m, nn) -> BundleDatum:
    """Change of frames ``e1 = (1 + m(s) eps)^-1 e1'``, ``e2 = (1 + nn(t) eta) e2'``."""
    field = L.field
    m = _as_poly(m, field)
    nn = _as_poly(nn, field)
    _require_polynomial(m, "m")
    _require_polynomial(nn, "nn")
    g = L.g
    G_new = L.G - m.invert_variable().shift(-g - 1) + nn
    return BundleDatum(L.parent, L.n, window_project(G_new, -g, -1))


def tensor(L1: BundleDatum, L2: BundleDatum) -> BundleDatum:
    """Product of transition functions with ``eta^2 = 0``: degrees and G add."""
    if L1.parent != L2.parent:
        raise ValueError("bundles live on different ribbons")
    g = L1.g
    return BundleDatum(L1.parent, L1.n + L2.n, window_project(L1.G + L2.G, -g, -1))


def ribbon_from_json(data: Mapping, field: Field = QQ) -> RibbonDatum:
    g = int(data["g"])
    F = data.get("F", [])
    if F in (0, "0", None) or F == []:
        F = [0] * (g - 2)
    return RibbonDatum.from_coefficients(g, [field.parse(str(c)) for c in F], field)


def bundle_from_json(data: Mapping, field: Field = QQ) -> BundleDatum:
    R = ribbon_from_json(data, field)
    G = data.get("G", [])
    if G in (0, "0", None) or G == []:
        G = [0] * R.g
    return BundleDatum.from_coefficients(R, int(data["n"]), [field.parse(str(c)) for c in G])

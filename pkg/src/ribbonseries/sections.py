"""Global sections of even-degree line bundles on a ribbon.

On the chart ``Spec k[t, eta]`` a section is ``q(t) eta`` with
``deg q <= n - g - 1`` plus ``p(t) + p_1(t) eta`` where ``deg p <= n`` and
``p'F + pG`` has no terms with exponent in ``[-(g-n), -1]``.  ``p_1`` is then
the polynomial part of ``p'F + pG``.
"""

from __future__ import annotations

from dataclasses import dataclass

from .exact import ExactMatrix, LaurentPoly, rank_and_kernel, window_project
from .ribbon import BundleDatum

_POLY_PART_HI = 1 << 30


@dataclass(frozen=True)
class SectionBasis:
    q_part: tuple[LaurentPoly, ...]
    p_part: tuple[tuple[LaurentPoly, LaurentPoly], ...]

    def __len__(self) -> int:
        return len(self.q_part) + len(self.p_part)

    def to_json(self) -> dict:
        def coeffs(poly: LaurentPoly, top: int) -> list[str]:
            fmt = poly.field.format
            return [fmt(poly.coeff(k)) for k in range(top + 1)]

        def top(poly: LaurentPoly) -> int:
            d = poly.degree()
            return 0 if d is None else d

        return {
            "q_part": [poly.degree() for poly in self.q_part],
            "p_part": [
                {"p": coeffs(p, top(p)), "p1": coeffs(p1, top(p1))} for p, p1 in self.p_part
            ],
        }


def _transport(L: BundleDatum, p: LaurentPoly) -> LaurentPoly:
    """``p'F + pG``."""
    return p.derivative() * L.parent.F + p * L.G


def delta_L(L: BundleDatum, p: LaurentPoly) -> LaurentPoly:
    """Obstruction ``-(p'F + pG)`` in ``k[t,t^-1] / (k[t] + t^(n-g-1) k[t^-1])``.

    Returned as its representative supported on ``[-(g-n), -1]``; zero when
    that window is empty (``n >= g``).
    """
    if p.field != L.field:
        raise ValueError("p and the bundle live over different fields")
    if p.terms and (p.terms[0][0] < 0 or p.terms[-1][0] > L.n):
        raise ValueError(f"p must be a polynomial of degree <= n = {L.n}")
    width = L.g - L.n
    if width <= 0:
        return LaurentPoly.zero(L.field)
    return window_project(-_transport(L, p), -width, -1)


def delta_matrix(L: BundleDatum) -> ExactMatrix:
    """Matrix of ``p -> delta_L(p)`` from ``(1, t, ..., t^n)`` to ``(t^-1, ..., t^-(g-n))``."""
    f = L.field
    n = max(L.n, -1)
    width = max(L.g - L.n, 0)
    cols = [delta_L(L, LaurentPoly.monomial(j, f)) for j in range(n + 1)]
    rows = [[cols[j].coeff(-m) for j in range(n + 1)] for m in range(1, width + 1)]
    return ExactMatrix.from_rows(rows, f, cols=n + 1) if rows else ExactMatrix.zeros(0, n + 1, f)


def section_basis(L: BundleDatum) -> SectionBasis:
    f = L.field
    if L.n < 0:
        return SectionBasis((), ())
    q_part = tuple(LaurentPoly.monomial(k, f) for k in range(L.n - L.g))
    _, kernel = rank_and_kernel(delta_matrix(L))
    p_part = []
    for vec in kernel:
        p = LaurentPoly.from_coefficients(vec, f)
        p1 = window_project(_transport(L, p), 0, _POLY_PART_HI)
        p_part.append((p, p1))
    return SectionBasis(q_part, tuple(p_part))


def h0(L: BundleDatum) -> int:
    if L.n < 0:
        return 0
    rank, _ = rank_and_kernel(delta_matrix(L))
    return max(L.n - L.g, 0) + (L.n + 1 - rank)

"""Linear series on ribbons over P^1."""

from .exact import GF, QQ, ExactMatrix, LaurentPoly, laurent_derivative, rank_and_kernel, window_project
from .ribbon import (
    BundleDatum,
    ProjBundlePoint,
    RibbonDatum,
    is_hyperelliptic,
    iso_over_P1,
    normalize_ribbon,
    reparameterize,
    tensor,
    twist_bundle,
)
from .sections import SectionBasis, delta_L, h0, section_basis
from .determinantal import build_A, build_Abar, clifford_check, in_BW, in_W

__all__ = [
    "GF", "QQ", "ExactMatrix", "LaurentPoly", "laurent_derivative", "rank_and_kernel", "window_project",
    "BundleDatum", "ProjBundlePoint", "RibbonDatum", "is_hyperelliptic", "iso_over_P1",
    "normalize_ribbon", "reparameterize", "tensor", "twist_bundle",
    "SectionBasis", "delta_L", "h0", "section_basis",
    "build_A", "build_Abar", "clifford_check", "in_BW", "in_W",
]

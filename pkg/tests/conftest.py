from __future__ import annotations

import random

import pytest
from hypothesis import strategies as st

from ribbonseries.exact import GF, QQ, LaurentPoly
from ribbonseries.ribbon import BundleDatum, RibbonDatum

ACCEPTANCE_LINES: list[str] = []


def laurent_polys(field, lo=-6, hi=6, max_terms=8):
    coeff = st.integers(-9, 9)
    return st.dictionaries(st.integers(lo, hi), coeff, max_size=max_terms).map(
        lambda d: LaurentPoly.from_dict(d, field)
    )


def random_bundle(rng: random.Random, field, g: int, n: int, height: int = 4) -> BundleDatum:
    def draw():
        if field == QQ:
            return QQ(rng.randint(-height, height))
        return rng.randrange(field.p)

    R = RibbonDatum.from_coefficients(g, [draw() for _ in range(g - 2)], field)
    return BundleDatum.from_coefficients(R, n, [draw() for _ in range(g)])


@pytest.fixture
def rng():
    return random.Random(20261016)


@pytest.fixture(params=[QQ, GF(101)], ids=["QQ", "F101"])
def field(request):
    return request.param


def pytest_terminal_summary(terminalreporter):
    if ACCEPTANCE_LINES:
        terminalreporter.section("acceptance criteria")
        for line in ACCEPTANCE_LINES:
            terminalreporter.write_line(line)

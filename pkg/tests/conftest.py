from fractions import Fraction

import pytest
from hypothesis import settings, strategies as st

from hodgering.clifford import build
from hodgering.fixtures import builtin
from hodgering.scalars import ComplexQuad, RealQuad

settings.register_profile("default", max_examples=60, deadline=None)
settings.load_profile("default")

rationals = st.fractions(min_value=-20, max_value=20, max_denominator=12)
nonzero_rationals = rationals.filter(lambda q: q != 0)


@st.composite
def real_quads(draw, d=2):
    return RealQuad(draw(rationals), draw(rationals), d)


@st.composite
def complex_quads(draw, d=2):
    return ComplexQuad(draw(real_quads(d)), draw(real_quads(d)), d=d)


@st.composite
def rational_matrices(draw, max_rows=5, max_cols=5):
    r = draw(st.integers(1, max_rows))
    c = draw(st.integers(1, max_cols))
    small = st.fractions(min_value=-4, max_value=4, max_denominator=3)
    # bias towards rank deficiency with zeros
    entry = st.one_of(st.just(Fraction(0)), small)
    return [[draw(entry) for _ in range(c)] for _ in range(r)]


@st.composite
def symmetric_matrices(draw, max_n=5):
    n = draw(st.integers(1, max_n))
    small = st.fractions(min_value=-5, max_value=5, max_denominator=2)
    m = [[Fraction(0)] * n for _ in range(n)]
    for i in range(n):
        for j in range(i, n):
            m[i][j] = m[j][i] = draw(small)
    return m


@pytest.fixture(scope="session")
def f1_cl():
    hs = builtin("f1").weight2()
    return build(hs.gram, hs)


@pytest.fixture(scope="session")
def f2_cl():
    hs = builtin("f2").weight2()
    return build(hs.gram, hs)


@pytest.fixture(scope="session")
def voisin_alg():
    return builtin("voisin").algebra()


def pytest_terminal_summary(terminalreporter):
    from test_acceptance import RESULTS

    if RESULTS:
        terminalreporter.section("acceptance criteria")
        for line in RESULTS:
            terminalreporter.write_line(line)

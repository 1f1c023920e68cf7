import random
from fractions import Fraction

import numpy as np
import pytest
from hypothesis import given, settings, strategies as st

from hodgering.errors import ValidationError
from hodgering.hodge import (
    WeightOneHS,
    WeightTwoHS,
    end_gram,
    end_involution,
    induced_end_weight2,
    unvec,
    validate_weight1,
    validate_weight2,
    vec,
)
from hodgering.linalg import Subspace, bilinear, matmul, matvec
from hodgering.scalars import ComplexQuad, FloatField

I1 = ComplexQuad.i(1)
G_F1 = [[1, 0, 0], [0, 1, 0], [0, 0, -1]]
OMEGA_1 = [[0, 1], [-1, 0]]


def test_f1_valid():
    hs = WeightTwoHS(G_F1, [[1, I1, 0]])
    rep = validate_weight2(hs)
    assert rep.ok, str(rep)
    assert hs.h11 == Subspace([(0, 0, 1)], 3)
    assert hs.hermitian((1, I1, 0), (1, I1, 0)) == 2


def test_isotropic_but_not_positive():
    hs = WeightTwoHS(G_F1, [[1, 0, I1]])
    rep = validate_weight2(hs)
    assert not rep["h20_positive"].passed
    assert hs.hermitian((1, 0, I1), (1, 0, I1)) == 0


def test_not_isotropic():
    rep = validate_weight2(WeightTwoHS(G_F1, [[1, 0, I1 + 1]]))
    assert not rep["h20_isotropic"].passed


def test_zero_h20_rejected():
    with pytest.raises(ValidationError) as exc:
        validate_weight2(WeightTwoHS([[1, 0], [0, -1]], []))
    assert exc.value.invariant == "h20_nonzero"


def test_weight1_examples():
    assert validate_weight1(WeightOneHS(OMEGA_1, [[1, I1]])).ok
    rep = validate_weight1(WeightOneHS(OMEGA_1, [[1, 0]]))
    assert not rep["direct_sum"].passed
    rep = validate_weight1(WeightOneHS(OMEGA_1, [[1, -I1]]))
    assert rep["direct_sum"].passed and not rep["positivity"].passed


def test_end_of_elliptic_curve():
    w1 = WeightOneHS(OMEGA_1, [[1, I1]])
    end = induced_end_weight2(w1)
    assert end.hodge_numbers() == (1, 2, 1)
    assert validate_weight2(end).ok
    ident = vec([[1, 0], [0, 1]])
    assert end.h11.contains(ident)
    assert end.form(ident, ident) == -2 * w1.g


def test_induced_rejects_invalid():
    with pytest.raises(ValidationError):
        induced_end_weight2(WeightOneHS(OMEGA_1, [[1, -I1]]))


def _random_weight1(rng, g):
    """h10 = columns of [τ̄; 1] with ω = [[0, I], [−I, 0]] and τ symmetric, Im τ > 0."""
    a = rng.normal(size=(g, g))
    x = (a + a.T) / 2
    b = rng.normal(size=(g, g))
    y = b @ b.T + g * np.eye(g)
    tau = x - 1j * y
    omega = [[0] * (2 * g) for _ in range(2 * g)]
    for k in range(g):
        omega[k][g + k] = 1
        omega[g + k][k] = -1
    # isotropic since τ is symmetric; i·ω(w, w̄) = 2·Im τ
    h10 = [tuple(list(tau[:, j]) + [float(k == j) for k in range(g)]) for j in range(g)]
    return WeightOneHS(omega, h10, FloatField(1e-8))


@pytest.mark.parametrize("seed", range(20))
def test_random_float_weight1_end(seed):
    rng = np.random.default_rng(seed)
    g = 1 + seed % 2
    w1 = _random_weight1(rng, g)
    assert validate_weight1(w1).ok
    end = induced_end_weight2(w1)
    assert end.hodge_numbers() == (g * g, 2 * g * g, g * g)
    rep = validate_weight2(end)
    assert rep.ok, str(rep)


@settings(max_examples=30)
@given(st.integers(0, 10 ** 6))
def test_adjoint_is_anti_homomorphism_and_adjunction(seed):
    rng = random.Random(seed)
    omega = [[0, 1, 0, 0], [-1, 0, 0, 0], [0, 0, 0, 2], [0, 0, -2, 0]]
    T = end_involution(omega)
    G = end_gram(omega)
    n = 4

    def rnd():
        return [[Fraction(rng.randint(-3, 3)) for _ in range(n)] for _ in range(n)]

    f, g, h = rnd(), rnd(), rnd()

    def t(m):
        return unvec(matvec(T, vec(m)), n)

    assert t(matmul(f, g)) == matmul(t(g), t(f))
    assert t(t(f)) == f
    assert bilinear(vec(matmul(f, g)), G, vec(h)) == bilinear(vec(g), G, vec(matmul(t(f), h)))


@given(st.sampled_from([((1, I1, 0),), ((1, 0, I1),)]))
def test_hodge_dimensions_add_up(h20):
    hs = WeightTwoHS(G_F1, list(h20))
    a, b, c = hs.hodge_numbers()
    if (hs.h20 + hs.h02).dim == 2 * hs.p:
        assert a + b + c == hs.rank
    assert hs.h02 == hs.h20.conj()

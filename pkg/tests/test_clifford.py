import random
from fractions import Fraction

import pytest
from hypothesis import given, settings, strategies as st

from hodgering.algebra import validate_algebra
from hodgering.clifford import (
    build,
    compute_w,
    grading_pieces,
    grading_report,
    ks_structure,
    normal_order,
)
from hodgering.errors import DimensionMismatch, ValidationError
from hodgering.hodge import WeightTwoHS, validate_weight2
from hodgering.linalg import Subspace, hermitian_definiteness, matmul, transpose
from hodgering.scalars import ComplexQuad

I1 = ComplexQuad.i(1)


def rand_elem(rng, n):
    return tuple(Fraction(rng.randint(-4, 4), rng.randint(1, 2)) for _ in range(n))


def test_rank_one():
    cl = build([[1]])
    e1 = cl.generator(0)
    assert cl.mul(e1, e1) == (-1, 0)
    assert cl.dim == 2


def test_rank_two_e_squared():
    cl = build([[1, 0], [0, 1]])
    e1, e2 = cl.generator(0), cl.generator(1)
    e = cl.mul(e2, e1)
    assert cl.mul(e, e) == tuple(-u for u in cl.base.unit)


def test_normal_order():
    assert normal_order([1, 0], [-1, -1]) == (-1, 0b11)
    assert normal_order([0, 1, 0], [-1, -1]) == (1, 0b10)
    assert normal_order([0, 0], [-1, -1], wedge=True) == (0, 0)


def test_rank_three_exhaustive_associativity(f1_cl):
    alg = f1_cl.base
    assert alg.dim == 8
    b = alg.basis()
    for x in b:
        for y in b:
            xy = alg.mul(x, y)
            for z in b:
                assert alg.mul(xy, z) == alg.mul(x, alg.mul(y, z))


def test_rank_cap():
    with pytest.raises(DimensionMismatch):
        build([[int(i == j) for j in range(7)] for i in range(7)])


def test_reversal_examples(f1_cl):
    e1, e2 = f1_cl.generator(0), f1_cl.generator(1)
    assert f1_cl.reversal(e1) == e1
    e12 = f1_cl.mul(e1, e2)
    assert f1_cl.reversal(e12) == f1_cl.mul(e2, e1) == tuple(-x for x in e12)


@settings(max_examples=100)
@given(st.integers(0, 10 ** 6))
def test_reversal_involutive_and_adjoint(seed):
    rng = random.Random(seed)
    cl = _F1
    x, y, v = (rand_elem(rng, cl.dim) for _ in range(3))
    assert cl.reversal(cl.reversal(x)) == x
    assert cl.reversal(cl.mul(x, y)) == cl.mul(cl.reversal(y), cl.reversal(x))
    assert cl.clifford_form(x, y) == cl.clifford_form(y, x)
    assert cl.clifford_form(cl.mul(v, x), y) == cl.clifford_form(x, cl.mul(cl.reversal(v), y))
    assert cl.clifford_form(cl.mul(x, v), y) == cl.clifford_form(x, cl.mul(y, cl.reversal(v)))


_F1 = build([[1, 0, 0], [0, 1, 0], [0, 0, -1]])


def test_form_on_unit_and_generators(f1_cl):
    one = f1_cl.base.unit
    assert f1_cl.clifford_form(one, one) == -1
    G = f1_cl.generator_gram
    for i in range(3):
        for j in range(3):
            assert f1_cl.clifford_form(f1_cl.generator(i), f1_cl.generator(j)) == G[i][j]


def test_even_part_is_subalgebra(f2_cl):
    even = [b for b, m in zip(f2_cl.base.basis(), f2_cl.monomials) if bin(m).count("1") % 2 == 0]
    span = Subspace(even, f2_cl.dim)
    assert all(span.contains(f2_cl.mul(a, b)) for a in even for b in even)
    assert f2_cl.dim == 16


def test_nondiagonal_gram():
    G = [[0, 1, 0], [1, 0, 0], [0, 0, 1]]
    cl = build(G)
    P, D = cl.diag_transform, cl.generator_gram
    assert matmul(matmul(transpose(P), G), P) == D
    # the lattice vector (1, 1, 0) has square −<v, v> = −2
    v = cl.lattice_element([1, 1, 0])
    assert cl.mul(v, v) == tuple(-2 * u for u in cl.base.unit)


def test_f2_validates(f2_cl):
    rep = validate_algebra(f2_cl.base)
    assert rep.ok, str(rep)
    assert f2_cl.hodge.hodge_numbers() == (4, 8, 4)


def test_f1_grading(f1_cl):
    assert f1_cl.hodge.hodge_numbers() == (2, 4, 2)
    rep = validate_weight2(f1_cl.hodge)
    assert rep.ok, str(rep)
    assert hermitian_definiteness(f1_cl.hodge.hermitian_matrix(f1_cl.hodge.h11), True).negative
    assert grading_report(f1_cl).ok
    p20, p11, p02 = (Subspace(p, 8) for p in grading_pieces(f1_cl))
    assert (p20.dim, p11.dim, p02.dim) == (2, 4, 2)
    assert (p20 + p11 + p02).dim == 8


def test_compute_w_dimension(f1_cl):
    W = compute_w(f1_cl)
    assert W.dim == 4
    b = f1_cl.base.basis()
    assert all(W.contains(f1_cl.mul(w, x)) for w in W.basis for x in b)


def test_ks_on_f1(f1_cl):
    ks = ks_structure(f1_cl)
    assert ks.report.ok, str(ks.report)
    e1, e2 = f1_cl.generator(0), f1_cl.generator(1)
    assert ks.e == f1_cl.mul(e2, e1)
    assert ks.W == compute_w(f1_cl)


def test_ks_rescales_exactly():
    hs = WeightTwoHS([[1, 0, 0], [0, 1, 0], [0, 0, -1]], [[2, 2 * I1, 0]])
    cl = build(hs.gram, hs)
    ks = ks_structure(cl, use_float=False)
    assert ks.report.ok, str(ks.report)
    assert ks.e == cl.mul(cl.generator(1), cl.generator(0))


def test_ks_normalization_outside_field():
    hs = WeightTwoHS([[3, 0, 0], [0, 3, 0], [0, 0, -1]], [[1, I1, 0]])
    cl = build(hs.gram, hs)
    with pytest.raises(ValidationError):
        ks_structure(cl, use_float=False)
    ks = ks_structure(cl, use_float=True)
    assert not ks.report["exact_normalization"].passed
    assert ks.report["float_eigenspace_angle"].passed


def test_build_rejects_invalid_hs():
    hs = WeightTwoHS([[1, 0, 0], [0, 1, 0], [0, 0, -1]], [[1, 0, I1]])
    with pytest.raises(ValidationError):
        build(hs.gram, hs)

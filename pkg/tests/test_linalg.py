from fractions import Fraction

import numpy as np
import pytest
import sympy
from hypothesis import given, settings, strategies as st

from hodgering.errors import DimensionMismatch, InconsistentSystem, ValidationError
from hodgering.linalg import (
    Subspace,
    bilinear,
    congruence_diagonalize,
    hermitian_definiteness,
    identity,
    kernel_vectors,
    matmul,
    matvec,
    orth_complement,
    product_span,
    rank,
    solve_rank,
    subspace_ops,
    transpose,
    zeros,
)
from hodgering.algebra import Algebra
from hodgering.scalars import ComplexQuad, FloatField, RealQuad

from conftest import rational_matrices, symmetric_matrices


def e(i, n):
    return tuple(Fraction(int(k == i)) for k in range(n))


def test_identity_full_rank():
    res = solve_rank(identity(4))
    assert res.rank == 4 and res.kernel.dim == 0


def test_row_kernel():
    res = solve_rank([[1, 1]])
    assert res.rank == 1
    assert res.kernel == Subspace([(1, -1)], 2)


def test_zero_matrix_kernel():
    res = solve_rank(zeros(2, 3))
    assert res.rank == 0 and res.kernel.dim == 3


def test_solve_and_errors():
    res = solve_rank([[2, 0], [0, 4]], [[2], [2]])
    assert res.solution == [[1], [Fraction(1, 2)]]
    with pytest.raises(InconsistentSystem):
        solve_rank([[1, 1], [1, 1]], [[0], [1]])
    with pytest.raises(DimensionMismatch):
        solve_rank([[1, 1]], [[0], [1]])


def test_subspace_examples():
    assert Subspace([e(0, 3)], 3).intersect(Subspace([e(1, 3)], 3)).dim == 0
    assert (Subspace([e(0, 2)], 2) + Subspace([(1, 1)], 2)).dim == 2
    with pytest.raises(DimensionMismatch):
        Subspace([e(0, 2)], 2) + Subspace([e(0, 3)], 3)


def test_product_span_matrix_units():
    m2 = Algebra.matrix_algebra(2)
    e11, e12 = m2.basis_vector(0), m2.basis_vector(1)
    prod = product_span(Subspace([e11], 4), Subspace([e12], 4), m2.mul)
    assert prod == Subspace([e12], 4)
    assert subspace_ops(Subspace([e11], 4), Subspace([e12], 4), "product_span", m2.mul) == prod


def test_orth_complement_examples():
    g = [[1, 0, 0], [0, 1, 0], [0, 0, -1]]
    comp = orth_complement(Subspace([e(0, 3)], 3), g)
    assert comp == Subspace([e(1, 3), e(2, 3)], 3)
    v = (1, 0, 1)
    assert bilinear(v, g, v) == 0
    assert orth_complement(Subspace([v], 3), g).contains(v)
    assert orth_complement(Subspace.full(3), g).dim == 0


@pytest.mark.parametrize(
    "g, verdict",
    [(identity(2), "positive"), ([[-1, 0], [0, -1]], "negative"), ([[1, 2], [2, 1]], "indefinite"),
     ([[1, 0], [0, 0]], "degenerate"), ([[0, 1], [1, 0]], "indefinite")],
)
def test_definiteness_examples(g, verdict):
    assert hermitian_definiteness(g, False).verdict == verdict


def test_definiteness_rejects_asymmetric():
    with pytest.raises(ValidationError):
        hermitian_definiteness([[1, 2], [0, 1]], False)


def test_hermitian_over_gaussian_field():
    i = ComplexQuad.i(2)
    r2 = RealQuad(0, 1, 2)
    # [[2, i√2], [−i√2, 2]] has eigenvalues 2 ± √2 > 0
    g = [[ComplexQuad(2, d=2), i * r2], [-i * r2, ComplexQuad(2, d=2)]]
    cert = hermitian_definiteness(g, True)
    assert cert.positive


def test_congruence_examples():
    P, D = congruence_diagonalize([[0, 1], [1, 0]])
    assert matmul(matmul(transpose(P), [[0, 1], [1, 0]]), P) == D
    assert sorted([D[0][0], D[1][1]]) == [-2, 2]
    P, D = congruence_diagonalize([[3, 0], [0, -1]])
    assert P == identity(2)
    assert congruence_diagonalize([[5]])[1] == [[5]]
    # the documented transform also works
    Q = [[1, 1], [1, -1]]
    assert matmul(matmul(transpose(Q), [[0, 1], [1, 0]]), Q) == [[2, 0], [0, -2]]


@given(rational_matrices())
def test_rank_transpose_and_kernel(m):
    ncols = len(m[0])
    assert rank(m) == rank(transpose(m))
    for v in kernel_vectors(m, ncols):
        assert all(x == 0 for x in matvec(m, v))
    assert rank(m) == sympy.Matrix(m).rank()
    assert rank(m) + len(kernel_vectors(m, ncols)) == ncols


@given(rational_matrices(4, 5), rational_matrices(4, 5))
def test_dimension_formula(a, b):
    n = 5
    ra = [r + [Fraction(0)] * (n - len(r)) for r in a]
    rb = [r + [Fraction(0)] * (n - len(r)) for r in b]
    A, B = Subspace(ra, n), Subspace(rb, n)
    assert (A + B).dim == A.dim + B.dim - A.intersect(B).dim
    assert A.intersect(B) <= A and A <= A + B


@given(rational_matrices(4, 4))
def test_canonical_equality_is_basis_independent(m):
    n = len(m[0])
    s = Subspace(m, n)
    mixed = [tuple(a + 2 * b for a, b in zip(u, v)) for u, v in zip(s.basis, s.basis[1:] + s.basis[:1])]
    if len(s.basis) > 1 and Subspace(mixed, n).dim == s.dim:
        assert Subspace(mixed, n) == s
    assert Subspace(list(s.basis) + list(s.basis), n) == s


@settings(max_examples=50)
@given(symmetric_matrices())
def test_congruence_matches_eigen_signs(g):
    P, D = congruence_diagonalize(g)
    assert matmul(matmul(transpose(P), g), P) == D
    assert all(D[i][j] == 0 for i in range(len(D)) for j in range(len(D)) if i != j)
    eig = np.linalg.eigvalsh(np.array(g, dtype=float))
    pos = sum(1 for x in eig if x > 1e-9)
    neg = sum(1 for x in eig if x < -1e-9)
    diag = [D[i][i] for i in range(len(D))]
    assert (sum(1 for x in diag if x > 0), sum(1 for x in diag if x < 0)) == (pos, neg)
    cert = hermitian_definiteness(g, False)
    assert cert.signature()[:2] == (pos, neg)


def test_float_backend_subspace():
    f = FloatField(1e-9)
    s = Subspace([(1.0, 1j, 0.0), (0.0, 0.0, 1.0 + 1e-12)], 3, f)
    assert s.contains((2.0, 2j, 3.0))
    assert not s.contains((1.0, 0.0, 0.0))

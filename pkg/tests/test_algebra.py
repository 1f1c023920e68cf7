import random
from fractions import Fraction

import pytest
import sympy
from hypothesis import given, settings, strategies as st

from hodgering import poly
from hodgering.algebra import (
    Algebra,
    HodgeAlgebra,
    bidegree_check,
    center,
    minimal_polynomial,
    split_commutative,
    subalgebra_generated,
    totally_real,
    trace_form_signature,
    validate_algebra,
)
from hodgering.clifford import build
from hodgering.errors import UnsupportedCenter, ValidationError
from hodgering.fixtures import builtin
from hodgering.hodge import WeightTwoHS
from hodgering.linalg import Subspace, matmul
from hodgering.scalars import ComplexQuad

I1 = ComplexQuad.i(1)


def test_q_is_a_valid_algebra():
    # Q with t = id, <1, 1> = −1 and everything of type (1,1)
    alg = Algebra.from_triples(1, [(0, 0, 0, 1)], [1], [[1]])
    h = HodgeAlgebra.from_algebra(alg, WeightTwoHS([[-1]], []))
    rep = validate_algebra(h)
    assert rep.ok, str(rep)


def test_f1_clifford_validates(f1_cl):
    rep = validate_algebra(f1_cl.base)
    assert rep.ok, str(rep)
    assert bidegree_check(f1_cl.base).ok


def test_matrix_algebra_with_identity_involution_fails():
    from hodgering.selftest import NEGATIVE_FIXTURES
    from hodgering.fixtures import parse_fixture

    fx = parse_fixture(NEGATIVE_FIXTURES["matrix_t_identity"][0])
    rep = validate_algebra(fx.algebra())
    assert not rep["involution_anti_homomorphism"].passed
    m2 = Algebra.matrix_algebra(2)
    e12, e21 = m2.basis_vector(1), m2.basis_vector(2)
    # with t = id, t(E12 E21) = E11 but t(E21) t(E12) = E22
    assert m2.mul(e12, e21) != m2.mul(e21, e12)


def test_exterior_algebra_bidegree(f1_cl):
    hs = builtin("f1").weight2()
    ext = build(hs.gram, hs, wedge=True)
    assert bidegree_check(ext.base).ok


def test_perturbed_structure_constant_fails(f1_cl):
    alg = f1_cl.base
    n = alg.dim
    i12 = f1_cl.index[0b011]
    table = [list(row) for row in alg.table]
    # e1·e2 gains an extra multiple of the unit
    prod = dict(table[f1_cl.index[0b001]][f1_cl.index[0b010]])
    prod[0] = prod.get(0, 0) + 1
    table[f1_cl.index[0b001]][f1_cl.index[0b010]] = tuple(sorted((k, c) for k, c in prod.items() if c))
    bad = HodgeAlgebra(n, table, alg.unit, alg.involution, alg.hs, alg.names)
    rep = bidegree_check(bad)
    assert not rep.ok
    assert i12 != 0


def test_center_of_commutative_and_matrix_algebra():
    k = Algebra.from_polynomial([-2, 0, 1])
    assert center(k, split=False).center == Subspace.full(2)
    m2 = Algebra.matrix_algebra(2)
    assert center(m2, split=False).center == Subspace([m2.unit], 4)


def test_center_of_f1_brute_force(f1_cl):
    alg = f1_cl.base
    cr = center(alg, split=False)
    brute = [b for b in alg.basis() if all(alg.mul(b, c) == alg.mul(c, b) for c in alg.basis())]
    assert cr.center == Subspace(brute, alg.dim)
    assert cr.center.dim == 2
    top = alg.basis_vector(f1_cl.index[0b111])
    assert cr.center.contains(top)
    assert cr.t_invariant == Subspace([alg.unit], alg.dim)


def test_split_examples():
    comps = split_commutative(Algebra.from_polynomial([-1, 0, 1]))
    half = Fraction(1, 2)
    assert sorted(c.idempotent for c in comps) == sorted([(half, half), (half, -half)])
    comps = split_commutative(Algebra.from_polynomial([-2, 0, 1]))
    assert len(comps) == 1 and comps[0].is_field and comps[0].totally_real


def _qsqrt2_i():
    # basis 1, x, y, xy with x² = 2, y² = −1
    from hodgering.fixtures import kmul

    basis = [(1, 0, 0, 0), (0, 1, 0, 0), (0, 0, 1, 0), (0, 0, 0, 1)]
    triples = []
    for a, u in enumerate(basis):
        for b, v in enumerate(basis):
            for k, c in enumerate(kmul(u, v)):
                if c:
                    triples.append((a, b, k, c))
    return Algebra.from_triples(4, triples, [1, 0, 0, 0])


def test_split_biquadratic_field():
    k = _qsqrt2_i()
    x = (0, 1, 1, 0)  # √2 + i
    mp = minimal_polynomial(k, x)
    t = sympy.Symbol("t")
    oracle = sympy.minimal_polynomial(sympy.sqrt(2) + sympy.I, t)
    assert sympy.Poly(oracle, t).all_coeffs()[::-1] == [int(c) for c in mp]
    assert mp == [9, 0, -2, 0, 1]
    comps = split_commutative(k)
    assert len(comps) == 1 and comps[0].degree == 4 and comps[0].totally_real is False


def test_split_rejects_nilpotents_and_noncommutative():
    with pytest.raises(ValidationError) as exc:
        split_commutative(Algebra.from_polynomial([0, 0, 1]))
    assert exc.value.invariant == "reduced"
    with pytest.raises(ValidationError):
        split_commutative(Algebra.matrix_algebra(2))


def test_split_degree_cap():
    with pytest.raises(UnsupportedCenter):
        split_commutative(Algebra.from_polynomial([-2, 0, 0, 0, 0, 1]))


def test_totally_real_examples():
    assert totally_real([-2, 0, 1])
    assert not totally_real([1, 0, 1])
    assert totally_real([5, 0, -5, 0, 1])


def test_trace_form_examples():
    q = Algebra.from_triples(1, [(0, 0, 0, 1)], [1])
    assert trace_form_signature(q, (Fraction(-1),)).negative
    gauss = Algebra.from_polynomial([1, 0, 1], involution=[[1, 0], [0, -1]])
    cert = trace_form_signature(gauss, (Fraction(-1), Fraction(0)))
    assert cert.negative
    for lam, definite in ((-3, True), (5, False)):
        k = Algebra.from_polynomial([-lam, 0, 1], involution=[[1, 0], [0, -1]])
        cert = trace_form_signature(k, (Fraction(2), Fraction(0)))
        assert (cert.positive or cert.negative) == definite


def test_subalgebra_generated_examples():
    m2 = Algebra.matrix_algebra(2)
    assert subalgebra_generated(m2, m2.unit).dim == 1
    j = (0, -1, 1, 0)  # rotation by 90°, j² = −1
    assert m2.mul(j, j) == tuple(-x for x in m2.unit)
    assert subalgebra_generated(m2, j).dim == 2


@settings(max_examples=40)
@given(st.integers(0, 10 ** 6))
def test_left_matrix_is_multiplicative(seed):
    rng = random.Random(seed)
    m2 = Algebra.matrix_algebra(2)
    a = tuple(Fraction(rng.randint(-4, 4)) for _ in range(4))
    b = tuple(Fraction(rng.randint(-4, 4)) for _ in range(4))
    assert m2.left_matrix(m2.mul(a, b)) == matmul(m2.left_matrix(a), m2.left_matrix(b))
    assert m2.right_matrix(m2.mul(a, b)) == matmul(m2.right_matrix(b), m2.right_matrix(a))


def test_adjunction_on_random_triples(f1_cl):
    alg = f1_cl.base
    rng = random.Random(1)
    for _ in range(100):
        v, x, y = (tuple(Fraction(rng.randint(-3, 3)) for _ in range(alg.dim)) for _ in range(3))
        assert alg.form(alg.mul(v, x), y) == alg.form(x, alg.mul(alg.involute(v), y))


def test_rank_cap():
    with pytest.raises(Exception):
        Algebra.from_triples(65, [], [1] + [0] * 64)

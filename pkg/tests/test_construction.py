import random
from fractions import Fraction

import pytest
from hypothesis import given, settings, strategies as st

from hodgering.construction import (
    build_weight1,
    certify_polarization,
    compute_W,
    decompose,
    e_beta_maps,
    general_construct,
    omega_matrix,
    verify_uniqueness,
)
from hodgering.errors import ValidationError
from hodgering.hodge import WeightOneHS, validate_weight1
from hodgering.linalg import Subspace, bilinear, product_span
from hodgering.scalars import ComplexQuad


@pytest.fixture(scope="module")
def f1_result(f1_cl):
    alg = f1_cl.base
    return build_weight1(alg, decompose(alg), 0)


@pytest.fixture(scope="module")
def voisin_dec(voisin_alg):
    return decompose(voisin_alg)


@pytest.fixture(scope="module")
def voisin_result(voisin_alg, voisin_dec):
    return general_construct(voisin_alg, voisin_dec, 0)


def test_compute_w_f1(f1_cl):
    alg = f1_cl.base
    W = compute_W(alg)
    assert W.dim == 4
    assert W.contains_space(alg.hs.h20)
    assert W.contains_space(product_span(W, Subspace.full(alg.dim), alg.mul))


def test_decompose_f1(f1_cl):
    dec = decompose(f1_cl.base)
    assert dec.dims == (4, 4, 0)
    assert dec.report.ok
    assert product_span(f1_cl.base.hs.h02, Subspace.full(8), f1_cl.mul) == dec.Wbar


def test_decompose_voisin(voisin_alg, voisin_dec):
    assert voisin_alg.dim == 16
    assert voisin_dec.dims == (4, 4, 8)
    assert (voisin_dec.W + voisin_dec.Wbar).dim == 8


def test_build_weight1_f1(f1_cl, f1_result):
    res = f1_result
    assert res.report.ok, str(res.report)
    assert res.g == 4 and res.w1.rank == 8
    e1, e2 = f1_cl.generator(0), f1_cl.generator(1)
    e21 = f1_cl.mul(e2, e1)
    assert res.a == tuple(-4 * x for x in e21)
    assert f1_cl.reversal(res.a) == tuple(-x for x in res.a)
    assert res.report["polarization.h_a_positive_on_W"].passed
    assert res.report["t_invariant_center_is_Q"].passed


def test_per_term_semidefinite(f1_result):
    terms = [c for c in f1_result.report.checks if c.name.startswith("per_term.")]
    assert terms and all(c.passed for c in terms)


def test_build_weight1_refuses_nonzero_m(voisin_alg, voisin_dec):
    with pytest.raises(ValidationError) as exc:
        build_weight1(voisin_alg, voisin_dec)
    assert exc.value.invariant == "M_zero"


@settings(max_examples=20)
@given(st.integers(0, 10 ** 6))
def test_any_odd_element_makes_w_isotropic(seed):
    # hypothesis does not mix with function-scoped fixtures, so cache by hand
    cl = _f1_cached()
    alg = cl.base
    rng = random.Random(seed)
    b = tuple(Fraction(rng.randint(-5, 5)) for _ in range(alg.dim))
    a = tuple(x - y for x, y in zip(b, alg.involute(b)))
    om = omega_matrix(alg, a)
    n = alg.dim
    assert all(om[i][j] == -om[j][i] for i in range(n) for j in range(n))
    W = compute_W(alg)
    assert all(bilinear(u, om, v) == 0 for u in W.basis for v in W.basis)


_CACHE = {}


def _f1_cached():
    if "f1" not in _CACHE:
        from hodgering.clifford import build
        from hodgering.fixtures import builtin

        hs = builtin("f1").weight2()
        _CACHE["f1"] = build(hs.gram, hs)
    return _CACHE["f1"]


def test_symmetric_a_is_rejected(f1_cl):
    alg = f1_cl.base
    rep = certify_polarization(alg, compute_W(alg), alg.unit)
    assert not rep["t_a_minus_a"].passed


def test_uniqueness(f1_cl, f1_result):
    alg = f1_cl.base
    dec = f1_result.decomposition
    assert verify_uniqueness(alg, f1_result, dec.W)[0] == "equal"
    verdict, rep = verify_uniqueness(alg, f1_result, dec.Wbar)
    assert verdict == "not-a-valid-challenger"
    assert not rep["contains_H20_HC"].passed
    rng = random.Random(3)
    i = ComplexQuad.i(1)
    for _ in range(5):
        vecs = [tuple(rng.randint(-3, 3) + rng.randint(-3, 3) * i for _ in range(8)) for _ in range(4)]
        assert verify_uniqueness(alg, f1_result, Subspace(vecs, 8))[0] == "not-a-valid-challenger"


def test_general_construct_delegates(f1_cl, f1_result):
    alg = f1_cl.base
    res = general_construct(alg, decompose(alg), 0)
    assert res.a == f1_result.a
    assert res.w1.h10 == f1_result.w1.h10


def test_voisin_exact(voisin_alg, voisin_result):
    res = voisin_result
    assert res.report.ok, str(res.report)
    assert not res.float_certificate
    assert res.g == 8
    names = [c.name for c in res.report.checks]
    assert any(n.startswith("polarization.relation[") for n in names)
    assert validate_weight1(res.w1).ok


def test_voisin_m_block_commutes_with_left_multiplication(voisin_alg, voisin_result):
    alg = voisin_alg
    full = Subspace.full(alg.dim, alg.hs.field)
    mblocks = [b for b in voisin_result.sigma_data if b.in_M]
    assert mblocks
    for blk in mblocks:
        h10 = Subspace(blk.h10, alg.dim, alg.hs.field)
        assert h10.dim == 4
        assert h10.contains_space(product_span(full, h10, alg.mul))
        # t(m) = −m and m² = −e_σ
        assert alg.involute(blk.m) == tuple(-x for x in blk.m)
        assert alg.mul(blk.m, blk.m) == tuple(-x for x in blk.idempotent)
        a = voisin_result.a
        assert alg.mul(alg.mul(blk.m, a), alg.involute(blk.m)) == alg.mul(blk.idempotent, a)


def test_voisin_float_path(voisin_alg, voisin_dec):
    res = general_construct(voisin_alg, voisin_dec, 0, force_float=True)
    assert res.float_certificate
    assert res.report.ok, str(res.report)


def test_e_beta_self(f1_cl, f1_result):
    alg = f1_cl.base
    rep = e_beta_maps(alg, f1_result, f1_result.w1, alg.left_matrix, [alg.unit])
    assert rep["e_beta[0]_morphism"].passed
    rep = e_beta_maps(alg, f1_result, f1_result.w1, alg.left_matrix, alg.basis())
    assert rep.ok, str(rep)


def test_e_beta_wrong_complex_structure(f1_cl, f1_result):
    alg = f1_cl.base
    w1 = f1_result.w1
    flipped = WeightOneHS([[-x for x in row] for row in w1.omega], f1_result.decomposition.Wbar)
    assert validate_weight1(flipped).ok
    rep = e_beta_maps(alg, f1_result, flipped, alg.left_matrix, alg.basis())
    assert not rep["e_beta[0]_morphism"].passed


def test_e_beta_rejects_non_algebra_map(f1_cl, f1_result):
    alg = f1_cl.base
    with pytest.raises(ValidationError) as exc:
        e_beta_maps(alg, f1_result, f1_result.w1, alg.right_matrix, [alg.unit])
    assert exc.value.invariant == "algebra_map"


def test_right_multiplication_note(f1_result, voisin_result):
    # W is a right ideal and m_σ is central here, so every right multiplication preserves h10
    assert f1_result.report.info["right_mult_preserving_h10"] == "8 of 8 basis elements"
    assert voisin_result.report.info["right_mult_preserving_h10"] == "16 of 16 basis elements"

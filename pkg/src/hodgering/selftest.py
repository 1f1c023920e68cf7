"""The acceptance suite, shared by ``hodgering selftest`` and the test suite.

Each criterion function returns ``(passed, detail)``.
"""
from __future__ import annotations

import random
import time
from fractions import Fraction

import numpy as np

from . import poly
from .algebra import Algebra, center, split_commutative, totally_real
from .clifford import build, ks_structure
from .construction import build_weight1, decompose, e_beta_maps, general_construct, verify_uniqueness
from .errors import HodgeRingError
from .hodge import validate_weight1, validate_weight2
from .linalg import Subspace
from .scalars import ComplexQuad

NEGATIVE_FIXTURES = {
    "bad_eta": (
        """name bad_eta
field d=1
rank 3
gram
  1 0 0
  0 1 0
  0 0 -1
h20
  1 0 {re:[0,0],im:[1,0]}
""",
        2,
        "h20_isotropic",
    ),
    "asymmetric_gram": (
        """name asymmetric_gram
field d=1
rank 3
gram
  1 2 0
  0 1 0
  0 0 -1
h20
  1 {re:[0,0],im:[1,0]} 0
""",
        2,
        "gram_symmetric",
    ),
    "matrix_t_identity": (
        """name matrix_t_identity
field d=1
rank 4
gram
  0 0 0 -1
  0 0 1 0
  0 1 0 0
  -1 0 0 0
h20
  {re:[0,0],im:[-1,0]} 1 1 {re:[0,0],im:[1,0]}
names
  E11 E12 E21 E22
structure_constants
  0 0 0 1
  0 1 1 1
  1 2 0 1
  1 3 1 1
  2 0 2 1
  2 1 3 1
  3 2 2 1
  3 3 3 1
unit 1 0 0 1
involution
  1 0 0 0
  0 1 0 0
  0 0 1 0
  0 0 0 1
""",
        2,
        "involution_anti_homomorphism",
    ),
}


def _clifford(name):
    from .fixtures import builtin

    fx = builtin(name)
    hs = fx.weight2()
    return build(hs.gram, hs)


def _rand_vec(rng, n):
    return tuple(Fraction(rng.randint(-5, 5), rng.randint(1, 3)) for _ in range(n))


def criterion_1(seed=0):
    """Clifford relations for f1 and f2, exact, under 10 s."""
    start = time.perf_counter()
    rng = random.Random(seed)
    notes = []
    for name in ("f1", "f2"):
        cl = _clifford(name)
        alg = cl.base
        n = alg.dim
        basis = alg.basis()
        prods = [[alg.mul(a, b) for b in basis] for a in basis]
        for i in range(n):
            for j in range(n):
                for k in range(n):
                    if alg.mul(prods[i][j], basis[k]) != alg.mul(basis[i], prods[j][k]):
                        return False, f"{name}: associativity fails at {(i, j, k)}"
        for g in range(cl.n):
            e = cl.generator(g)
            want = tuple(-cl.generator_gram[g][g] * u for u in alg.unit)
            if alg.mul(e, e) != want:
                return False, f"{name}: e{g + 1}² ≠ −G′"
        for _ in range(100):
            x = _rand_vec(rng, n)
            if cl.reversal(cl.reversal(x)) != x:
                return False, f"{name}: reversal not involutive"
        for _ in range(100):
            v, x, y = (_rand_vec(rng, n) for _ in range(3))
            if cl.clifford_form(alg.mul(v, x), y) != cl.clifford_form(x, alg.mul(cl.reversal(v), y)):
                return False, f"{name}: adjunction fails"
        notes.append(f"{name}: dim {n}, {n ** 3} triples")
    elapsed = time.perf_counter() - start
    return elapsed < 10, "; ".join(notes) + f"; {elapsed:.2f} s"


def criterion_2(seed=0):
    """Exact e = −i(2+ηη̄)/2 on f1 and the float e₂e₁ agree."""
    cl = _clifford("f1")
    ks = ks_structure(cl, use_float=True, tol=1e-9)
    rep = ks.report
    names = ["e_real", "e_squared_minus_one", "eigenspace_equals_W", "float_eigenspace_angle"]
    ok = all(n in rep and rep[n].passed for n in names)
    return ok, f"e = {rep.info.get('e')}; {rep['float_eigenspace_angle'].witness if 'float_eigenspace_angle' in rep else ''}"


def criterion_3(seed=0):
    """decompose + build_weight1 + polarization on f1."""
    cl = _clifford("f1")
    dec = decompose(cl.base)
    r = dec.report
    ok = r["W_cap_Wbar_zero"].passed and r["two_sided_ideal"].passed and dec.M.dim == 0
    res = build_weight1(cl.base, dec, seed)
    rep = res.report
    ok = ok and res.g == 4
    for name in ("a_rational", "t_a_minus_a", "W_isotropic", "h_a_positive_on_W"):
        ok = ok and rep[f"polarization.{name}"].passed
    ok = ok and all(isinstance(x, Fraction) for x in res.a)
    ok = ok and validate_weight1(res.w1).ok
    return ok, f"g = {res.g}, a = {rep.info['a']}, {rep['polarization.h_a_positive_on_W'].witness}"


def criterion_4(seed=0):
    """Uniqueness verdicts on f1."""
    cl = _clifford("f1")
    alg = cl.base
    dec = decompose(alg)
    res = build_weight1(alg, dec, seed)
    v_bar, rep_bar = verify_uniqueness(alg, res, dec.Wbar)
    ok = v_bar == "not-a-valid-challenger" and not rep_bar["contains_H20_HC"].passed
    v_w, _ = verify_uniqueness(alg, res, dec.W)
    ok = ok and v_w == "equal"
    rng = random.Random(seed)
    i = ComplexQuad.i(1)
    rejected = 0
    for _ in range(10):
        vecs = [
            tuple(rng.randint(-3, 3) + rng.randint(-3, 3) * i for _ in range(alg.dim))
            for _ in range(dec.W.dim)
        ]
        v, _ = verify_uniqueness(alg, res, Subspace(vecs, alg.dim))
        rejected += v == "not-a-valid-challenger"
    ok = ok and rejected == 10
    return ok, f"conj(W): {v_bar}; W: {v_w}; random rejected {rejected}/10"


def criterion_5(seed=0):
    """The 16-dimensional example with nontrivial M, under 30 s."""
    from .fixtures import builtin

    start = time.perf_counter()
    alg = builtin("voisin").algebra()
    ok = alg.dim == 16
    dec = decompose(alg)
    ok = ok and dec.M.dim == 8 and (dec.W + dec.Wbar).dim == 8
    res = general_construct(alg, dec, seed)
    rep = res.report
    rel = [c for c in rep.checks if c.name.startswith("polarization.relation[")]
    pos = [c for c in rep.checks if c.name.startswith("polarization.block_positive[")]
    ok = ok and rep.ok and not res.float_certificate and rel and pos
    ok = ok and all(c.passed for c in rel + pos)
    elapsed = time.perf_counter() - start
    ok = ok and elapsed < 30
    return bool(ok), f"dim M = {dec.M.dim}, dim(W+W̄) = {(dec.W + dec.Wbar).dim}, g = {res.g}; {elapsed:.1f} s"


def _central_monomials(cl):
    # brute force: a monomial is central iff it commutes with every monomial
    alg = cl.base
    out = []
    for i, b in enumerate(alg.basis()):
        if all(alg.mul(b, c) == alg.mul(c, b) for c in alg.basis()):
            out.append(b)
    return Subspace(out, alg.dim)


def criterion_6(seed=0):
    """Center, commutative splitting and totally-real tests."""
    from .hodge import WeightTwoHS

    i = ComplexQuad.i(1)
    hs = WeightTwoHS([[1, 0, 0], [0, 1, 0], [0, 0, -1]], [[1, i, 0]])
    cl = build(hs.gram, hs)
    cr = center(cl.base, split=False)
    top = cl.base.basis_vector(cl.index[0b111])
    expected = Subspace([cl.base.unit, top], cl.dim)
    ok = cr.center.dim == 2 and cr.center == expected and cr.center == _central_monomials(cl)
    k = Algebra.from_polynomial([-1, 0, 1])
    comps = split_commutative(k)
    ids = sorted(tuple(c.idempotent) for c in comps)
    half = Fraction(1, 2)
    ok = ok and ids == sorted([(half, half), (half, -half)])
    tr = (totally_real([-2, 0, 1]), totally_real([1, 0, 1]), totally_real([5, 0, -5, 0, 1]))
    ok = ok and tr == (True, False, True)
    counts = []
    for p in ([-2, 0, 1], [1, 0, 1], [5, 0, -5, 0, 1]):
        roots = np.roots([float(c) for c in reversed(p)])
        fl = int(np.sum(np.abs(roots.imag) < 1e-9))
        counts.append((poly.count_real_roots(p), fl))
    ok = ok and all(a == b for a, b in counts)
    return ok, f"dim K = {cr.center.dim}; idempotents {len(ids)}; totally_real {tr}; sturm/float {counts}"


def criterion_7(seed=0):
    """Universal property with B = A(f1) and the left regular embedding."""
    cl = _clifford("f1")
    alg = cl.base
    res = build_weight1(alg, decompose(alg), seed)
    rep = e_beta_maps(alg, res, res.w1, alg.left_matrix, alg.basis())
    morph = all(c.passed for c in rep.checks if c.name.startswith("e_beta["))
    ok = rep.ok and morph
    return ok, f"{rep['sum_surjective'].witness}; {rep['stack_injective'].witness}"


def criterion_8(seed=0):
    """Hodge–Riemann relations for the induced grading on C(H) of f1."""
    cl = _clifford("f1")
    rep = validate_weight2(cl.hodge)
    ok = cl.hodge.hodge_numbers() == (2, 4, 2) and rep.ok
    ok = ok and rep["h20_positive"].passed and rep["h11_negative"].passed
    return ok, f"hodge numbers {cl.hodge.hodge_numbers()}; {rep['h20_positive'].witness}; {rep['h11_negative'].witness}"


def criterion_9(seed=0):
    """Each invalid fixture gives its exit code and names its invariant."""
    import io

    from .cli import run_command

    notes = []
    ok = True
    for name, (text, code, invariant) in NEGATIVE_FIXTURES.items():
        out = io.StringIO()
        got = run_command(["validate", "-"], stdin=io.StringIO(text), stdout=out)
        named = invariant in out.getvalue()
        ok = ok and got == code and named
        notes.append(f"{name}: exit {got}, {'names' if named else 'missing'} {invariant}")
    return ok, "; ".join(notes)


CRITERIA = [
    (1, "Clifford relations", criterion_1),
    (2, "Kuga-Satake complex structure", criterion_2),
    (3, "weight-1 pipeline on f1", criterion_3),
    (4, "uniqueness", criterion_4),
    (5, "nontrivial M example", criterion_5),
    (6, "center machinery", criterion_6),
    (7, "universal property", criterion_7),
    (8, "Hodge-Riemann on C(H)", criterion_8),
    (9, "negative controls", criterion_9),
]


def run_criterion(fn, seed=0):
    try:
        return fn(seed)
    except HodgeRingError as exc:
        return False, f"{type(exc).__name__}: {exc}"


def run_all(seed=0, out=print):
    ok = True
    for num, title, fn in CRITERIA:
        passed, detail = run_criterion(fn, seed)
        ok = ok and passed
        out(f"{'PASS' if passed else 'FAIL'} criterion {num} ({title}): {detail}")
    return ok

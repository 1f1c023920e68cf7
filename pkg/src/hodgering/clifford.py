"""Clifford algebra C(H) of a rational quadratic lattice, as a HodgeAlgebra.

The lattice form G is first congruence-diagonalized over Q (Pᵀ G P = G′),
and C(H) is built on the new orthogonal generators e_1..e_n with
e_i e_j = −e_j e_i (i ≠ j) and e_i² = −G′_ii.  Basis monomials are subsets
of {1..n} in ascending order, sorted by length and then lexicographically.
"""
from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from itertools import combinations

import numpy as np
import scipy.linalg

from .algebra import MAX_DIM, Algebra, HodgeAlgebra
from .errors import DimensionMismatch, ValidationError
from .hodge import WeightOneHS, WeightTwoHS
from .linalg import (
    Subspace,
    bilinear,
    congruence_diagonalize,
    matvec,
    orth_complement,
    product_span,
    sesquilinear,
    solve_rank,
    transpose,
)
from .report import Report
from .scalars import EXACT, conj, imaginary_unit, real_part, sqrt_exact

MAX_RANK = 6

__all__ = [
    "CliffordAlgebra",
    "build",
    "normal_order",
    "monomial_name",
    "induced_weight2",
    "ks_structure",
    "KSResult",
    "grading_pieces",
    "grading_report",
    "compute_w",
]


def normal_order(word, squares, wedge=False):
    """Rewrite a word in the generators to ±c·(ascending monomial).

    ``squares[i]`` is the scalar e_i² (so −G′_ii).  Adjacent distinct
    generators are swapped with a sign; adjacent equal ones collapse to
    their square (or to zero in the exterior algebra).
    Returns ``(coefficient, bitmask)``.
    """
    word = list(word)
    coeff = Fraction(1)
    changed = True
    while changed:
        changed = False
        k = 0
        while k < len(word) - 1:
            a, b = word[k], word[k + 1]
            if a > b:
                word[k], word[k + 1] = b, a
                coeff = -coeff
                changed = True
            elif a == b:
                if wedge:
                    return Fraction(0), 0
                coeff *= squares[a]
                del word[k:k + 2]
                changed = True
                continue
            k += 1
    mask = 0
    for g in word:
        mask |= 1 << g
    return coeff, mask


def _mask_indices(mask):
    return [g for g in range(mask.bit_length()) if mask >> g & 1]


def monomial_name(mask) -> str:
    idx = _mask_indices(mask)
    return "".join(f"e{g + 1}" for g in idx) if idx else "1"


class CliffordAlgebra:
    """C(H) together with its bookkeeping.

    Attributes: ``n`` lattice rank, ``gram`` the original form,
    ``generator_gram`` the diagonal G′, ``diag_transform`` the matrix P
    whose columns are the new generators in the original basis,
    ``monomials`` (bitmasks) in basis order and ``base`` the algebra.
    """

    def __init__(self, gram, hs: WeightTwoHS | None = None, wedge=False):
        n = len(gram)
        if n > MAX_RANK or 2 ** n > MAX_DIM:
            raise DimensionMismatch(f"lattice rank {n} exceeds the cap {MAX_RANK}")
        if hs is not None and hs.n != n:
            raise DimensionMismatch("Hodge structure rank differs from the lattice rank")
        self.n = n
        self.gram = [[Fraction(x) for x in row] for row in gram]
        P, D = congruence_diagonalize(self.gram)
        self.diag_transform = P
        self.generator_gram = D
        self.lattice_hs = hs
        self.wedge = wedge
        self.field = hs.field if hs is not None else EXACT
        self.monomials = [
            sum(1 << g for g in c) for k in range(n + 1) for c in combinations(range(n), k)
        ]
        self.index = {m: i for i, m in enumerate(self.monomials)}
        self.dim = len(self.monomials)
        squares = [-D[i][i] for i in range(n)]
        self.squares = squares

        triples = []
        for i, a in enumerate(self.monomials):
            wa = _mask_indices(a)
            for j, b in enumerate(self.monomials):
                c, m = normal_order(wa + _mask_indices(b), squares, wedge)
                if c:
                    triples.append((i, j, self.index[m], c))
        unit = [1] + [0] * (self.dim - 1)
        names = [monomial_name(m) for m in self.monomials]
        alg = Algebra.from_triples(self.dim, triples, unit, names=names)
        self._alg = alg
        T = self._reversal_matrix(alg)
        # the Clifford product is always used for the form, also on the exterior algebra
        cliff = alg if not wedge else CliffordAlgebra(gram, None)._alg
        self.form_gram = _form_gram(cliff, T)
        if hs is not None:
            self.hodge = induced_weight2(self)
            self.base = HodgeAlgebra(self.dim, alg.table, alg.unit, T, self.hodge, names)
        else:
            self.hodge = None
            self.base = Algebra(self.dim, alg.table, alg.unit, T, names)

    # elements -------------------------------------------------------------------

    def generator(self, i):
        """e_{i+1} in the diagonalized basis."""
        return self.base.basis_vector(self.index[1 << i])

    def from_diagonal_coords(self, coeffs):
        """Degree-one element Σ c_i e_i from coordinates in the diagonal basis."""
        out = [0] * self.dim
        for i, c in enumerate(coeffs):
            out[self.index[1 << i]] = c
        return tuple(Fraction(v) if type(v) is int else v for v in out)

    def to_diagonal_coords(self, v):
        """Original lattice coordinates → diagonal-basis coordinates (P⁻¹ v)."""
        res = solve_rank(self.diag_transform, [[x] for x in v], self.field)
        return [row[0] for row in res.solution]

    def lattice_element(self, v):
        return self.from_diagonal_coords(self.to_diagonal_coords(v))

    def mul(self, x, y):
        return self.base.mul(x, y)

    def reversal(self, x):
        return matvec(self.base.involution, x)

    def scalar_part(self, x):
        return x[0]

    def clifford_form(self, x, y):
        """<x, y> = −(scalar part of t(x)·y)."""
        return bilinear(x, self.form_gram, y)

    def monomial_names(self):
        return [monomial_name(m) for m in self.monomials]

    def format_element(self, x) -> str:
        from .hodge import _fmt

        terms = [f"{_fmt(c)}*{monomial_name(m)}" for c, m in zip(x, self.monomials) if c]
        return " + ".join(terms) if terms else "0"

    # internals --------------------------------------------------------------------

    def _reversal_matrix(self, alg):
        cols = []
        for m in self.monomials:
            # multiply the generators in reverse order through the product
            x = alg.unit
            for g in reversed(_mask_indices(m)):
                x = alg.mul(x, alg.basis_vector(self.index[1 << g]))
            cols.append(list(x))
        return transpose(cols)


def _form_gram(alg, T):
    n = alg.dim
    rows = []
    for i in range(n):
        ti = matvec(T, alg.basis_vector(i))
        rows.append([-alg.mul(ti, alg.basis_vector(j))[0] for j in range(n)])
    return rows


def build(gram, hs: WeightTwoHS | None = None, wedge=False) -> CliffordAlgebra:
    """Build C(H) (or the exterior algebra with the same grading when ``wedge``)."""
    if hs is not None:
        from .hodge import validate_weight2

        rep = validate_weight2(hs)
        if not rep.ok:
            bad = rep.failed()[0]
            raise ValidationError(f"lattice Hodge structure is invalid: {bad.name}", bad.name)
    return CliffordAlgebra(gram, hs, wedge)


# --- induced weight-2 structure ---------------------------------------------------


def _eta_diag(cl: CliffordAlgebra):
    hs = cl.lattice_hs
    if hs is None or hs.p != 1:
        raise ValidationError("the Clifford grading needs h^{2,0} = 1", "h20_rank")
    return cl.to_diagonal_coords(hs.h20.basis[0])


def _orthogonal_h11(cl: CliffordAlgebra, eta):
    """Real basis of H^{1,1} (diagonal coordinates), orthogonal for G′."""
    D = cl.generator_gram
    f = cl.field
    etas = Subspace([eta, [conj(x) for x in eta]], cl.n, f)
    h11 = orth_complement(etas, D, conjugating=True)
    basis = [list(v) for v in h11.real_basis()]
    ortho = []
    for v in basis:
        for u in ortho:
            c = bilinear(v, D, u) / bilinear(u, D, u)
            v = [a - c * b for a, b in zip(v, u)]
        ortho.append(v)
    return ortho


def _products(cl, vectors):
    """Clifford products f_S = f_{s1}···f_{sk} over all subsets S."""
    elems = [cl.from_diagonal_coords(v) for v in vectors]
    out = []
    for k in range(len(elems) + 1):
        for c in combinations(range(len(elems)), k):
            x = cl._alg.unit
            for idx in c:
                x = cl._alg.mul(x, elems[idx])
            out.append(x)
    return out


def grading_pieces(cl: CliffordAlgebra):
    """Spanning sets of the (2,0), (1,1) and (0,2) parts of C(H_C)."""
    eta = _eta_diag(cl)
    etab = [conj(x) for x in eta]
    mul = cl._alg.mul
    E = cl.from_diagonal_coords(eta)
    Eb = cl.from_diagonal_coords(etab)
    hS = _products(cl, _orthogonal_h11(cl, eta))
    half = Fraction(1, 2)
    wedge_ee = tuple(half * (a - b) for a, b in zip(mul(E, Eb), mul(Eb, E)))
    p20 = [mul(E, h) for h in hS]
    p02 = [mul(Eb, h) for h in hS]
    p11 = list(hS) + [mul(wedge_ee, h) for h in hS]
    return p20, p11, p02


def induced_weight2(cl: CliffordAlgebra) -> WeightTwoHS:
    """Weight-2 structure on C(H) polarized by the Clifford form."""
    p20, _, _ = grading_pieces(cl)
    return WeightTwoHS(cl.form_gram, p20, cl.field)


def grading_report(cl: CliffordAlgebra) -> Report:
    """Compare the orthogonal-complement H^{1,1} with the wedge description."""
    rep = Report("clifford_grading")
    p20, p11, p02 = grading_pieces(cl)
    hs = cl.hodge
    f = cl.field
    s11 = Subspace(p11, cl.dim, f)
    rep.info["hodge_numbers"] = hs.hodge_numbers()
    rep.add("h11_matches_wedge_description", s11 == hs.h11, f"dim {s11.dim}")
    rep.add("h02_matches_wedge_description", Subspace(p02, cl.dim, f) == hs.h02, "conj(η)·h_S")
    eta = cl.from_diagonal_coords(_eta_diag(cl))
    shift = True
    for src, dst in (("02", "11"), ("11", "20")):
        img = Subspace([cl.mul(eta, v) for v in hs.piece(src).basis], cl.dim, f)
        shift = shift and hs.piece(dst).contains_space(img)
    shift = shift and all(
        all(f.is_zero(x) for x in cl.mul(eta, v)) for v in hs.h20.basis
    )
    rep.add("eta_shifts_type", shift, "η·H^{p,q} ⊆ H^{p+1,q-1}")
    keep = True
    for v in _orthogonal_h11(cl, _eta_diag(cl)):
        h = cl.from_diagonal_coords(v)
        for name in ("20", "11", "02"):
            piece = hs.piece(name)
            img = Subspace([cl.mul(h, b) for b in piece.basis], cl.dim, f)
            keep = keep and piece.contains_space(img)
    rep.add("h11_preserves_types", keep, "h·H^{p,q} ⊆ H^{p,q} for real h in H^{1,1}")
    return rep


# --- Kuga–Satake complex structure -----------------------------------------------


@dataclass
class KSResult:
    e: tuple | None
    W: Subspace
    w1: WeightOneHS | None
    report: Report
    float_e: np.ndarray | None = None


def compute_w(cl: CliffordAlgebra) -> Subspace:
    eta = cl.from_diagonal_coords(_eta_diag(cl))
    return product_span(Subspace([eta], cl.dim, cl.field), Subspace.full(cl.dim, cl.field), cl.mul)


def _left_matrix(cl, x):
    return transpose([list(cl.mul(x, cl.base.basis_vector(j))) for j in range(cl.dim)])


def ks_structure(cl: CliffordAlgebra, use_float=True, tol=1e-9) -> KSResult:
    """e with e² = −1 whose i-eigenspace is W = η·C(H_C), exactly and in floats."""
    rep = Report("ks_structure")
    f = cl.field
    eta = _eta_diag(cl)
    D = cl.generator_gram
    W = compute_w(cl)
    rep.info["dim_W"] = W.dim
    norm = sesquilinear(eta, D, eta)
    rep.info["<eta,conj eta>"] = real_part(norm) if f.exact else norm
    e = None
    w1 = None
    scale = None
    if f.exact:
        dd = next((x.d for x in eta if hasattr(x, "d")), 1)
        scale = sqrt_exact(2 / real_part(norm), dd)
    if f.exact and scale is None:
        rep.add("exact_normalization", False, "√(2/<η,η̄>) is not in the configured field")
        if not use_float:
            raise ValidationError("η cannot be normalized exactly and float is disabled", "normalization")
    elif f.exact:
        iu = imaginary_unit(f, eta)
        eta_n = [scale * x for x in eta]
        E = cl.from_diagonal_coords(eta_n)
        Eb = cl.from_diagonal_coords([conj(x) for x in eta_n])
        prod = cl.mul(E, Eb)
        two_plus = tuple(x + (2 if k == 0 else 0) for k, x in enumerate(prod))
        e_c = tuple(-iu * x / 2 for x in two_plus)
        real = all(not getattr(x, "im", 0) for x in e_c)
        rep.add("e_real", real, "−i(2+ηη̄)/2 has real coordinates")
        e = tuple(real_part(x) for x in e_c)
        sq = cl.mul(e, e)
        rep.add("e_squared_minus_one", sq == tuple(-u for u in cl.base.unit), "e·e = −1")
        L = _left_matrix(cl, e)
        rows = [[L[r][c] - (iu if r == c else 0) for c in range(cl.dim)] for r in range(cl.dim)]
        eig = solve_rank(rows, None, f).kernel
        rep.add("eigenspace_equals_W", eig == W, f"dim ker(L_e − i) = {eig.dim}, dim W = {W.dim}")
        rep.info["e"] = cl.format_element(e)
        if all(isinstance(x, (int, Fraction)) or getattr(x, "b", 1) == 0 for x in e):
            # ω(x, y) = <x, y·a> with a = −e, a positive multiple of the a⁺ term
            er = tuple(-Fraction(getattr(x, "a", x)) for x in e)
            omega = [[cl.clifford_form(cl.base.basis_vector(r), cl.mul(cl.base.basis_vector(c), er))
                      for c in range(cl.dim)] for r in range(cl.dim)]
            w1 = WeightOneHS(omega, W, f)
    fe = None
    if use_float:
        fe = _float_ks(cl, eta, W, tol, rep)
    return KSResult(e, W, w1, rep, fe)


def _float_ks(cl, eta, W, tol, rep):
    D = np.array([[float(x) for x in row] for row in cl.generator_gram])
    z = np.array([complex(x) for x in eta])
    re, im = z.real, z.imag
    e1 = re / np.sqrt(re @ D @ re)
    im = im - (im @ D @ e1) * e1
    e2 = im / np.sqrt(im @ D @ im)
    g1 = _float_elem(cl, e1)
    g2 = _float_elem(cl, e2)
    L1 = _float_left(cl, g1)
    L2 = _float_left(cl, g2)
    Le = L2 @ L1  # left multiplication by e = e₂e₁
    sq = Le @ Le + np.eye(cl.dim)
    rep.add("float_e_squared", np.max(np.abs(sq)) < tol, f"max |L_e² + 1| = {np.max(np.abs(sq)):.2e}")
    eig = scipy.linalg.null_space(Le - 1j * np.eye(cl.dim), rcond=1e-10)
    Wf = np.array([[complex(x) for x in v] for v in W.basis]).T
    if eig.shape[1] != Wf.shape[1]:
        rep.add("float_eigenspace_angle", False, f"dims {eig.shape[1]} vs {Wf.shape[1]}")
        return Le
    ang = float(np.max(scipy.linalg.subspace_angles(eig, Wf)))
    rep.add("float_eigenspace_angle", ang < tol, f"max principal angle {ang:.2e}")
    return Le


def _float_elem(cl, coords):
    v = np.zeros(cl.dim)
    for i, c in enumerate(coords):
        v[cl.index[1 << i]] = c
    return v


def _float_left(cl, v):
    out = np.zeros((cl.dim, cl.dim))
    for i, xi in enumerate(v):
        if xi == 0:
            continue
        for j in range(cl.dim):
            for k, c in cl.base.table[i][j]:
                out[k, j] += xi * float(c)
    return out

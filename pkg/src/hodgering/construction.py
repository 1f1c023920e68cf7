"""Weight-1 structures on a Hodge algebra: W = H^{2,0}·H_C, the splitting
H_C = (W ⊕ W̄) ⊕ M, polarizations ω_a(x, y) = <x, y·a>, the general-center
construction on the M-blocks, and the morphisms e_β(h) = h(β).
"""
from __future__ import annotations

import random
from dataclasses import dataclass, field
from fractions import Fraction
from math import isqrt

import numpy as np
import scipy.linalg

from . import poly
from .algebra import HodgeAlgebra, center
from .errors import CertificateFailure, UnsupportedCenter, ValidationError
from .hodge import WeightOneHS, _fmt, _fmt_list, _inverse, validate_weight1
from .linalg import (
    Subspace,
    hermitian_definiteness,
    matvec,
    orth_complement,
    product_span,
    rank,
    sesquilinear,
    solve_rank,
    transpose,
)
from .report import Report
from .scalars import FloatField, RealQuad, conj, imag_part, imaginary_unit, real_part, sqrt_exact

ATTEMPTS = 32
PRECISIONS = (3, 6, 12, 24, 48)

__all__ = [
    "Decomposition",
    "ConstructionResult",
    "SigmaBlock",
    "compute_W",
    "decompose",
    "build_weight1",
    "polarization_search",
    "verify_uniqueness",
    "general_construct",
    "construct",
    "e_beta_maps",
    "omega_matrix",
    "certify_polarization",
]


@dataclass
class Decomposition:
    W: Subspace
    Wbar: Subspace
    M: Subspace
    report: Report

    @property
    def dims(self):
        return self.W.dim, self.Wbar.dim, self.M.dim


@dataclass
class SigmaBlock:
    """One real embedding σ of K⁺ and its block H_σ = e_σ·H."""

    root: object
    idempotent: tuple
    block: object
    in_M: bool
    mode: str = "exact"
    m: tuple | None = None
    h10: list = field(default_factory=list)


@dataclass
class ConstructionResult:
    w1: WeightOneHS
    a: tuple
    decomposition: Decomposition
    report: Report
    sigma_data: list = field(default_factory=list)
    float_certificate: bool = False

    @property
    def g(self):
        return self.w1.h10.dim


def _zero_vec(v, f):
    return all(f.is_zero(x) for x in v)


def _full(alg):
    return Subspace.full(alg.dim, alg.field)


def compute_W(alg: HodgeAlgebra) -> Subspace:
    """W = span{η·b : η ∈ H^{2,0} basis, b ∈ algebra basis}."""
    if alg.hs.p == 0:
        raise ValidationError("H^{2,0} = 0, so W is not defined", "h20_nonzero")
    return product_span(alg.hs.h20, _full(alg), alg.mul)


def decompose(alg: HodgeAlgebra, strict: bool = True) -> Decomposition:
    """Certify H_C = (W ⊕ W̄) ⊕ M; with ``strict`` a failed check raises."""
    hs = alg.hs
    f = hs.field
    n = alg.dim
    rep = Report("decompose")
    full = _full(alg)
    W = compute_W(alg)
    Wb = W.conj()
    S = W + Wb
    rep.info["dim_W"] = W.dim
    rep.add("h20_in_W", W.contains_space(hs.h20), f"dim H20 = {hs.p}, dim W = {W.dim}")
    inter = W.intersect(Wb)
    rep.add("W_cap_Wbar_zero", inter.dim == 0, f"dim(W ∩ W̄) = {inter.dim}")
    rep.add("W_right_ideal", W.contains_space(product_span(W, full, alg.mul)), "W·H ⊆ W")
    left = product_span(full, S, alg.mul)
    right = product_span(S, full, alg.mul)
    rep.add(
        "two_sided_ideal",
        S.contains_space(left) and S.contains_space(right),
        f"H·S and S·H in S, dim S = {S.dim}",
    )
    M = orth_complement(S, hs.gram, conjugating=True)
    rep.info["dim_M"] = M.dim
    rep.add("dimension_count", 2 * W.dim + M.dim == n, f"{W.dim} + {Wb.dim} + {M.dim} = {n}")
    cross1 = product_span(S, M, alg.mul)
    cross2 = product_span(M, S, alg.mul)
    rep.add("cross_products_vanish", cross1.dim == 0 and cross2.dim == 0, "S·M = M·S = 0")
    pieces = [S.intersect(hs.piece(k)) for k in ("20", "11", "02")]
    stable = (pieces[0] + pieces[1] + pieces[2]) == S
    rep.add("hodge_stable", stable, "S = ⊕ (S ∩ H^{p,q}), dims " + str([p.dim for p in pieces]))
    T = alg.involution
    timg = Subspace([matvec(T, v) for v in S.basis], n, f)
    rep.add("t_stable", S.contains_space(timg), "t(S) ⊆ S")
    rep.add("M_in_H11", hs.h11.contains_space(M), f"dim M = {M.dim}")
    rep.add("M_conj_stable", M.is_conj_stable(), "conj(M) = M")
    h02_span = product_span(hs.h02, full, alg.mul)
    rep.add("Wbar_is_H02_span", h02_span == Wb, "W̄ = H^{0,2}·H_C")
    dec = Decomposition(W, Wb, M, rep)
    if strict and not rep.ok:
        bad = rep.failed()[0]
        raise CertificateFailure(f"decomposition certificate failed: {bad.name} [{bad.witness}]", bad.name)
    return dec


# --- polarization -------------------------------------------------------------------


def omega_matrix(alg: HodgeAlgebra, a):
    """Matrix of ω_a(x, y) = <x, y·a> in the algebra basis."""
    n = alg.dim
    cols = [alg.mul(alg.basis_vector(j), a) for j in range(n)]
    G = alg.gram
    return [[sum(G[i][k] * cols[j][k] for k in range(n) if cols[j][k]) for j in range(n)] for i in range(n)]


def _t_eigenspaces(alg, space):
    f = alg.hs.field
    n = alg.dim
    T = alg.involution
    out = []
    for s in (1, -1):
        rows = [[T[i][j] - (s if i == j else 0) for j in range(n)] for i in range(n)]
        ker = solve_rank(rows, None, f).kernel
        out.append(space.intersect(ker))
    return out


def _commutator_term(alg, eta, sign, iu):
    """±i(ηη̄ − η̄η), real with t(·) = −(·) when t(η) = ±η."""
    etab = tuple(conj(x) for x in eta)
    d = [p - q for p, q in zip(alg.mul(eta, etab), alg.mul(etab, eta))]
    return tuple(real_part(sign * iu * x) for x in d)


def _rational_sqrt_approx(d, k):
    scale = 10 ** k
    return Fraction(isqrt(d * scale * scale), scale)


def _rationalize(alg, a, k):
    """Replace √d by a k-digit convergent, then project onto t(a) = −a."""
    out = []
    for x in a:
        if isinstance(x, RealQuad):
            x = x.a + x.b * _rational_sqrt_approx(x.d, k) if x.b else x.a
        elif not isinstance(x, (int, Fraction)):
            x = real_part(x)
            if isinstance(x, RealQuad):
                x = x.a + x.b * _rational_sqrt_approx(x.d, k) if x.b else x.a
        out.append(Fraction(x))
    ta = matvec(alg.involution, out)
    return tuple((p - q) / 2 for p, q in zip(out, ta))


def _needs_rounding(a):
    return any(isinstance(x, RealQuad) and x.b for x in a)


def certify_polarization(alg: HodgeAlgebra, W: Subspace, a, omega=None) -> Report:
    """Exact checks that ω_a polarizes the weight-1 structure with h10 = W."""
    rep = Report("polarization")
    f = alg.hs.field
    rational = all(isinstance(x, (int, Fraction)) for x in a)
    rep.add("a_rational", rational, "all coordinates in Q")
    ta = alg.involute(a)
    rep.add("t_a_minus_a", all(p == -q for p, q in zip(ta, a)), "t(a) = −a")
    om = omega if omega is not None else omega_matrix(alg, a)
    iso = all(f.is_zero(sum(u[i] * om[i][j] * v[j] for i in range(alg.dim) if u[i] for j in range(alg.dim) if v[j]))
              for u in W.basis for v in W.basis)
    rep.add("W_isotropic", iso, "ω_a(w, w′) = 0 on a basis of W")
    hmat = _positivity_matrix(om, W.basis, f)
    try:
        cert = hermitian_definiteness(hmat, True, f)
    except ValidationError as exc:
        # ω_a is not skew, so h_a is not Hermitian
        rep.add("h_a_positive_on_W", False, str(exc))
        return rep
    rep.add("h_a_positive_on_W", cert.positive, f"pivots {_fmt_list(cert.pivots)}")
    return rep


def _positivity_matrix(om, basis, f):
    iu = imaginary_unit(f, (x for v in basis for x in v))
    return [[iu * sesquilinear(u, om, v) for v in basis] for u in basis]


def _term_semidefinite(alg, dec, terms) -> Report:
    """Each single term h_{a_j} is positive semidefinite on H20 and on H20·H02."""
    rep = Report("per_term")
    hs = alg.hs
    f = hs.field
    pieces = {"H20": hs.h20, "H20.H02": product_span(hs.h20, hs.h02, alg.mul)}
    for label, term in terms:
        om = omega_matrix(alg, term)
        for pname, piece in pieces.items():
            if piece.dim == 0:
                continue
            cert = hermitian_definiteness(_positivity_matrix(om, piece.basis, f), True, f)
            ok = cert.signature()[1] == 0
            rep.add(f"{label}_psd_on_{pname}", ok, f"pivots {_fmt_list(cert.pivots)}")
    return rep


@dataclass
class Polarization:
    a: tuple
    report: Report
    attempt: int
    terms: list
    raw: tuple


def _w_terms(alg, dec, rng, attempt):
    hs = alg.hs
    f = hs.field
    iu = imaginary_unit(f, (x for v in hs.h20.basis for x in v))
    plus, minus = _t_eigenspaces(alg, hs.h20)
    if plus.dim + minus.dim != hs.p:
        raise CertificateFailure("H^{2,0} does not split into t-eigenvectors", "t_eigenbasis")
    terms = []
    for sign, space, tag in ((1, plus, "a+"), (-1, minus, "a-")):
        for k, eta in enumerate(space.basis):
            terms.append((f"{tag}[{k}]", _commutator_term(alg, eta, sign, iu)))
        if attempt and space.dim > 1:
            coeffs = [Fraction(rng.randint(1, 99), rng.randint(1, 99)) for _ in space.basis]
            eta = tuple(sum(c * v[i] for c, v in zip(coeffs, space.basis)) for i in range(alg.dim))
            terms.append((f"{tag}[mix]", _commutator_term(alg, eta, sign, iu)))
    return terms


def _combine(terms, coeffs, n):
    out = [0] * n
    for (_, t), c in zip(terms, coeffs):
        for i, x in enumerate(t):
            if x:
                out[i] = out[i] + c * x
    return tuple(Fraction(x) if type(x) is int else x for x in out)


def polarization_search(
    alg: HodgeAlgebra,
    dec: Decomposition,
    seed: int = 0,
    attempts: int = ATTEMPTS,
    extra_terms=None,
    certify=None,
) -> Polarization:
    """Find rational a = Σ c_j a_j^± with t(a) = −a polarizing W.

    Attempt 0 tries the leading term alone, attempt 1 unit coefficients on
    every term; later attempts draw positive rationals with numerators and
    denominators ≤ 99 from ``seed``.
    """
    rng = random.Random(seed)
    certify = certify or (lambda a: certify_polarization(alg, dec.W, a))
    last = None
    for attempt in range(attempts):
        terms = _w_terms(alg, dec, rng, attempt)
        n_w = len(terms)
        if extra_terms is not None:
            terms = terms + extra_terms(rng, attempt)
        if attempt == 0:
            # the leading t-eigen term alone, plus any block terms
            coeffs = [Fraction(int(j == 0 or j >= n_w)) for j in range(len(terms))]
        elif attempt == 1:
            coeffs = [Fraction(1)] * len(terms)
        else:
            coeffs = [Fraction(rng.randint(1, 99), rng.randint(1, 99)) for _ in terms]
        raw = _combine(terms, coeffs, alg.dim)
        precisions = PRECISIONS if _needs_rounding(raw) else (0,)
        for k in precisions:
            a = _rationalize(alg, raw, k)
            if all(x == 0 for x in a):
                continue
            rep = certify(a)
            rep.info["attempt"] = attempt
            rep.info["seed"] = seed
            if k:
                rep.info["sqrt_digits"] = k
            if rep.ok:
                return Polarization(a, rep, attempt, terms, raw)
            last = rep
    failed = ", ".join(c.name for c in last.failed()) if last else "no candidate"
    raise CertificateFailure(f"no polarizing a after {attempts} attempts ({failed})", "polarization")


def _morphism_report(alg, W, Wb) -> Report:
    rep = Report("left_multiplication_morphism")
    hs = alg.hs
    f = hs.field
    kills = all(_zero_vec(alg.mul(eta, w), f) for eta in hs.h20.basis for w in W.basis)
    rep.add("H20_kills_W", kills, "η·w = 0")
    into = W.contains_space(product_span(hs.h20, Wb, alg.mul))
    rep.add("H20_maps_Wbar_into_W", into, "η·W̄ ⊆ W")
    h11 = hs.h11
    rep.add("H11_preserves_W", W.contains_space(product_span(h11, W, alg.mul)), "H11·W ⊆ W")
    rep.add("H11_preserves_Wbar", Wb.contains_space(product_span(h11, Wb, alg.mul)), "H11·W̄ ⊆ W̄")
    return rep


def _condition_three(alg, rep):
    cr = center(alg, split=False)
    kp = cr.t_invariant
    rep.info["dim_center"] = cr.center.dim
    rep.info["dim_center_t_invariant"] = kp.dim
    rep.add("t_invariant_center_is_Q", kp.dim == 1 and kp.contains(alg.unit), f"dim K⁺ = {kp.dim}")


def _right_multiplication_note(alg, h10, rep):
    """Report-only: how many basis elements b give h10·b ⊆ h10."""
    stable = [
        alg.names[j]
        for j, b in enumerate(alg.basis())
        if h10.contains_space(Subspace([alg.mul(w, b) for w in h10.basis], alg.dim, h10.field))
    ]
    rep.info["right_mult_preserving_h10"] = f"{len(stable)} of {alg.dim} basis elements"


def build_weight1(alg: HodgeAlgebra, dec: Decomposition, seed: int = 0) -> ConstructionResult:
    """Weight-1 structure with h10 = W and its polarization (requires M = 0)."""
    if dec.M.dim:
        raise ValidationError(
            f"M has dimension {dec.M.dim}; use general_construct for a nontrivial center", "M_zero"
        )
    rep = Report("build_weight1")
    rep.info["seed"] = seed
    rep.merge(dec.report, "decompose")
    pol = polarization_search(alg, dec, seed)
    rep.merge(pol.report, "polarization")
    rep.merge(_term_semidefinite(alg, dec, pol.terms), "per_term")
    rep.merge(_morphism_report(alg, dec.W, dec.Wbar), "morphism")
    om = omega_matrix(alg, pol.a)
    w1 = WeightOneHS(om, dec.W, alg.hs.field)
    rep.merge(validate_weight1(w1), "weight1")
    _condition_three(alg, rep)
    rep.info["g"] = w1.h10.dim
    _right_multiplication_note(alg, w1.h10, rep)
    rep.info["a"] = _fmt_element(alg, pol.a)
    return ConstructionResult(w1, pol.a, dec, rep)


def _fmt_element(alg, x):
    names = alg.names
    terms = [f"{_fmt(c)}*{names[i]}" for i, c in enumerate(x) if c]
    return " + ".join(terms) if terms else "0"


# --- uniqueness ---------------------------------------------------------------------


def verify_uniqueness(alg: HodgeAlgebra, result: ConstructionResult, challenger: Subspace):
    """Return ``("equal" | "not-a-valid-challenger", report)`` for a rival h10."""
    rep = Report("verify_uniqueness")
    hs = alg.hs
    f = hs.field
    W = result.decomposition.W
    n = alg.dim
    cb = challenger.conj()
    direct = (challenger + cb).dim == n and challenger.intersect(cb).dim == 0
    rep.add("direct_sum", direct, f"dim W′ = {challenger.dim}, dim(W′ + conj W′) = {(challenger + cb).dim}")
    kills = all(_zero_vec(alg.mul(eta, w), f) for eta in hs.h20.basis for w in challenger.basis)
    into = challenger.contains_space(product_span(hs.h20, cb, alg.mul))
    rep.add("morphism_property", kills and into, "η·W′ = 0 and η·conj(W′) ⊆ W′")
    contain = challenger.contains_space(W)
    rep.add("contains_H20_HC", contain, "H^{2,0}·H_C ⊆ W′")
    same_dim = challenger.dim == W.dim
    rep.add("dimension", same_dim, f"dim W′ = {challenger.dim}, dim W = {W.dim}")
    equal = direct and contain and same_dim and challenger == W
    verdict = "equal" if equal else "not-a-valid-challenger"
    rep.info["verdict"] = verdict
    return verdict, rep


# --- general center -----------------------------------------------------------------


def _squarefree_split(n: int):
    """n = s²·d with d squarefree; returns (s, d)."""
    s, d = 1, 1
    m = abs(n)
    k = 2
    while k * k <= m:
        while m % (k * k) == 0:
            m //= k * k
            s *= k
        k += 1
    d = m
    return s, d


def _exact_roots(minpoly):
    """Real roots of a degree ≤ 2 polynomial inside some Q(√d), else None."""
    p = poly.monic(minpoly)
    deg = poly.degree(p)
    if deg == 1:
        return [-p[0]]
    if deg != 2:
        return None
    c, b = p[0], p[1]
    disc = b * b - 4 * c
    if disc <= 0:
        return None
    num = disc.numerator * disc.denominator
    s, d = _squarefree_split(num)
    root = Fraction(s, disc.denominator)
    if d == 1:
        return [(-b + root) / 2, (-b - root) / 2]
    return [RealQuad(-b / 2, root / 2, d), RealQuad(-b / 2, -root / 2, d)]


def _poly_element(alg, coeffs, x):
    acc = tuple(0 * u for u in alg.unit)
    for c in reversed(coeffs):
        acc = alg.mul(acc, x)
        acc = tuple(a + c * u for a, u in zip(acc, alg.unit))
    return acc


def _embedding_idempotents(alg, x, roots):
    """Lagrange idempotents e_σ = Π_{τ≠σ} (x − r_τ)/(r_σ − r_τ)."""
    out = []
    for s, rs in enumerate(roots):
        e = alg.unit
        for t, rt in enumerate(roots):
            if t == s:
                continue
            fac = tuple((xi - rt * ui) / (rs - rt) for xi, ui in zip(x, alg.unit))
            e = alg.mul(e, fac)
        out.append(e)
    return out


def _single_kplus(alg, seed):
    cr = center(alg, split=True, seed=seed)
    if len(cr.components) != 1:
        raise UnsupportedCenter(
            f"t-invariant center splits into {len(cr.components)} fields; only a single field is supported"
        )
    comp = cr.components[0]
    if not comp.totally_real:
        raise CertificateFailure("t-invariant center is not totally real", "kplus_totally_real")
    return cr, comp


def general_construct(
    alg: HodgeAlgebra, dec: Decomposition, seed: int = 0, tol: float = 1e-9, force_float: bool = False
) -> ConstructionResult:
    """Polarized weight-1 structure when M ≠ 0, via the embeddings of K⁺."""
    if dec.M.dim == 0:
        return build_weight1(alg, dec, seed)
    f = alg.hs.field
    rep = Report("general_construct")
    rep.info["seed"] = seed
    rep.merge(dec.report, "decompose")
    cr, comp = _single_kplus(alg, seed)
    rep.info["dim_center"] = cr.center.dim
    rep.info["dim_center_t_invariant"] = cr.t_invariant.dim
    rep.info["kplus_minpoly"] = poly.to_string(comp.minimal_polynomial)
    rep.merge(cr.report, "center")
    S = dec.W + dec.Wbar
    n = alg.dim

    roots = None if force_float else _exact_roots(comp.minimal_polynomial)
    # an odd central element z, so that K = K⁺ ⊕ K⁺z when K ≠ K⁺
    T = alg.involution
    rows = [[T[i][j] + (1 if i == j else 0) for j in range(n)] for i in range(n)]
    kminus = cr.center.intersect(solve_rank(rows).kernel)
    rep.info["dim_center_t_odd"] = kminus.dim

    if roots is not None and kminus.dim:
        blocks = _exact_blocks(alg, comp.primitive_element, roots, dec, S, rep)
        exact_ok = _exact_sigma_elements(alg, blocks, kminus, rep)
        if exact_ok:
            return _finish_exact(alg, dec, blocks, rep, seed)
        rep.info["fallback"] = "√(−λ_σ) outside the field; float path"
    return _float_general(alg, dec, comp, kminus, rep, seed, tol)


def _exact_blocks(alg, x, roots, dec, S, rep):
    f = alg.hs.field
    ids = _embedding_idempotents(alg, x, roots)
    total = tuple(sum(col) for col in zip(*ids))
    rep.add("embedding_idempotents_sum", total == alg.unit, f"{len(ids)} embeddings")
    rep.add(
        "embedding_idempotents_idempotent",
        all(alg.mul(e, e) == e for e in ids),
        "e_σ² = e_σ",
    )
    blocks = []
    mblocks = Subspace.zero(alg.dim, f)
    for r, e in zip(roots, ids):
        block = Subspace([alg.mul(e, b) for b in alg.basis()], alg.dim, f)
        in_m = dec.M.contains_space(block)
        in_s = S.contains_space(block)
        if not (in_m or in_s):
            raise CertificateFailure(f"embedding block for x ↦ {_fmt(r)} straddles M and W ⊕ W̄", "block_split")
        rep.add(f"block[{_fmt(r)}]", True, f"dim {block.dim}, in {'M' if in_m else 'W+Wbar'}")
        blocks.append(SigmaBlock(r, e, block, in_m))
        if in_m:
            mblocks = mblocks + block
    rep.add("M_is_sum_of_blocks", mblocks == dec.M, f"dim {mblocks.dim} vs dim M = {dec.M.dim}")
    return blocks


def _exact_sigma_elements(alg, blocks, kminus, rep):
    """i_σ = e_σ·z/√(−λ_σ) for the M-blocks; False when a root leaves the field."""
    for z in kminus.basis:
        z2 = alg.mul(z, z)
        found = []
        for blk in blocks:
            if not blk.in_M:
                continue
            e = blk.idempotent
            ez2 = alg.mul(e, z2)
            k = next(i for i, v in enumerate(e) if v)
            lam = ez2[k] / e[k]
            if ez2 != tuple(lam * v for v in e):
                break
            dd = lam.d if isinstance(lam, RealQuad) else 1
            if not lam < 0:
                raise CertificateFailure(f"λ_σ = {_fmt(lam)} is not negative", "lambda_negative")
            root = sqrt_exact(-lam, dd)
            if root is None:
                break
            m = tuple(v / root for v in alg.mul(e, z))
            found.append((blk, m, lam))
        else:
            for blk, m, lam in found:
                blk.m = m
                rep.info[f"lambda[{_fmt(blk.root)}]"] = _fmt(lam)
            return True
    return False


def _block_h10(alg, blk, f):
    iu = imaginary_unit(f, (x for x in blk.m))
    # −i eigenvectors of right multiplication by m_σ: x + i·x·m_σ
    vecs = []
    for x in blk.block.real_basis():
        xm = alg.mul(x, blk.m)
        vecs.append(tuple(a + iu * b for a, b in zip(x, xm)))
    return vecs


def _finish_exact(alg, dec, blocks, rep, seed):
    f = alg.hs.field
    mblocks = [b for b in blocks if b.in_M]
    for blk in mblocks:
        m = blk.m
        tag = _fmt(blk.root)
        e = blk.idempotent
        rep.add(f"m_squared[{tag}]", alg.mul(m, m) == tuple(-v for v in e), "m_σ² = −e_σ")
        rep.add(f"t_m[{tag}]", alg.involute(m) == tuple(-v for v in m), "t(m_σ) = −m_σ")
        central = all(alg.mul(m, b) == alg.mul(b, m) for b in alg.basis())
        rep.add(f"m_central[{tag}]", central, "m_σ·b = b·m_σ")
        blk.h10 = _block_h10(alg, blk, f)

    def extra(rng, attempt):
        terms = []
        for blk in mblocks:
            terms.append((f"i[{_fmt(blk.root)}]", blk.m))
        return terms

    h10_vecs = list(dec.W.basis) + [v for b in mblocks for v in b.h10]
    h10 = Subspace(h10_vecs, alg.dim, f)

    def certify(a):
        crt = certify_polarization(alg, dec.W, a)
        om = omega_matrix(alg, a)
        for blk in mblocks:
            _block_certificates(alg, blk, a, om, crt, f)
        crt.merge(validate_weight1(WeightOneHS(om, h10, f)), "weight1")
        return crt

    pol = polarization_search(alg, dec, seed, extra_terms=extra, certify=certify)
    rep.merge(pol.report, "polarization")
    om = omega_matrix(alg, pol.a)
    w1 = WeightOneHS(om, h10, f)
    rep.info["g"] = h10.dim
    _right_multiplication_note(alg, h10, rep)
    rep.info["a"] = _fmt_element(alg, pol.a)
    return ConstructionResult(w1, pol.a, dec, rep, blocks)


def _omega_at(om, x, y):
    n = len(om)
    return sum(x[i] * om[i][j] * y[j] for i in range(n) if x[i] for j in range(n) if y[j])


def _block_certificates(alg, blk, a, om, rep, f):
    tag = _fmt(blk.root)
    m, e = blk.m, blk.idempotent
    tm = alg.involute(m)
    lhs = alg.mul(alg.mul(m, a), tm)
    rep.add(f"relation[{tag}]", lhs == alg.mul(e, a), "m_σ·a·t(m_σ) = e_σ·a")
    xs = blk.block.real_basis()
    xms = [alg.mul(x, m) for x in xs]
    inv = all(
        _omega_at(om, xm, ym) == _omega_at(om, x, y)
        for x, xm in zip(xs, xms)
        for y, ym in zip(xs, xms)
    )
    rep.add(f"omega_I_invariant[{tag}]", inv, "ω_a(x·m, y·m) = ω_a(x, y)")
    smat = [[_omega_at(om, x, ym) for ym in xms] for x in xs]
    cert = hermitian_definiteness(smat, False, f)
    rep.add(f"block_positive[{tag}]", cert.positive, f"ω_a(x, x·m_σ) pivots {_fmt_list(cert.pivots)}")
    comm = all(
        alg.mul(b, alg.mul(x, m)) == alg.mul(alg.mul(b, x), m) for b in alg.basis()[:4] for x in xs[:4]
    )
    rep.add(f"I_commutes_with_left[{tag}]", comm, "b·(x·m_σ) = (b·x)·m_σ")


# --- float fallback -----------------------------------------------------------------


def _to_float(M):
    return np.array([[complex(x) for x in row] for row in M])


def _float_general(alg, dec, comp, kminus, rep, seed, tol):
    """Embeddings by float root finding; m_σ = A(−A²)^{−1/2} for A = R_a on H_σ."""
    n = alg.dim
    mp = comp.minimal_polynomial
    roots = np.roots([float(c) for c in reversed(mp)])
    if np.max(np.abs(roots.imag)) > tol:
        raise CertificateFailure("K⁺ has a non-real embedding", "kplus_totally_real")
    roots = np.sort(roots.real)
    sep = np.min(np.diff(roots)) if len(roots) > 1 else np.inf
    rep.add("root_separation", sep > 100 * tol, f"min gap {sep:.3g}")
    x = comp.primitive_element
    Lx = np.array([[float(v) for v in row] for row in alg.left_matrix(x)])
    eye = np.eye(n)
    Mf = np.array([[complex(v) for v in vec] for vec in dec.M.basis]).T
    blocks = []
    for r in roots:
        P = eye.copy()
        for s in roots:
            if s != r:
                P = P @ (Lx - s * eye) / (r - s)
        basis = scipy.linalg.orth(P)
        if Mf.shape[1]:
            resid = basis - Mf @ np.linalg.lstsq(Mf, basis, rcond=None)[0]
            in_m = np.max(np.abs(resid)) < 1e3 * tol
        else:
            in_m = False
        rep.add(f"float_block[{r:.6g}]", True, f"dim {basis.shape[1]}, in {'M' if in_m else 'W+Wbar'}")
        blocks.append(SigmaBlock(float(r), None, basis, in_m, mode="float"))
    mb = [b for b in blocks if b.in_M]
    rep.add("M_is_sum_of_blocks", sum(b.block.shape[1] for b in mb) == dec.M.dim, f"dim M = {dec.M.dim}")
    T = np.array([[float(v) for v in row] for row in alg.involution])
    G = np.array([[float(v) for v in row] for row in alg.gram])
    odd = list(kminus.basis)

    def extra(rng, attempt):
        terms = []
        for bi, blk in enumerate(mb):
            if odd and attempt == 0:
                v = odd[0]
            else:
                b = [Fraction(rng.randint(-9, 9)) for _ in range(n)]
                v = tuple(p - q for p, q in zip(b, alg.involute(tuple(b))))
            Pb = blk.block @ np.linalg.pinv(blk.block)
            terms.append((f"m[{bi}]", tuple(Fraction(round(float(c) * 10**12), 10**12)
                                            for c in (Pb @ np.array([float(c) for c in v])).real)))
        return terms

    state = {}

    def certify(a):
        crt = certify_polarization(alg, dec.W, a)
        om = omega_matrix(alg, a)
        omf = np.array([[float(v) for v in row] for row in om])
        Ra = np.array([[float(v) for v in row] for row in alg.right_matrix(a)])
        h10 = [np.array([complex(v) for v in w]) for w in dec.W.basis]
        for bi, blk in enumerate(mb):
            X = blk.block
            A = np.linalg.pinv(X) @ Ra @ X
            neg = -A @ A
            evals = np.linalg.eigvals(neg)
            ok = np.min(evals.real) > tol and np.max(np.abs(evals.imag)) < 1e3 * tol
            crt.add(f"float_a_invertible[{bi}]", ok, f"min eig(−A²) {np.min(evals.real):.3g}")
            if not ok:
                continue
            Msig = A @ np.linalg.inv(scipy.linalg.sqrtm(neg).real)
            err = np.max(np.abs(Msig @ Msig + np.eye(len(A))))
            crt.add(f"float_m_squared[{bi}]", err < 1e3 * tol, f"max |m² + 1| {err:.2e}")
            comm = np.max(np.abs(Msig @ A - A @ Msig))
            crt.add(f"float_relation[{bi}]", comm < 1e3 * tol, f"m commutes with a: {comm:.2e}")
            S = X.T @ omf @ (X @ Msig)
            sym = np.max(np.abs(S - S.T))
            ev = np.linalg.eigvalsh((S + S.T) / 2)
            crt.add(f"float_block_positive[{bi}]", ev.min() > 10 * tol and sym < 1e3 * tol,
                    f"min eigenvalue {ev.min():.3g}, asymmetry {sym:.1e}")
            for j in range(X.shape[1]):
                h10.append(X[:, j] + 1j * (X @ Msig)[:, j])
        if crt.ok:
            state["h10"] = h10
            ff = FloatField(1e-8)
            w1 = WeightOneHS(om, [tuple(complex(c) for c in v) for v in h10], ff)
            crt.merge(validate_weight1(w1), "weight1")
            state["w1"] = w1
        return crt

    pol = polarization_search(alg, dec, seed, extra_terms=extra, certify=certify)
    rep.merge(pol.report, "polarization")
    rep.info["float_certificate"] = True
    rep.info["g"] = state["w1"].h10.dim
    _right_multiplication_note(alg, state["w1"].h10, rep)
    return ConstructionResult(state["w1"], pol.a, dec, rep, blocks, float_certificate=True)


def construct(alg: HodgeAlgebra, seed: int = 0, tol: float = 1e-9) -> ConstructionResult:
    """decompose, then build_weight1 (M = 0) or general_construct."""
    dec = decompose(alg)
    if dec.M.dim == 0:
        return build_weight1(alg, dec, seed)
    return general_construct(alg, dec, seed, tol)


# --- universal property ---------------------------------------------------------------


def _mat_mul(a, b):
    return [[sum(a[i][k] * b[k][j] for k in range(len(b)) if a[i][k]) for j in range(len(b[0]))]
            for i in range(len(a))]


def e_beta_maps(alg: HodgeAlgebra, result: ConstructionResult, B: WeightOneHS, embedding, betas) -> Report:
    """Check that h ↦ embedding(h)(β) are weight-1 morphisms into B."""
    rep = Report("e_beta_maps")
    f = B.field
    n = alg.dim
    N = B.rank
    mats = [embedding(b) for b in alg.basis()]
    ident = [[Fraction(int(i == j)) for j in range(N)] for i in range(N)]
    unit_img = embedding(alg.unit)
    ok = unit_img == ident
    bad = None
    for i in range(n):
        for j in range(n):
            if embedding(alg.mul(alg.basis_vector(i), alg.basis_vector(j))) != _mat_mul(mats[i], mats[j]):
                bad = (i, j)
                break
        if bad:
            break
    if not ok or bad:
        raise ValidationError(f"embedding is not an algebra map (at {bad})", "algebra_map")
    rep.add("algebra_map", True, f"all {n}² basis products")
    oi = _inverse(B.omega)
    span = Subspace([tuple(x for row in m for x in row) for m in mats], N * N)
    for i, m in enumerate(mats):
        adj = _mat_mul(_mat_mul(oi, transpose(m)), B.omega)
        if not span.contains(tuple(x for row in adj for x in row)):
            raise ValidationError(f"image is not closed under the ω-adjoint (basis {i})", "adjoint_closed")
    rep.add("adjoint_closed", True, "Ω⁻¹ φᵀ Ω in the image for every basis φ")
    W = result.w1.h10
    maps = []
    for k, beta in enumerate(betas):
        # column j of e_β is embedding(e_j)·β
        cols = [matvec(m, beta) for m in mats]
        E = transpose(cols)
        maps.append(E)
        img = Subspace([matvec(E, w) for w in W.basis], N, f)
        rep.add(f"e_beta[{k}]_morphism", B.h10.contains_space(img), f"dim e_β(W) = {img.dim}")
    wide = [sum((list(E[r]) for E in maps), []) for r in range(N)]
    tall = [row for E in maps for row in E]
    rw, rt = rank(wide), rank(tall)
    rep.add("sum_surjective", rw == N, f"rank ⊕e_β = {rw} of {N}")
    rep.add("stack_injective", rt == n, f"rank (e_β) = {rt} of {n}")
    return rep

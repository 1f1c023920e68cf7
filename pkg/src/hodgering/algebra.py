"""Finite-dimensional unital associative Q-algebras given by structure constants.

:class:`Algebra` carries the multiplication table, the unit and an optional
involution matrix ``T``.  :class:`HodgeAlgebra` adds a polarized weight-2
Hodge structure on the underlying vector space.  The rest of the module is
the center machinery: commutator kernels, splitting a commutative algebra
into number fields, Sturm-based totally-real tests and trace forms.
"""
from __future__ import annotations

import random
from dataclasses import dataclass
from fractions import Fraction

from . import poly
from .errors import DimensionMismatch, UnsupportedCenter, ValidationError
from .hodge import WeightOneHS, WeightTwoHS, end_gram, end_involution, induced_end_weight2, vec
from .linalg import (
    Subspace,
    bilinear,
    hermitian_definiteness,
    identity,
    matvec,
    product_span,
    solve_rank,
    transpose,
)
from .report import Report
from .scalars import EXACT

MAX_DIM = 64

__all__ = [
    "Algebra",
    "HodgeAlgebra",
    "validate_algebra",
    "bidegree_check",
    "CenterReport",
    "Component",
    "center",
    "split_commutative",
    "minimal_polynomial",
    "totally_real",
    "trace_form_signature",
    "subalgebra_generated",
]


class Algebra:
    """Unital associative algebra on Q^n.

    ``table[i][j]`` lists the non-zero ``(k, c)`` with e_i·e_j = Σ c·e_k.
    """

    def __init__(self, dim, table, unit, involution=None, names=None):
        if dim > MAX_DIM:
            raise DimensionMismatch(f"algebra dimension {dim} exceeds the cap {MAX_DIM}")
        self.dim = dim
        self.table = table
        self.unit = tuple(Fraction(x) for x in unit)
        if len(self.unit) != dim:
            raise DimensionMismatch("unit vector has the wrong length")
        self.involution = (
            [[Fraction(x) for x in row] for row in involution] if involution is not None else None
        )
        if self.involution is not None and (
            len(self.involution) != dim or any(len(r) != dim for r in self.involution)
        ):
            raise DimensionMismatch("involution matrix has the wrong shape")
        self.names = names or [f"b{i}" for i in range(dim)]

    # construction -----------------------------------------------------------------

    @classmethod
    def from_triples(cls, dim, triples, unit, involution=None, names=None):
        """Build from sparse ``(i, j, k, value)`` entries meaning e_i·e_j ∋ value·e_k."""
        acc = [[{} for _ in range(dim)] for _ in range(dim)]
        for i, j, k, v in triples:
            if not (0 <= i < dim and 0 <= j < dim and 0 <= k < dim):
                raise DimensionMismatch(f"structure constant index out of range: {(i, j, k)}")
            v = Fraction(v)
            acc[i][j][k] = acc[i][j].get(k, Fraction(0)) + v
        table = [
            [tuple((k, c) for k, c in sorted(acc[i][j].items()) if c) for j in range(dim)]
            for i in range(dim)
        ]
        return cls(dim, table, unit, involution, names)

    def triples(self):
        return [
            (i, j, k, c)
            for i in range(self.dim)
            for j in range(self.dim)
            for k, c in self.table[i][j]
        ]

    @classmethod
    def matrix_algebra(cls, n):
        """M_n(Q) with basis E_ab at index a·n + b."""
        dim = n * n
        triples = []
        for a in range(n):
            for b in range(n):
                for d in range(n):
                    triples.append((a * n + b, b * n + d, a * n + d, 1))
        unit = [Fraction(int(a == b)) for a in range(n) for b in range(n)]
        names = [f"E{a + 1}{b + 1}" for a in range(n) for b in range(n)]
        return cls.from_triples(dim, triples, unit, names=names)

    @classmethod
    def from_polynomial(cls, coeffs, involution=None):
        """Q[x]/(f) in the power basis 1, x, ..., x^{deg-1}."""
        f = poly.monic(coeffs)
        deg = poly.degree(f)
        triples = []
        for i in range(deg):
            for j in range(deg):
                mono = [Fraction(0)] * (i + j) + [Fraction(1)]
                _, rem = poly.divmod_poly(mono, f)
                for k, c in enumerate(rem):
                    if c:
                        triples.append((i, j, k, c))
        unit = [1] + [0] * (deg - 1)
        names = ["1"] + [f"x^{k}" if k > 1 else "x" for k in range(1, deg)]
        return cls.from_triples(deg, triples, unit, involution, names)

    @classmethod
    def from_matrices(cls, mats, involution_map=None, names=None):
        """Structure constants of the span of square matrices closed under product.

        Returns the algebra; ``involution_map`` (matrix ↦ matrix) is expressed
        in the same basis when given.
        """
        vecs = [vec(m) for m in mats]
        space = Subspace(vecs, len(vecs[0]))
        if space.dim != len(mats):
            raise ValidationError("basis matrices are linearly dependent", "basis")
        cols = transpose([list(v) for v in vecs])

        def coords(m):
            res = solve_rank(cols, [[x] for x in vec(m)])
            return [row[0] for row in res.solution]

        n = len(mats[0])
        dim = len(mats)
        triples = []
        for i in range(dim):
            for j in range(dim):
                prod = _matmul(mats[i], mats[j])
                for k, c in enumerate(coords(prod)):
                    if c:
                        triples.append((i, j, k, c))
        unit = coords([[Fraction(int(a == b)) for b in range(n)] for a in range(n)])
        inv = None
        if involution_map is not None:
            inv = transpose([coords(involution_map(m)) for m in mats])
        return cls.from_triples(dim, triples, unit, inv, names)

    # arithmetic --------------------------------------------------------------------

    def basis_vector(self, i):
        return tuple(Fraction(int(k == i)) for k in range(self.dim))

    def basis(self):
        return [self.basis_vector(i) for i in range(self.dim)]

    def mul(self, x, y):
        n = self.dim
        out = [0] * n
        ys = [(j, yj) for j, yj in enumerate(y) if yj]
        table = self.table
        for i, xi in enumerate(x):
            if not xi:
                continue
            row = table[i]
            for j, yj in ys:
                entries = row[j]
                if entries:
                    c = xi * yj
                    for k, s in entries:
                        out[k] = out[k] + c * s
        return tuple(Fraction(v) if type(v) is int else v for v in out)

    def power(self, x, k):
        out = self.unit
        for _ in range(k):
            out = self.mul(out, x)
        return out

    def involute(self, x):
        if self.involution is None:
            raise ValidationError("algebra has no involution", "involution")
        return matvec(self.involution, x)

    def left_matrix(self, x):
        """Matrix of y ↦ x·y (columns are x·e_j)."""
        return transpose([list(self.mul(x, self.basis_vector(j))) for j in range(self.dim)])

    def right_matrix(self, x):
        return transpose([list(self.mul(self.basis_vector(j), x)) for j in range(self.dim)])

    def is_commutative(self) -> bool:
        return all(
            self.table[i][j] == self.table[j][i] for i in range(self.dim) for j in range(i)
        )

    def trace(self, x):
        """Trace of left multiplication by ``x`` (regular representation)."""
        tr = 0
        for j in range(self.dim):
            tr = tr + self.mul(x, self.basis_vector(j))[j]
        return tr

    def restrict(self, space: Subspace, unit, involution=True):
        """Structure constants of a subalgebra ``space`` with its own unit.

        Returns ``(algebra, basis)`` where ``basis`` lists the vectors of
        ``space`` (in self's coordinates) used as the new basis.
        """
        basis = list(space.basis)
        cols = transpose([list(b) for b in basis])

        def coords(v):
            res = solve_rank(cols, [[x] for x in v])
            return [row[0] for row in res.solution]

        triples = []
        for i, bi in enumerate(basis):
            for j, bj in enumerate(basis):
                for k, c in enumerate(coords(self.mul(bi, bj))):
                    if c:
                        triples.append((i, j, k, c))
        inv = None
        if involution and self.involution is not None:
            inv = transpose([coords(self.involute(b)) for b in basis])
        sub = Algebra.from_triples(len(basis), triples, coords(unit), inv)
        return sub, basis

    def __repr__(self):
        return f"{type(self).__name__}(dim={self.dim})"


def _matmul(a, b):
    n, m, p = len(a), len(b), len(b[0])
    out = [[Fraction(0)] * p for _ in range(n)]
    for i in range(n):
        for k in range(m):
            aik = a[i][k]
            if aik:
                rowb = b[k]
                rowo = out[i]
                for j in range(p):
                    if rowb[j]:
                        rowo[j] += aik * rowb[j]
    return out


class HodgeAlgebra(Algebra):
    """An algebra whose underlying space carries a polarized weight-2 structure."""

    def __init__(self, dim, table, unit, involution, hs: WeightTwoHS, names=None):
        super().__init__(dim, table, unit, involution, names)
        if hs.n != dim:
            raise DimensionMismatch("Hodge structure rank differs from algebra dimension")
        self.hs = hs

    @classmethod
    def from_algebra(cls, alg: Algebra, hs: WeightTwoHS, involution=None):
        inv = involution if involution is not None else alg.involution
        return cls(alg.dim, alg.table, alg.unit, inv, hs, alg.names)

    @property
    def gram(self):
        return self.hs.gram

    @property
    def field(self):
        return self.hs.field

    def form(self, x, y):
        return bilinear(x, self.hs.gram, y)

    @classmethod
    def endomorphisms(cls, w1: WeightOneHS, basis_mats=None, names=None):
        """End(H₁) of a weight-1 structure, or the subalgebra spanned by ``basis_mats``.

        The Hodge structure is the induced weight-2 one restricted to the
        subalgebra, the form is −Tr(f∘t(g)) and the involution the ω-adjoint.
        """
        n = w1.rank
        full_hs = induced_end_weight2(w1)
        full_t = end_involution(w1.omega)
        if basis_mats is None:
            alg = Algebra.matrix_algebra(n)
            return cls(alg.dim, alg.table, alg.unit, full_t, full_hs, alg.names)
        gram_full = full_hs.gram
        vecs = [vec(m) for m in basis_mats]
        gram = [[bilinear(u, gram_full, v) for v in vecs] for u in vecs]

        def t_map(m):
            from .hodge import unvec

            return unvec(matvec(full_t, vec(m)), n)

        alg = Algebra.from_matrices(basis_mats, t_map, names)
        # H^{2,0} of the sub-Hodge structure: H_C ∩ End^{2,0}, in H-coordinates
        field = w1.field
        span_h = Subspace(vecs, n * n, field)
        inter = span_h.intersect(full_hs.h20)
        cols = transpose([list(v) for v in vecs])
        h20 = []
        for v in inter.basis:
            res = solve_rank(cols, [[x] for x in v], field)
            h20.append(tuple(row[0] for row in res.solution))
        hs = WeightTwoHS(gram, h20, field)
        return cls(alg.dim, alg.table, alg.unit, alg.involution, hs, alg.names)


# --- validation --------------------------------------------------------------------


def _fmt_vec(v):
    from .hodge import _fmt

    return "(" + ", ".join(_fmt(x) for x in v) + ")"


def validate_algebra(alg: HodgeAlgebra) -> Report:
    """Check associativity, unit, involution and adjunction exactly, plus bidegree."""
    rep = Report("validate_algebra")
    n = alg.dim
    rep.info["dim"] = n
    basis = alg.basis()
    prods = [[alg.mul(basis[i], basis[j]) for j in range(n)] for i in range(n)]

    bad = None
    for i in range(n):
        for j in range(n):
            left = prods[i][j]
            for k in range(n):
                if alg.mul(left, basis[k]) != alg.mul(basis[i], prods[j][k]):
                    bad = (i, j, k)
                    break
            if bad:
                break
        if bad:
            break
    rep.add("associativity", bad is None, f"all {n}^3 basis triples" if bad is None else f"fails at {bad}")

    unit_ok = all(alg.mul(alg.unit, b) == b and alg.mul(b, alg.unit) == b for b in basis)
    rep.add("unit", unit_ok, "u·e_i = e_i·u = e_i")

    if alg.involution is None:
        rep.add("involution_present", False, "no involution given")
        return rep
    T = alg.involution
    tt = [[sum(T[i][k] * T[k][j] for k in range(n)) for j in range(n)] for i in range(n)]
    rep.add("involution_square", tt == identity(n), "T² = id")

    tb = [alg.involute(b) for b in basis]
    anti = None
    for i in range(n):
        for j in range(n):
            if alg.involute(prods[i][j]) != alg.mul(tb[j], tb[i]):
                anti = (i, j)
                break
        if anti:
            break
    rep.add(
        "involution_anti_homomorphism",
        anti is None,
        "T(e_i e_j) = T(e_j) T(e_i)" if anti is None else f"fails at {anti}",
    )

    if isinstance(alg, HodgeAlgebra):
        one = alg.unit
        adj = None
        for i in range(n):
            for j in range(n):
                lhs = alg.form(basis[i], basis[j])
                r1 = alg.form(alg.mul(basis[i], tb[j]), one)
                r2 = alg.form(alg.mul(tb[j], basis[i]), one)
                if not (lhs == r1 == r2):
                    adj = (i, j)
                    break
            if adj:
                break
        rep.add(
            "adjunction",
            adj is None,
            "<a,b> = <a t(b),1> = <t(b) a,1>" if adj is None else f"fails at {adj}",
        )
        hs = alg.hs
        tpres = True
        for name in ("20", "11", "02"):
            piece = hs.piece(name)
            img = Subspace([matvec(T, v) for v in piece.basis], n, hs.field)
            if not piece.contains_space(img):
                tpres = False
        rep.add("involution_preserves_hodge_type", tpres, "T(H^{p,q}) ⊆ H^{p,q}")
        rep.merge(bidegree_check(alg), "bidegree")
    return rep


def bidegree_check(alg: HodgeAlgebra) -> Report:
    """The product H ⊗ H → H has bidegree (−1, −1)."""
    hs = alg.hs
    rep = Report("bidegree_check")
    h20, h11, h02 = hs.h20, hs.h11, hs.h02
    zero = Subspace.zero(alg.dim, hs.field)
    cases = [
        ("H20.H20=0", h20, h20, zero),
        ("H20.H11<H20", h20, h11, h20),
        ("H11.H20<H20", h11, h20, h20),
        ("H11.H11<H11", h11, h11, h11),
        ("H02.H02=0", h02, h02, zero),
        ("H11.H02<H02", h11, h02, h02),
        ("H02.H11<H02", h02, h11, h02),
        ("H20.H02<H11", h20, h02, h11),
        ("H02.H20<H11", h02, h20, h11),
    ]
    for name, a, b, target in cases:
        prod = product_span(a, b, alg.mul)
        ok = target.contains_space(prod)
        rep.add(name, ok, f"dim span = {prod.dim}")
    return rep


# --- center -------------------------------------------------------------------------


@dataclass
class Component:
    """One number-field factor e·K of a commutative algebra K."""

    idempotent: tuple
    minimal_polynomial: list
    primitive_element: tuple
    degree: int
    is_field: bool
    totally_real: bool | None

    def describe(self):
        return (
            f"degree {self.degree}, minpoly {poly.to_string(self.minimal_polynomial)}, "
            f"field={self.is_field}, totally_real={self.totally_real}"
        )


@dataclass
class CenterReport:
    center: Subspace
    t_invariant: Subspace
    components: list
    report: Report


def _commutator_rows(alg: Algebra):
    n = alg.dim
    rows = []
    for k in range(n):
        ek = alg.basis_vector(k)
        # h ↦ h e_k − e_k h
        cols = [
            [a - b for a, b in zip(alg.mul(alg.basis_vector(i), ek), alg.mul(ek, alg.basis_vector(i)))]
            for i in range(n)
        ]
        rows.extend(transpose(cols))
    return rows


def center(alg: Algebra, split: bool = True, seed: int = 0) -> CenterReport:
    """Center K (commutator kernel), its t-invariant part K⁺, and K⁺'s field factors."""
    n = alg.dim
    kern = solve_rank(_commutator_rows(alg)).kernel
    rep = Report("center")
    rep.info["dim_center"] = kern.dim
    if alg.involution is not None:
        T = alg.involution
        # K⁺ = {k in K : T k = k}
        rows = [[T[i][j] - int(i == j) for j in range(n)] for i in range(n)]
        fixed = solve_rank(rows).kernel
        kplus = kern.intersect(fixed)
    else:
        kplus = kern
    rep.info["dim_center_t_invariant"] = kplus.dim
    rep.add("unit_central", kern.contains(alg.unit), "1 ∈ K")
    closed = all(kern.contains(alg.mul(a, b)) for a in kern.basis for b in kern.basis)
    rep.add("center_closed", closed, "K·K ⊆ K")
    if alg.involution is not None:
        rep.add(
            "center_t_stable",
            all(kern.contains(alg.involute(b)) for b in kern.basis),
            "T(K) ⊆ K",
        )
    comps = []
    if split:
        comps = split_commutative(alg, kplus, seed=seed)
        _check_idempotents(alg, comps, rep, kern)
        for k, c in enumerate(comps):
            rep.add(f"component[{k}]", c.is_field, c.describe())
    return CenterReport(kern, kplus, comps, rep)


def _check_idempotents(alg, comps, rep, kern):
    ids = [c.idempotent for c in comps]
    total = tuple(sum(col) for col in zip(*ids)) if ids else tuple(0 for _ in alg.unit)
    rep.add("idempotents_sum_to_unit", total == alg.unit, f"{len(ids)} idempotents")
    ok = all(alg.mul(e, e) == e for e in ids)
    ok = ok and all(
        all(x == 0 for x in alg.mul(a, b)) for i, a in enumerate(ids) for j, b in enumerate(ids) if i != j
    )
    ok = ok and all(kern.contains(e) for e in ids)
    rep.add("idempotents_orthogonal_central", ok, "e² = e, e_i e_j = 0, e central")


def minimal_polynomial(alg: Algebra, x, unit=None):
    """Monic minimal polynomial of ``x`` over Q (powers until linear dependence)."""
    unit = tuple(unit) if unit is not None else alg.unit
    powers = [unit]
    while True:
        nxt = alg.mul(powers[-1], x)
        cols = transpose([list(p) for p in powers])
        try:
            res = solve_rank(cols, [[c] for c in nxt])
        except Exception:
            powers.append(nxt)
            if len(powers) > alg.dim + 1:
                raise
            continue
        coeffs = [-row[0] for row in res.solution]
        return coeffs + [Fraction(1)]


def _poly_at(alg, p, x, unit):
    acc = tuple(Fraction(0) for _ in unit)
    for c in reversed(p):
        acc = alg.mul(acc, x)
        acc = tuple(a + c * u for a, u in zip(acc, unit))
    return acc


def split_commutative(alg: Algebra, space: Subspace | None = None, unit=None, seed: int = 0):
    """Split a reduced commutative subalgebra into number fields.

    ``space`` (default: all of ``alg``) must be closed under multiplication
    with identity ``unit``.  Minimal polynomials of basis elements, then of
    seeded random combinations, are factored; a coprime factorization gives
    an idempotent and the search recurses.  A factor is certified a field
    once some element has an irreducible minimal polynomial of full degree.
    """
    if space is None:
        space = Subspace.full(alg.dim)
    unit = tuple(unit) if unit is not None else alg.unit
    for a in space.basis:
        for b in space.basis:
            if alg.mul(a, b) != alg.mul(b, a):
                raise ValidationError("subalgebra is not commutative", "commutative")
    if isinstance(alg, HodgeAlgebra):
        cert = hermitian_definiteness(
            [[alg.form(a, b) for b in space.basis] for a in space.basis], False
        )
        if cert.verdict in ("indefinite", "degenerate"):
            raise ValidationError(
                "intersection form is not definite on the commutative subalgebra", "definite_form"
            )
    rng = random.Random(seed)
    return _split(alg, space, unit, rng)


def _split(alg, space, unit, rng):
    dim = space.dim
    candidates = list(space.basis)
    for _ in range(8):
        coeffs = [Fraction(rng.randint(-9, 9)) for _ in space.basis]
        candidates.append(
            tuple(sum(c * b[k] for c, b in zip(coeffs, space.basis)) for k in range(alg.dim))
        )
    for x in candidates:
        mp = minimal_polynomial(alg, x, unit)
        if not poly.is_squarefree(mp):
            raise ValidationError("commutative subalgebra has nilpotent elements", "reduced")
        factors = poly.factor(mp)
        if len(factors) > 1:
            f1 = factors[0]
            rest = [Fraction(1)]
            for f in factors[1:]:
                rest = poly.mul(rest, f)
            g, u, v = poly.ext_gcd(f1, rest)
            # v·rest ≡ 1 mod f1 and ≡ 0 mod rest
            e1 = _poly_at(alg, poly.mul(v, rest), x, unit)
            e2 = tuple(a - b for a, b in zip(unit, e1))
            out = []
            for e in (e1, e2):
                sub = Subspace([alg.mul(e, b) for b in space.basis], alg.dim)
                out.extend(_split(alg, sub, e, rng))
            return out
        if poly.degree(mp) == dim:
            tr = poly.totally_real(mp)
            return [Component(unit, mp, x, dim, True, tr)]
    raise UnsupportedCenter(
        f"could not certify a {dim}-dimensional commutative factor as a field or split it"
    )


def totally_real(minpoly) -> bool:
    """Sturm-sequence test: all roots of the squarefree polynomial are real."""
    return poly.totally_real(minpoly)


def trace_form_signature(alg: Algebra, y, involution=None, space: Subspace | None = None):
    """Signature of (α, β) ↦ Tr(L_{y α t(β)}) on a commutative algebra.

    The trace is taken on ``space`` (default the whole algebra), viewed as a
    Q-vector space.  Returns the definiteness certificate.
    """
    if space is None:
        space = Subspace.full(alg.dim)
        sub, basis = alg, alg.basis()
        yy = tuple(y)
        T = involution if involution is not None else alg.involution
        tmap = (lambda v: matvec(T, v)) if T is not None else (lambda v: v)
    else:
        sub, basis = alg.restrict(space, alg.unit if space.contains(alg.unit) else space.basis[0])
        yy = tuple(space.coordinates(y))
        T = sub.involution
        tmap = (lambda v: matvec(T, v)) if T is not None else (lambda v: v)
        basis = sub.basis()
    mat = []
    for a in basis:
        row = []
        for b in basis:
            z = sub.mul(sub.mul(yy, a), tmap(b))
            row.append(sub.trace(z))
        mat.append(row)
    return hermitian_definiteness(mat, False)


def subalgebra_generated(alg: Algebra, a, over: Subspace | None = None) -> Subspace:
    """Span of the powers of ``a`` (times ``over``, e.g. the center, when given)."""
    coeff_basis = over.basis if over is not None else [alg.unit]
    vecs = []
    span = Subspace([], alg.dim)
    power = alg.unit
    while True:
        new = [alg.mul(k, power) for k in coeff_basis]
        grown = span + Subspace(new, alg.dim)
        if grown.dim == span.dim:
            return span
        span = grown
        vecs.extend(new)
        power = alg.mul(power, a)

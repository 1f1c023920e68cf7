"""Polarized Hodge structures of weight 2 and weight 1.

A weight-2 structure is stored as (Gram matrix, H^{2,0}); the (1,1) and
(0,2) pieces are derived.  A weight-1 structure is (skew form ω, H^{1,0}).
"""
from __future__ import annotations

from fractions import Fraction
from functools import cached_property

from .errors import DimensionMismatch, ValidationError
from .linalg import (
    Subspace,
    bilinear,
    congruence_diagonalize,
    hermitian_definiteness,
    identity,
    kernel_vectors,
    orth_complement,
    rank,
    sesquilinear,
    solve_rank,
    transpose,
)
from .report import Report
from .scalars import EXACT, conj, format_scalar, imaginary_unit

__all__ = [
    "WeightTwoHS",
    "WeightOneHS",
    "validate_weight2",
    "validate_weight1",
    "induced_end_weight2",
    "end_involution",
    "end_gram",
    "vec",
    "unvec",
]


def _fmt_list(xs, limit=8):
    xs = list(xs)
    body = ", ".join(_fmt(x) for x in xs[:limit])
    if len(xs) > limit:
        body += ", ..."
    return body


def _fmt(x):
    if isinstance(x, (complex, float)):
        return f"{x:.3g}"
    try:
        return format_scalar(x)
    except TypeError:
        return str(x)


def _as_rational_matrix(m, what):
    try:
        out = [[Fraction(x) for x in row] for row in m]
    except TypeError as exc:
        raise ValidationError(f"{what} must have rational entries", what) from exc
    n = len(out)
    if any(len(r) != n for r in out):
        raise DimensionMismatch(f"{what} must be square")
    return out


class WeightTwoHS:
    """Polarized weight-2 Hodge structure on Q^n.

    ``gram`` is the symmetric rational intersection form; ``h20`` spans
    H^{2,0} inside C^n (exact Q(√d, i) entries, or floats on a FloatField).
    """

    def __init__(self, gram, h20, field=EXACT):
        self.gram = _as_rational_matrix(gram, "gram")
        self.n = len(self.gram)
        self.field = field
        if not isinstance(h20, Subspace):
            h20 = Subspace(h20, self.n, field)
        if h20.ambient_dim != self.n:
            raise DimensionMismatch("H^{2,0} lives in the wrong ambient space")
        self.h20 = h20
        for i in range(self.n):
            for j in range(i):
                if self.gram[i][j] != self.gram[j][i]:
                    raise ValidationError(
                        f"gram is not symmetric: gram[{j}][{i}] != gram[{i}][{j}]", "gram_symmetric"
                    )

    @property
    def rank(self) -> int:
        return self.n

    @property
    def p(self) -> int:
        return self.h20.dim

    @cached_property
    def h02(self) -> Subspace:
        return self.h20.conj()

    @cached_property
    def h11(self) -> Subspace:
        # H^{1,1} is the h-orthogonal complement of H^{2,0} ⊕ H^{0,2}
        return orth_complement(self.h20 + self.h02, self.gram, conjugating=True)

    def piece(self, name: str) -> Subspace:
        return {"20": self.h20, "11": self.h11, "02": self.h02}[name]

    def hodge_numbers(self):
        return (self.h20.dim, self.h11.dim, self.h02.dim)

    def form(self, x, y):
        return bilinear(x, self.gram, y)

    def hermitian(self, x, y):
        return sesquilinear(x, self.gram, y)

    def hermitian_matrix(self, space: Subspace):
        b = space.basis
        return [[self.hermitian(u, v) for v in b] for u in b]

    def __repr__(self):
        return f"WeightTwoHS(rank={self.n}, hodge_numbers={self.hodge_numbers()})"


def validate_weight2(hs: WeightTwoHS) -> Report:
    """Check the Hodge–Riemann relations with exact (or tolerance) certificates."""
    if hs.p == 0:
        raise ValidationError("H^{2,0} = 0 is excluded", "h20_nonzero")
    f = hs.field
    rep = Report("validate_weight2")
    n, p = hs.n, hs.p
    rep.info["rank"] = n
    rep.info["hodge_numbers"] = hs.hodge_numbers()

    rep.add("gram_nondegenerate", rank(hs.gram) == n, f"rank {rank(hs.gram)} of {n}")

    iso = [hs.form(u, v) for u in hs.h20.basis for v in hs.h20.basis]
    rep.add(
        "h20_isotropic",
        all(f.is_zero(x) for x in iso),
        "<η_i, η_j> = 0 for all basis pairs",
    )

    pos = hermitian_definiteness(hs.hermitian_matrix(hs.h20), True, f)
    rep.add("h20_positive", pos.positive, f"pivots {_fmt_list(pos.pivots)}")

    direct = (hs.h20 + hs.h02).dim == 2 * p
    rep.add("h20_h02_direct", direct, f"dim(H20+H02) = {(hs.h20 + hs.h02).dim}")

    h11 = hs.h11
    rep.add("h11_dimension", h11.dim == n - 2 * p, f"dim H11 = {h11.dim}, expected {n - 2 * p}")
    rep.add("h11_conj_stable", h11.is_conj_stable(), "conj(H11) ⊆ H11")
    if h11.dim:
        neg = hermitian_definiteness(hs.hermitian_matrix(h11), True, f)
        rep.add("h11_negative", neg.negative, f"pivots {_fmt_list(neg.pivots)}")
    else:
        rep.add("h11_negative", True, "H11 = 0")

    _, dmat = congruence_diagonalize(hs.gram)
    diag = [dmat[i][i] for i in range(n)]
    sig = (sum(1 for x in diag if x > 0), sum(1 for x in diag if x < 0))
    rep.add("signature", sig == (2 * p, n - 2 * p), f"signature {sig}, expected {(2 * p, n - 2 * p)}")
    return rep


class WeightOneHS:
    """Weight-1 Hodge structure H_C = h10 ⊕ conj(h10) with skew rational form ω."""

    def __init__(self, omega, h10, field=EXACT):
        self.omega = _as_rational_matrix(omega, "omega")
        self.rank = len(self.omega)
        self.field = field
        if not isinstance(h10, Subspace):
            h10 = Subspace(h10, self.rank, field)
        if h10.ambient_dim != self.rank:
            raise DimensionMismatch("h10 lives in the wrong ambient space")
        self.h10 = h10

    @property
    def g(self) -> int:
        return self.rank // 2

    @cached_property
    def h01(self) -> Subspace:
        return self.h10.conj()

    def form(self, x, y):
        return bilinear(x, self.omega, y)

    def positivity_matrix(self, space: Subspace | None = None):
        """Matrix of i·ω(w, conj(w')) on a basis of ``space`` (default h10)."""
        space = space or self.h10
        b = space.basis
        i = imaginary_unit(self.field, (x for v in b for x in v))
        return [[i * sesquilinear(u, self.omega, v) for v in b] for u in b]

    def __repr__(self):
        return f"WeightOneHS(rank={self.rank}, dim h10={self.h10.dim})"


def validate_weight1(hs: WeightOneHS) -> Report:
    f = hs.field
    rep = Report("validate_weight1")
    n = hs.rank
    om = hs.omega
    skew = all(om[i][j] == -om[j][i] for i in range(n) for j in range(n))
    rep.add("omega_skew", skew, "ωᵀ = −ω")
    rep.add("omega_nondegenerate", rank(om) == n, f"rank {rank(om)} of {n}")
    dsum = hs.h10 + hs.h01
    rep.add(
        "direct_sum",
        n % 2 == 0 and hs.h10.dim == n // 2 and dsum.dim == n,
        f"dim h10 = {hs.h10.dim}, dim(h10 + conj h10) = {dsum.dim}, rank {n}",
    )
    iso = [hs.form(u, v) for u in hs.h10.basis for v in hs.h10.basis]
    rep.add("h10_isotropic", all(f.is_zero(x) for x in iso), "ω(w_i, w_j) = 0")
    if hs.h10.dim:
        try:
            cert = hermitian_definiteness(hs.positivity_matrix(), True, f)
            rep.add("positivity", cert.positive, f"i·ω(w, w̄) pivots {_fmt_list(cert.pivots)}")
        except ValidationError as exc:
            rep.add("positivity", False, str(exc))
    else:
        rep.add("positivity", False, "h10 = 0")
    return rep


# --- endomorphisms of a weight-1 structure --------------------------------------


def vec(mat):
    """Row-major flattening; End(Q^N) has basis E_ab at index a·N + b."""
    return tuple(x for row in mat for x in row)


def unvec(v, n):
    return [list(v[i * n:(i + 1) * n]) for i in range(n)]


def _inverse(m):
    n = len(m)
    res = solve_rank(m, identity(n))
    if res.rank != n:
        raise ValidationError("form is degenerate", "omega_nondegenerate")
    return res.solution


def end_involution(omega):
    """Matrix (on vec-coordinates) of the ω-adjoint f ↦ Ω⁻¹ fᵀ Ω."""
    n = len(omega)
    oi = _inverse(omega)
    cols = []
    for a in range(n):
        for b in range(n):
            # t(E_ab) = Ω⁻¹ E_ba Ω: entry (r, s) = Ω⁻¹[r][b] Ω[a][s]
            img = [[oi[r][b] * omega[a][s] for s in range(n)] for r in range(n)]
            cols.append(vec(img))
    return transpose(cols)


def end_gram(omega):
    """Gram matrix of <f, g> = −Tr(f ∘ t(g)) on End(Q^N) in the E_ab basis."""
    n = len(omega)
    oi = _inverse(omega)
    size = n * n
    g = [[Fraction(0)] * size for _ in range(size)]
    for a in range(n):
        for b in range(n):
            for c in range(n):
                for d in range(n):
                    # Tr(E_ab Ω⁻¹ E_dc Ω) = Ω⁻¹[b][d] Ω[c][a]
                    g[a * n + b][c * n + d] = -oi[b][d] * omega[c][a]
    return g


def induced_end_weight2(w1: WeightOneHS) -> WeightTwoHS:
    """Weight-2 structure on End(H) with H^{2,0} = Hom(conj(h10), h10).

    An endomorphism of type (2,0) kills h10 and sends conj(h10) into h10,
    so H^{2,0} is spanned by w·φᵀ with w in h10 and φ annihilating h10.
    """
    rep = validate_weight1(w1)
    if not rep.ok:
        raise ValidationError(
            "weight-1 input is not a valid polarized structure: "
            + ", ".join(c.name for c in rep.failed()),
            rep.failed()[0].name,
        )
    n = w1.rank
    ann = kernel_vectors([list(w) for w in w1.h10.basis], n, w1.field)
    h20 = []
    for w in w1.h10.basis:
        for phi in ann:
            h20.append(tuple(w[r] * phi[s] for r in range(n) for s in range(n)))
    return WeightTwoHS(end_gram(w1.omega), h20, w1.field)

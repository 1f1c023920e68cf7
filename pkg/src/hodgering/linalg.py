"""Exact (or tolerance-based) dense linear algebra over any scalar backend.

Vectors are tuples of scalars, matrices are lists of rows.  Every routine
takes a ``field`` decision object (:data:`~hodgering.scalars.EXACT` or a
:class:`~hodgering.scalars.FloatField`) that owns zero tests, signs and
pivot choice.
"""
from __future__ import annotations

from dataclasses import dataclass, field as dc_field
from fractions import Fraction
from math import lcm

from .errors import DimensionMismatch, InconsistentSystem, ValidationError
from .scalars import EXACT, conj

__all__ = [
    "identity",
    "zeros",
    "transpose",
    "matmul",
    "matvec",
    "conj_transpose",
    "is_rational_matrix",
    "bareiss_echelon",
    "row_reduce",
    "rank",
    "kernel_vectors",
    "SolveResult",
    "solve_rank",
    "Subspace",
    "subspace_ops",
    "product_span",
    "orth_complement",
    "DefinitenessCertificate",
    "hermitian_definiteness",
    "congruence_diagonalize",
    "bilinear",
    "sesquilinear",
]


def identity(n):
    return [[Fraction(int(i == j)) for j in range(n)] for i in range(n)]


def zeros(r, c):
    return [[Fraction(0)] * c for _ in range(r)]


def transpose(m):
    return [list(col) for col in zip(*m)] if m else []


def conj_transpose(m):
    return [[conj(x) for x in col] for col in zip(*m)] if m else []


def matmul(a, b):
    bt = transpose(b)
    return [[_dot(row, col) for col in bt] for row in a]


def matvec(m, v):
    return tuple(_dot(row, v) for row in m)


def _dot(u, v):
    s = 0
    for x, y in zip(u, v):
        if x and y:
            s = s + x * y
    return s


def bilinear(x, gram, y):
    """``xᵀ G y``."""
    return _dot(x, matvec(gram, y))


def sesquilinear(x, gram, y):
    """``xᵀ G conj(y)``; Hermitian when G is real symmetric."""
    return _dot(x, matvec(gram, tuple(conj(c) for c in y)))


def _ex(x):
    return Fraction(x) if type(x) is int else x


def is_rational_matrix(rows) -> bool:
    return all(isinstance(x, (int, Fraction)) for row in rows for x in row)


# --- elimination --------------------------------------------------------------


def bareiss_echelon(rows):
    """Fraction-free row echelon form of an integer matrix.

    Returns ``(echelon_rows, pivot_columns)``; all intermediate entries stay
    integral because each step divides exactly by the previous pivot.
    """
    m = [list(r) for r in rows]
    nrows = len(m)
    ncols = len(m[0]) if m else 0
    pivots = []
    prev = 1
    r = 0
    for c in range(ncols):
        if r >= nrows:
            break
        p = next((i for i in range(r, nrows) if m[i][c] != 0), None)
        if p is None:
            continue
        if p != r:
            m[r], m[p] = m[p], m[r]
        piv = m[r][c]
        for i in range(r + 1, nrows):
            mic = m[i][c]
            row_i, row_r = m[i], m[r]
            for j in range(c + 1, ncols):
                row_i[j] = (piv * row_i[j] - mic * row_r[j]) // prev
            row_i[c] = 0
        prev = piv
        pivots.append(c)
        r += 1
    return m[:r], pivots


def _rational_rref(rows, ncols):
    int_rows = []
    for row in rows:
        den = 1
        for x in row:
            if isinstance(x, Fraction):
                den = lcm(den, x.denominator)
        int_rows.append([int(x * den) for x in row])
    ech, pivots = bareiss_echelon(int_rows)
    red = [[Fraction(x) for x in row] for row in ech]
    # back substitution to reduced form
    for k in range(len(pivots) - 1, -1, -1):
        c = pivots[k]
        pv = red[k][c]
        if pv != 1:
            red[k] = [x / pv for x in red[k]]
        for i in range(k):
            f = red[i][c]
            if f:
                rk = red[k]
                red[i] = [a - f * b for a, b in zip(red[i], rk)]
    return red, pivots


def row_reduce(rows, ncols=None, field=EXACT):
    """Reduced row echelon form with pivot entries normalized to 1.

    Rational input on the exact backend goes through Bareiss elimination.
    """
    rows = [[_ex(x) for x in r] for r in rows]
    if ncols is None:
        ncols = len(rows[0]) if rows else 0
    if not rows:
        return [], []
    if field.exact and is_rational_matrix(rows):
        return _rational_rref(rows, ncols)
    m = rows
    pivots = []
    r = 0
    for c in range(ncols):
        if r >= len(m):
            break
        p = field.pivot_index((i, m[i][c]) for i in range(r, len(m)))
        if p is None:
            continue
        m[r], m[p] = m[p], m[r]
        inv = 1 / m[r][c]
        m[r] = [x * inv if x else x for x in m[r]]
        m[r][c] = 1
        pr = m[r]
        for i in range(len(m)):
            if i != r:
                f = m[i][c]
                if not field.is_zero(f):
                    m[i] = [a - f * b if b else a for a, b in zip(m[i], pr)]
                    m[i][c] = 0 * m[i][c]
        pivots.append(c)
        r += 1
    if not field.exact:
        m = [[0 if field.is_zero(x) else x for x in row] for row in m]
    return m[:r], pivots


def rank(rows, field=EXACT) -> int:
    return len(row_reduce(rows, field=field)[1])


def kernel_vectors(rows, ncols, field=EXACT):
    """Basis of ``{v : M v = 0}`` read off the reduced echelon form."""
    red, pivots = row_reduce(rows, ncols, field) if rows else ([], [])
    free = [c for c in range(ncols) if c not in set(pivots)]
    basis = []
    for f in free:
        v = [Fraction(0)] * ncols
        v[f] = Fraction(1)
        for row, p in zip(red, pivots):
            v[p] = -row[f]
        basis.append(tuple(v))
    return basis


@dataclass
class SolveResult:
    rank: int
    kernel: "Subspace"
    solution: list | None


def solve_rank(matrix, rhs=None, field=EXACT) -> SolveResult:
    """Rank, kernel and (when ``rhs`` is given) a particular solution of M·X = rhs."""
    nrows = len(matrix)
    ncols = len(matrix[0]) if nrows else 0
    if any(len(r) != ncols for r in matrix):
        raise DimensionMismatch("ragged matrix")
    red, pivots = row_reduce(matrix, ncols, field) if nrows else ([], [])
    kern = Subspace(kernel_vectors(matrix, ncols, field), ncols, field)
    solution = None
    if rhs is not None:
        if len(rhs) != nrows:
            raise DimensionMismatch(f"rhs has {len(rhs)} rows, matrix has {nrows}")
        k = len(rhs[0]) if rhs else 0
        aug = [list(matrix[i]) + list(rhs[i]) for i in range(nrows)]
        ared, apiv = row_reduce(aug, ncols + k, field)
        if any(p >= ncols for p in apiv):
            raise InconsistentSystem("system M·X = rhs is inconsistent")
        solution = [[Fraction(0)] * k for _ in range(ncols)]
        for row, p in zip(ared, apiv):
            for j in range(k):
                solution[p][j] = row[ncols + j]
    return SolveResult(len(pivots), kern, solution)


# --- subspaces ------------------------------------------------------------------


class Subspace:
    """A subspace of ``field^n`` stored by a basis plus its canonical RREF.

    ``basis`` keeps an independent subset of the generating vectors;
    ``canonical`` is the reduced echelon form of the basis rows, which is
    uniquely determined by the span (exact backend).
    """

    __slots__ = ("ambient_dim", "basis", "canonical", "pivots", "field")

    def __init__(self, vectors, ambient_dim, field=EXACT):
        self.ambient_dim = ambient_dim
        self.field = field
        vecs = [tuple(_ex(x) for x in v) for v in vectors]
        for v in vecs:
            if len(v) != ambient_dim:
                raise DimensionMismatch(f"vector of length {len(v)} in ambient {ambient_dim}")
        basis, canon, pivots = [], [], []
        for v in vecs:
            res = _reduce_against(v, canon, pivots, field)
            if res is None:
                continue
            basis.append(v)
            _insert_row(res, canon, pivots, field)
        self.basis = basis
        self.canonical = canon
        self.pivots = pivots

    @classmethod
    def zero(cls, n, field=EXACT):
        return cls([], n, field)

    @classmethod
    def full(cls, n, field=EXACT):
        return cls(identity(n), n, field)

    @property
    def dim(self) -> int:
        return len(self.basis)

    def __len__(self):
        return self.dim

    def is_zero(self) -> bool:
        return not self.basis

    def contains(self, v) -> bool:
        return _reduce_against(tuple(v), self.canonical, self.pivots, self.field) is None

    def contains_space(self, other: "Subspace") -> bool:
        self._check(other)
        return all(self.contains(v) for v in other.basis)

    def __le__(self, other):
        return other.contains_space(self)

    def __eq__(self, other):
        if not isinstance(other, Subspace):
            return NotImplemented
        if self.ambient_dim != other.ambient_dim or self.dim != other.dim:
            return False
        if self.field.exact and other.field.exact:
            return self.pivots == other.pivots and all(
                a == b for ra, rb in zip(self.canonical, other.canonical) for a, b in zip(ra, rb)
            )
        return self.contains_space(other)

    def __hash__(self):
        return hash((self.ambient_dim, self.dim, tuple(self.pivots)))

    def _check(self, other):
        if self.ambient_dim != other.ambient_dim:
            raise DimensionMismatch(
                f"ambient dimensions differ: {self.ambient_dim} vs {other.ambient_dim}"
            )

    def __add__(self, other: "Subspace") -> "Subspace":
        self._check(other)
        return Subspace(self.basis + other.basis, self.ambient_dim, self.field)

    def intersect(self, other: "Subspace") -> "Subspace":
        self._check(other)
        if self.is_zero() or other.is_zero():
            return Subspace.zero(self.ambient_dim, self.field)
        n = self.ambient_dim
        # α·A = β·B  ⇔  (α, β) in the kernel of [Aᵀ | −Bᵀ]
        cols = list(self.basis) + [tuple(-x for x in v) for v in other.basis]
        mat = transpose([list(c) for c in cols])
        ker = kernel_vectors(mat, len(cols), self.field)
        out = []
        for kv in ker:
            w = [0] * n
            for coef, v in zip(kv[: self.dim], self.basis):
                if coef:
                    w = [a + coef * b for a, b in zip(w, v)]
            out.append(tuple(w))
        return Subspace(out, n, self.field)

    def conj(self) -> "Subspace":
        return Subspace(
            [tuple(conj(x) for x in v) for v in self.basis], self.ambient_dim, self.field
        )

    def is_conj_stable(self) -> bool:
        return self.contains_space(self.conj())

    def coordinates(self, v):
        """Coefficients of ``v`` in ``self.basis``; raises if ``v`` is outside."""
        mat = transpose([list(b) for b in self.basis])
        res = solve_rank(mat, [[x] for x in v], self.field)
        return tuple(row[0] for row in res.solution)

    def real_basis(self):
        """Real and imaginary parts of the basis, reduced to an independent set.

        Only meaningful for conjugation-stable subspaces, whose span these
        vectors then equal.
        """
        from .scalars import imag_part, real_part

        vecs = []
        for v in self.basis:
            vecs.append(tuple(real_part(x) for x in v))
            vecs.append(tuple(imag_part(x) for x in v))
        return Subspace(vecs, self.ambient_dim, self.field).basis

    def __repr__(self):
        return f"Subspace(dim={self.dim}, ambient={self.ambient_dim})"


def _reduce_against(v, canon, pivots, field):
    r = list(v)
    for row, p in zip(canon, pivots):
        f = r[p]
        if not field.is_zero(f):
            r = [a - f * b if b else a for a, b in zip(r, row)]
    if all(field.is_zero(x) for x in r):
        return None
    return r


def _insert_row(res, canon, pivots, field):
    p = next(i for i, x in enumerate(res) if not field.is_zero(x))
    inv = 1 / res[p]
    row = [x * inv if x else x for x in res]
    row[p] = 1
    for k in range(len(canon)):
        f = canon[k][p]
        if not field.is_zero(f):
            canon[k] = [a - f * b if b else a for a, b in zip(canon[k], row)]
    idx = 0
    while idx < len(pivots) and pivots[idx] < p:
        idx += 1
    canon.insert(idx, row)
    pivots.insert(idx, p)


def product_span(a: Subspace, b: Subspace, mul) -> Subspace:
    """Span of ``mul(x, y)`` over basis vectors x of ``a`` and y of ``b``."""
    a._check(b)
    return Subspace([mul(x, y) for x in a.basis for y in b.basis], a.ambient_dim, a.field)


def subspace_ops(a: Subspace, b: Subspace, op: str, mul=None) -> Subspace:
    if op == "sum":
        return a + b
    if op == "intersect":
        return a.intersect(b)
    if op == "product_span":
        if mul is None:
            raise ValueError("product_span needs a bilinear map")
        return product_span(a, b, mul)
    raise ValueError(f"unknown subspace operation {op!r}")


def orth_complement(s: Subspace, gram, conjugating: bool = False) -> Subspace:
    """``{v : form(v, x) = 0 for all x in s}`` with form(v, x) = vᵀ G x (or vᵀ G conj(x))."""
    n = s.ambient_dim
    if len(gram) != n:
        raise DimensionMismatch("Gram matrix does not match the ambient dimension")
    eqs = []
    for x in s.basis:
        xx = tuple(conj(c) for c in x) if conjugating else x
        eqs.append(list(matvec(gram, xx)))
    if not eqs:
        return Subspace.full(n, s.field)
    return Subspace(kernel_vectors(eqs, n, s.field), n, s.field)


# --- forms ------------------------------------------------------------------------


@dataclass
class DefinitenessCertificate:
    """Outcome of a congruence diagonalization ``P* G P = diag(pivots)``."""

    verdict: str
    pivots: list
    signs: list
    transform: list = dc_field(repr=False)

    @property
    def positive(self) -> bool:
        return self.verdict == "positive"

    @property
    def negative(self) -> bool:
        return self.verdict == "negative"

    def signature(self):
        return (self.signs.count(1), self.signs.count(-1), self.signs.count(0))


def _check_hermitian(g, conjugating, field):
    n = len(g)
    for i in range(n):
        if len(g[i]) != n:
            raise DimensionMismatch("form matrix is not square")
        for j in range(i, n):
            other = conj(g[j][i]) if conjugating else g[j][i]
            if not field.is_zero(g[i][j] - other):
                kind = "Hermitian" if conjugating else "symmetric"
                raise ValidationError(f"matrix is not {kind} at ({i}, {j})", "symmetry")


def hermitian_definiteness(g, conjugating: bool = True, field=EXACT) -> DefinitenessCertificate:
    """Definiteness of a Hermitian (or real symmetric) form via congruence pivots.

    Zero diagonal entries are handled by the substitution v_k ← v_k + c·v_j,
    so the certificate is just the list of pivots and the transform.
    """
    _check_hermitian(g, conjugating, field)
    n = len(g)
    m = [[_ex(x) for x in r] for r in g]
    p = identity(n)
    cj = conj if conjugating else (lambda x: x)

    def add_multiple(dst, src, c):
        # v_dst ← v_dst + c·v_src, applied as a congruence on m
        m[dst] = [a + c * b for a, b in zip(m[dst], m[src])]
        cc = cj(c)
        for row in m:
            row[dst] = row[dst] + cc * row[src]
        for row in p:
            row[dst] = row[dst] + c * row[src]

    def swap(i, j):
        m[i], m[j] = m[j], m[i]
        for row in m:
            row[i], row[j] = row[j], row[i]
        for row in p:
            row[i], row[j] = row[j], row[i]

    pivots = []
    for k in range(n):
        if field.is_zero(m[k][k]):
            j = next((j for j in range(k + 1, n) if not field.is_zero(m[j][j])), None)
            if j is not None:
                swap(k, j)
            else:
                j = next((j for j in range(k + 1, n) if not field.is_zero(m[k][j])), None)
                if j is not None:
                    add_multiple(k, j, m[k][j] if conjugating else 1)
        piv = m[k][k]
        if not field.is_zero(piv):
            inv = 1 / piv
            for j in range(k + 1, n):
                f = m[j][k] * inv
                if not field.is_zero(f):
                    add_multiple(j, k, -f)
        pivots.append(piv)
    signs = []
    for piv in pivots:
        signs.append(0 if field.is_zero(piv) else field.sign(piv))
    pos, neg, zero = signs.count(1), signs.count(-1), signs.count(0)
    if pos and neg:
        verdict = "indefinite"
    elif zero:
        verdict = "degenerate"
    elif neg:
        verdict = "negative"
    else:
        verdict = "positive"
    if n == 0:
        verdict = "positive"
    # columns of p are the new basis vectors: pᵀ G conj(p) = diag(pivots)
    return DefinitenessCertificate(verdict, pivots, signs, p)


def congruence_diagonalize(g):
    """Rational congruence diagonalization: returns (P, D) with Pᵀ G P = D.

    Fraction-free updates v_j ← p·v_j − c·v_k keep P integral for integral G;
    no square roots are introduced.  Already-diagonal input gives P = identity.
    """
    _check_hermitian(g, False, EXACT)
    n = len(g)
    m = [[Fraction(x) for x in r] for r in g]
    p = identity(n)

    def combine(dst, a, src, b):
        # v_dst ← a·v_dst + b·v_src
        m[dst] = [a * x + b * y for x, y in zip(m[dst], m[src])]
        for row in m:
            row[dst] = a * row[dst] + b * row[src]
        for row in p:
            row[dst] = a * row[dst] + b * row[src]

    def swap(i, j):
        m[i], m[j] = m[j], m[i]
        for row in m:
            row[i], row[j] = row[j], row[i]
        for row in p:
            row[i], row[j] = row[j], row[i]

    for k in range(n):
        if m[k][k] == 0:
            j = next((j for j in range(k + 1, n) if m[j][j] != 0), None)
            if j is not None:
                swap(k, j)
            else:
                j = next((j for j in range(k + 1, n) if m[k][j] != 0), None)
                if j is not None:
                    combine(k, 1, j, 1)
        piv = m[k][k]
        if piv == 0:
            continue
        for j in range(k + 1, n):
            c = m[j][k]
            if c != 0:
                combine(j, piv, k, -c)
    d = [[m[i][j] if i == j else Fraction(0) for j in range(n)] for i in range(n)]
    return p, d

"""Fixture files: a flat key-block text format plus the built-in examples.

A fixture is a sequence of blocks.  A block starts with an unindented key,
optionally followed by inline values; indented lines that follow belong to
the same block.  ``#`` starts a comment.  Example::

    name f1
    field d=1
    backend exact
    rank 3
    gram
      1 0 0
      0 1 0
      0 0 -1
    h20
      1 {re:[0,0],im:[1,0]} 0
    options clifford=true

Scalars are ``p/q``, ``[a,b]`` for a + b√d, or ``{re:[a,b],im:[c,e]}``.
``structure_constants`` holds sparse ``i j k value`` lines (e_i·e_j ∋ value·e_k).
"""
from __future__ import annotations

import re
from dataclasses import dataclass, field
from fractions import Fraction
from functools import lru_cache

from .algebra import Algebra, HodgeAlgebra
from .errors import DimensionMismatch, FieldConfigError, ParseError, ValidationError
from .hodge import WeightOneHS, WeightTwoHS
from .linalg import matmul, solve_rank
from .scalars import (
    EXACT,
    ComplexQuad,
    FloatField,
    RealQuad,
    format_scalar,
    is_squarefree,
    parse_scalar,
)

KEYS = (
    "name",
    "field",
    "backend",
    "rank",
    "gram",
    "h20",
    "structure_constants",
    "unit",
    "involution",
    "omega",
    "h10",
    "embedding",
    "names",
    "options",
)
_TOKEN = re.compile(r"\{[^}]*\}|\[[^\]]*\]|[^\s]+")


@dataclass
class Fixture:
    name: str
    d: int = 1
    backend: str = "exact"
    tol: float = 1e-9
    rank: int = 0
    gram: list | None = None
    h20: list = field(default_factory=list)
    structure_constants: list | None = None
    unit: list | None = None
    involution: list | None = None
    omega: list | None = None
    h10: list | None = None
    embedding: list | None = None
    names: list | None = None
    options: dict = field(default_factory=dict)

    @property
    def field(self):
        return EXACT if self.backend == "exact" else FloatField(self.tol)

    @property
    def has_algebra(self) -> bool:
        return self.structure_constants is not None

    def option(self, key, default=None):
        return self.options.get(key, default)

    def weight2(self) -> WeightTwoHS:
        if self.gram is None:
            raise ParseError("fixture has no gram block", key="gram")
        return WeightTwoHS(self.gram, [self._vec(v) for v in self.h20], self.field)

    def weight1(self) -> WeightOneHS | None:
        if self.omega is None or self.h10 is None:
            return None
        return WeightOneHS(self.omega, [self._vec(v) for v in self.h10], self.field)

    def algebra(self) -> HodgeAlgebra:
        if not self.has_algebra:
            raise ParseError("fixture has no structure_constants; request Clifford generation", key="structure_constants")
        alg = Algebra.from_triples(self.rank, self.structure_constants, self.unit, self.involution, self.names)
        return HodgeAlgebra.from_algebra(alg, self.weight2())

    def _vec(self, v):
        if self.backend == "exact":
            return tuple(v)
        return tuple(complex(x) for x in v)


# --- parsing ------------------------------------------------------------------------


def _blocks(text):
    blocks = []
    for lineno, raw in enumerate(text.splitlines(), 1):
        line = raw.split("#", 1)[0].rstrip()
        if not line.strip():
            continue
        if not line[0].isspace():
            head = line.split(None, 1)
            key = head[0]
            if key not in KEYS:
                raise ParseError(f"unknown key {key!r}", lineno, key)
            if any(b[0] == key for b in blocks):
                raise ParseError(f"duplicate key {key!r}", lineno, key)
            blocks.append((key, lineno, []))
            if len(head) > 1:
                blocks[-1][2].append((lineno, _TOKEN.findall(head[1])))
        else:
            if not blocks:
                raise ParseError("indented line before any key", lineno)
            blocks[-1][2].append((lineno, _TOKEN.findall(line)))
    return blocks


def _scalar(tok, d, lineno, key):
    try:
        return parse_scalar(tok, d)
    except (ValueError, FieldConfigError, ZeroDivisionError) as exc:
        raise ParseError(f"malformed literal {tok!r}: {exc}", lineno, key) from exc


def _rational(tok, lineno, key):
    val = _scalar(tok, 1, lineno, key)
    if not isinstance(val, Fraction):
        raise ParseError(f"{key} entries must be rational, got {tok!r}", lineno, key)
    return val


def _single(lines, key):
    toks = [t for _, ts in lines for t in ts]
    if len(toks) != 1:
        line = lines[0][0] if lines else None
        raise ParseError(f"{key} takes exactly one value", line, key)
    return toks[0], lines[0][0]


def _int(lines, key):
    tok, lineno = _single(lines, key)
    try:
        return int(tok)
    except ValueError as exc:
        raise ParseError(f"{key} must be an integer, got {tok!r}", lineno, key) from exc


def _kv(lines, key):
    out = {}
    for lineno, toks in lines:
        for t in toks:
            if "=" not in t:
                raise ParseError(f"expected key=value, got {t!r}", lineno, key)
            k, v = t.split("=", 1)
            out[k] = v
    return out


def _matrix(lines, key, conv, ncols=None):
    rows = []
    for lineno, toks in lines:
        row = [conv(t, lineno) for t in toks]
        if ncols is not None and len(row) != ncols:
            raise ParseError(f"{key} row has {len(row)} entries, expected {ncols}", lineno, key)
        rows.append(row)
    return rows


def parse_fixture(text: str) -> Fixture:
    blocks = {k: (ln, lines) for k, ln, lines in _blocks(text)}
    if "name" not in blocks:
        raise ParseError("missing key 'name'", key="name")
    fx = Fixture(_single(blocks["name"][1], "name")[0])
    if "field" in blocks:
        kv = _kv(blocks["field"][1], "field")
        try:
            fx.d = int(kv.get("d", 1))
        except ValueError as exc:
            raise ParseError("field d must be an integer", blocks["field"][0], "field") from exc
        if not is_squarefree(fx.d):
            raise ParseError(f"d = {fx.d} is not a positive squarefree integer", blocks["field"][0], "field")
    if "backend" in blocks:
        toks = [t for _, ts in blocks["backend"][1] for t in ts]
        fx.backend = toks[0] if toks else "exact"
        if fx.backend not in ("exact", "float"):
            raise ParseError(f"unknown backend {fx.backend!r}", blocks["backend"][0], "backend")
        for t in toks[1:]:
            if t.startswith("tol="):
                fx.tol = float(t[4:])
    for key in ("rank", "gram"):
        if key not in blocks:
            raise ParseError(f"missing key {key!r}", key=key)
    fx.rank = _int(blocks["rank"][1], "rank")
    n = fx.rank
    d = fx.d

    def rat(key):
        return lambda t, ln: _rational(t, ln, key)

    def sca(key):
        return lambda t, ln: _scalar(t, d, ln, key)

    fx.gram = _matrix(blocks["gram"][1], "gram", rat("gram"), n)
    if len(fx.gram) != n:
        raise ParseError(f"gram has {len(fx.gram)} rows, rank is {n}", blocks["gram"][0], "gram")
    for i in range(n):
        for j in range(i):
            if fx.gram[i][j] != fx.gram[j][i]:
                raise ValidationError(
                    f"gram is not symmetric: entry ({j}, {i}) differs from ({i}, {j}) "
                    f"(line {blocks['gram'][0]}, key 'gram')",
                    "gram_symmetric",
                )
    if "h20" in blocks:
        fx.h20 = _matrix(blocks["h20"][1], "h20", sca("h20"), n)

    if "names" in blocks:
        fx.names = [t for _, ts in blocks["names"][1] for t in ts]
    if "structure_constants" in blocks:
        triples = []
        for lineno, toks in blocks["structure_constants"][1]:
            if len(toks) != 4:
                raise ParseError("structure constant lines are 'i j k value'", lineno, "structure_constants")
            try:
                i, j, k = (int(t) for t in toks[:3])
            except ValueError as exc:
                raise ParseError("structure constant indices must be integers", lineno, "structure_constants") from exc
            if not all(0 <= x < n for x in (i, j, k)):
                raise ParseError(f"index out of range for rank {n}", lineno, "structure_constants")
            triples.append((i, j, k, _rational(toks[3], lineno, "structure_constants")))
        fx.structure_constants = triples
        if "unit" not in blocks:
            raise ParseError("structure_constants given without a unit", key="unit")
    if "unit" in blocks:
        unit = _matrix(blocks["unit"][1], "unit", rat("unit"))
        fx.unit = [x for row in unit for x in row]
        if len(fx.unit) != n:
            raise ParseError(f"unit has {len(fx.unit)} entries, rank is {n}", blocks["unit"][0], "unit")
    if "involution" in blocks:
        fx.involution = _matrix(blocks["involution"][1], "involution", rat("involution"), n)
        if len(fx.involution) != n:
            raise ParseError("involution must be rank × rank", blocks["involution"][0], "involution")
    if "omega" in blocks:
        fx.omega = _matrix(blocks["omega"][1], "omega", rat("omega"))
        m = len(fx.omega)
        if any(len(r) != m for r in fx.omega):
            raise ParseError("omega must be square", blocks["omega"][0], "omega")
    if "h10" in blocks:
        if fx.omega is None:
            raise ParseError("h10 needs an omega block", blocks["h10"][0], "h10")
        fx.h10 = _matrix(blocks["h10"][1], "h10", sca("h10"), len(fx.omega))
    if "embedding" in blocks:
        fx.embedding = _matrix(blocks["embedding"][1], "embedding", rat("embedding"))
    if "options" in blocks:
        fx.options = _kv(blocks["options"][1], "options")
    return fx


def load_fixture(ref: str, stdin=None) -> Fixture:
    """A built-in name, a path, or ``-`` for standard input."""
    import sys

    if ref in BUILTINS:
        return builtin(ref)
    if ref == "-":
        return parse_fixture((stdin or sys.stdin).read())
    try:
        with open(ref, encoding="utf-8") as fh:
            return parse_fixture(fh.read())
    except OSError as exc:
        raise ParseError(f"cannot read fixture {ref!r}: {exc.strerror}") from exc


# --- serialization --------------------------------------------------------------------


def _fmt(x):
    if isinstance(x, complex):
        return repr(x)
    return format_scalar(x)


def _rows(rows):
    return ["  " + " ".join(_fmt(x) for x in row) for row in rows]


def serialize(fx: Fixture) -> str:
    out = [f"name {fx.name}", f"field d={fx.d}"]
    out.append("backend exact" if fx.backend == "exact" else f"backend float tol={fx.tol:g}")
    out.append(f"rank {fx.rank}")
    out.append("gram")
    out += _rows(fx.gram)
    if fx.h20:
        out.append("h20")
        out += _rows(fx.h20)
    if fx.names:
        out.append("names")
        out.append("  " + " ".join(fx.names))
    if fx.structure_constants is not None:
        out.append("structure_constants")
        out += [f"  {i} {j} {k} {_fmt(v)}" for i, j, k, v in fx.structure_constants]
    if fx.unit is not None:
        out.append("unit " + " ".join(_fmt(x) for x in fx.unit))
    if fx.involution is not None:
        out.append("involution")
        out += _rows(fx.involution)
    if fx.omega is not None:
        out.append("omega")
        out += _rows(fx.omega)
    if fx.h10 is not None:
        out.append("h10")
        out += _rows(fx.h10)
    if fx.embedding is not None:
        out.append("embedding")
        out += _rows(fx.embedding)
    if fx.options:
        out.append("options " + " ".join(f"{k}={v}" for k, v in fx.options.items()))
    return "\n".join(out) + "\n"


def normalize(text: str) -> str:
    """Canonical text: comments dropped, whitespace collapsed, literals in canonical form."""
    return serialize(parse_fixture(text))


# --- built-in fixtures ----------------------------------------------------------------


def _f(name, gram, eta, options=None):
    i = ComplexQuad.i(1)
    h20 = [[x if not isinstance(x, complex) else x.real + x.imag * i for x in eta]]
    return Fixture(name=name, d=1, rank=len(gram), gram=[[Fraction(x) for x in r] for r in gram], h20=h20,
                   options=options or {"clifford": "true"})


def _f1():
    i = ComplexQuad.i(1)
    return _f("f1", [[1, 0, 0], [0, 1, 0], [0, 0, -1]], [ComplexQuad(1), i, ComplexQuad(0)])


def _f2():
    i = ComplexQuad.i(1)
    gram = [[1, 0, 0, 0], [0, 1, 0, 0], [0, 0, -1, 0], [0, 0, 0, -1]]
    return _f("f2", gram, [ComplexQuad(1), i, ComplexQuad(0), ComplexQuad(0)])


# The 16-dimensional example with M ≠ 0: K = Q(√2, i) = Q[x, y]/(x² = 2, y² = −1), V = K ⊕ K.
# K elements are (p0, p1, q0, q1) meaning (p0 + p1·x) + (q0 + q1·x)·y.

_KB = [(1, 0, 0, 0), (0, 1, 0, 0), (0, 0, 1, 0), (0, 0, 0, 1)]
_KNAMES = ["", "x", "y", "xy"]


def _qmul(a, b):
    # (a0 + a1 x)(b0 + b1 x) with x² = 2
    return (a[0] * b[0] + 2 * a[1] * b[1], a[0] * b[1] + a[1] * b[0])


def kmul(u, v):
    p, q, r, s = u[:2], u[2:], v[:2], v[2:]
    pr, qs, ps, qr = _qmul(p, r), _qmul(q, s), _qmul(p, s), _qmul(q, r)
    return (pr[0] - qs[0], pr[1] - qs[1], ps[0] + qr[0], ps[1] + qr[1])


def kmatrix(k):
    """Matrix of multiplication by k on K in the basis 1, x, y, xy."""
    cols = [kmul(k, b) for b in _KB]
    return [[Fraction(cols[j][i]) for j in range(4)] for i in range(4)]


def big_omega(u, v):
    """The K⁺-bilinear skew form on K with Ω(1, y) = 1: Ω(P + Qy, R + Sy) = PS − QR."""
    a, b = _qmul(u[:2], v[2:]), _qmul(u[2:], v[:2])
    return (a[0] - b[0], a[1] - b[1])


def _trace(c):
    # tr_{K⁺/Q}(c0 + c1 x) = 2 c0
    return 2 * c[0]


def voisin_omega():
    """ω = tr Ω₁ + tr(x·Ω₂) on V = K ⊕ K (basis index 4·factor + k)."""
    om = [[Fraction(0)] * 8 for _ in range(8)]
    for f in range(2):
        for i in range(4):
            for j in range(4):
                w = big_omega(_KB[i], _KB[j])
                if f == 1:
                    w = (2 * w[1], w[0])
                om[4 * f + i][4 * f + j] = Fraction(_trace(w))
    return om


def _blockdiag(m0, m1):
    out = [[Fraction(0)] * 8 for _ in range(8)]
    for i in range(4):
        for j in range(4):
            out[i][j] = m0[i][j]
            out[4 + i][4 + j] = m1[i][j]
    return out


def voisin_operators():
    """x, y on V and the complex structure I (entries in Q(√2))."""
    X = _blockdiag(kmatrix(_KB[1]), kmatrix(_KB[1]))
    Y = _blockdiag(kmatrix(_KB[2]), kmatrix(_KB[2]))
    r2 = RealQuad(0, 1, 2)
    ident = [[Fraction(int(i == j)) for j in range(8)] for i in range(8)]
    e_plus = [[(X[i][j] + r2 * ident[i][j]) / (2 * r2) for j in range(8)] for i in range(8)]
    e_minus = [[(X[i][j] - r2 * ident[i][j]) / (-2 * r2) for j in range(8)] for i in range(8)]
    # I = y on V_{√2}; on V_{−√2} it is y on the first factor and −y on the second
    flip = [[Fraction(int(i == j)) * (1 if i < 4 else -1) for j in range(8)] for i in range(8)]
    a = matmul(e_plus, Y)
    b = matmul(matmul(e_minus, Y), flip)
    I = [[p + q for p, q in zip(ra, rb)] for ra, rb in zip(a, b)]
    return X, Y, e_plus, e_minus, I


def voisin_weight1() -> WeightOneHS:
    _, _, _, _, I = voisin_operators()
    iu = ComplexQuad.i(2)
    rows = [[I[r][c] + (iu if r == c else 0) for c in range(8)] for r in range(8)]
    # h10 is the −i eigenspace of I, so that i·ω(w, w̄) > 0
    return WeightOneHS(voisin_omega(), solve_rank(rows).kernel)


def voisin_basis():
    """End_K(V) = M₂(K): φ = E_ab ⊗ k maps factor b to factor a by multiplication by k."""
    mats, names = [], []
    for a in range(2):
        for b in range(2):
            for k in range(4):
                m = [[Fraction(0)] * 8 for _ in range(8)]
                km = kmatrix(_KB[k])
                for i in range(4):
                    for j in range(4):
                        m[4 * a + i][4 * b + j] = km[i][j]
                mats.append(m)
                names.append(f"E{a + 1}{b + 1}{_KNAMES[k]}")
    return mats, names


def _voisin():
    w1 = voisin_weight1()
    mats, names = voisin_basis()
    alg = HodgeAlgebra.endomorphisms(w1, mats, names)
    return Fixture(
        name="voisin",
        d=2,
        rank=alg.dim,
        gram=alg.gram,
        h20=[list(v) for v in alg.hs.h20.basis],
        structure_constants=alg.triples(),
        unit=list(alg.unit),
        involution=alg.involution,
        names=names,
        options={},
    )


BUILTINS = {"f1": _f1, "f2": _f2, "voisin": _voisin}


@lru_cache(maxsize=None)
def _builtin_text(name):
    return serialize(BUILTINS[name]())


def builtin(name: str) -> Fixture:
    if name not in BUILTINS:
        raise ParseError(f"unknown built-in fixture {name!r}; choose from {', '.join(BUILTINS)}", key="name")
    return parse_fixture(_builtin_text(name))


def check_dimensions(fx: Fixture):
    """Cross-key consistency beyond what parsing enforces."""
    if fx.h20 and any(len(v) != fx.rank for v in fx.h20):
        raise DimensionMismatch("h20 vectors must have rank entries")

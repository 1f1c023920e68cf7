"""Exact arithmetic in Q ⊂ Q(√d) ⊂ Q(√d, i), plus a tolerant float backend.

Rationals are :class:`fractions.Fraction`.  ``RealQuad(a, b, d)`` is
``a + b√d`` and ``ComplexQuad(re, im)`` is ``re + im·i``; both are immutable
and interoperate with ``int`` and ``Fraction`` operands.
"""
from __future__ import annotations

import math
import re
from fractions import Fraction
from numbers import Rational

from .errors import DivisionByZero, FieldConfigError

__all__ = [
    "Fraction",
    "RealQuad",
    "ComplexQuad",
    "ExactField",
    "FloatField",
    "EXACT",
    "exact_sign",
    "conj",
    "real_part",
    "imag_part",
    "sqrt_exact",
    "is_squarefree",
    "to_complex",
    "parse_scalar",
    "imaginary_unit",
    "format_scalar",
]


def is_squarefree(d: int) -> bool:
    if d < 1:
        return False
    k = 2
    while k * k <= d:
        if d % (k * k) == 0:
            return False
        k += 1
    return True


def _check_d(d):
    if not isinstance(d, int) or not is_squarefree(d):
        raise FieldConfigError(f"d must be a square-free positive integer, got {d!r}")


class RealQuad:
    """The real number ``a + b·√d`` with rational ``a``, ``b``."""

    __slots__ = ("a", "b", "d")

    def __init__(self, a=0, b=0, d: int = 1):
        _check_d(d)
        a = Fraction(a)
        b = Fraction(b)
        if d == 1 and b:
            raise FieldConfigError("pure-rational context (d = 1) cannot carry a √d part")
        object.__setattr__(self, "a", a)
        object.__setattr__(self, "b", b)
        object.__setattr__(self, "d", d)

    @classmethod
    def _make(cls, a, b, d):
        obj = object.__new__(cls)
        object.__setattr__(obj, "a", a)
        object.__setattr__(obj, "b", b)
        object.__setattr__(obj, "d", d)
        return obj

    def __setattr__(self, name, value):
        raise AttributeError("RealQuad is immutable")

    def _lift(self, other):
        if isinstance(other, RealQuad):
            if other.d != self.d:
                raise FieldConfigError(f"mixed fields Q(√{self.d}) and Q(√{other.d})")
            return other
        if isinstance(other, (int, Fraction)):
            return RealQuad._make(Fraction(other), Fraction(0), self.d)
        return None

    def __add__(self, other):
        if isinstance(other, ComplexQuad):
            return NotImplemented
        o = self._lift(other)
        if o is None:
            return NotImplemented
        return RealQuad._make(self.a + o.a, self.b + o.b, self.d)

    __radd__ = __add__

    def __neg__(self):
        return RealQuad._make(-self.a, -self.b, self.d)

    def __pos__(self):
        return self

    def __sub__(self, other):
        if isinstance(other, ComplexQuad):
            return NotImplemented
        o = self._lift(other)
        if o is None:
            return NotImplemented
        return RealQuad._make(self.a - o.a, self.b - o.b, self.d)

    def __rsub__(self, other):
        o = self._lift(other)
        if o is None:
            return NotImplemented
        return o - self

    def __mul__(self, other):
        if isinstance(other, (int, Fraction)):
            return RealQuad._make(self.a * other, self.b * other, self.d)
        if isinstance(other, ComplexQuad):
            return NotImplemented
        o = self._lift(other)
        if o is None:
            return NotImplemented
        return RealQuad._make(
            self.a * o.a + self.d * self.b * o.b, self.a * o.b + self.b * o.a, self.d
        )

    __rmul__ = __mul__

    def norm(self) -> Fraction:
        """Field norm ``a² − d·b²`` down to Q."""
        return self.a * self.a - self.d * self.b * self.b

    def galois(self) -> "RealQuad":
        return RealQuad._make(self.a, -self.b, self.d)

    def inv(self) -> "RealQuad":
        n = self.norm()
        if n == 0:
            raise DivisionByZero("inverse of zero in Q(√d)")
        return RealQuad._make(self.a / n, -self.b / n, self.d)

    def __truediv__(self, other):
        if isinstance(other, (int, Fraction)):
            if other == 0:
                raise DivisionByZero("division by zero")
            return RealQuad._make(self.a / other, self.b / other, self.d)
        if isinstance(other, ComplexQuad):
            return NotImplemented
        o = self._lift(other)
        if o is None:
            return NotImplemented
        return self * o.inv()

    def __rtruediv__(self, other):
        o = self._lift(other)
        if o is None:
            return NotImplemented
        return o * self.inv()

    def __pow__(self, n: int):
        if n < 0:
            return self.inv() ** (-n)
        out = RealQuad._make(Fraction(1), Fraction(0), self.d)
        base = self
        while n:
            if n & 1:
                out = out * base
            base = base * base
            n >>= 1
        return out

    def __eq__(self, other):
        if isinstance(other, RealQuad):
            return self.a == other.a and self.b == other.b and (
                self.d == other.d or not self.b
            )
        if isinstance(other, (int, Fraction)):
            return self.b == 0 and self.a == other
        if isinstance(other, ComplexQuad):
            return other == self
        return NotImplemented

    def __hash__(self):
        if not self.b:
            return hash(self.a)
        return hash((self.a, self.b, self.d))

    def __bool__(self):
        return bool(self.a) or bool(self.b)

    def __float__(self):
        return float(self.a) + float(self.b) * math.sqrt(self.d)

    def __lt__(self, other):
        return exact_sign(self - other) < 0

    def __le__(self, other):
        return exact_sign(self - other) <= 0

    def __gt__(self, other):
        return exact_sign(self - other) > 0

    def __ge__(self, other):
        return exact_sign(self - other) >= 0

    def __abs__(self):
        return -self if exact_sign(self) < 0 else self

    def is_rational(self) -> bool:
        return not self.b

    def __repr__(self):
        return f"RealQuad({self.a}, {self.b}, d={self.d})"

    def __str__(self):
        if not self.b:
            return str(self.a)
        if not self.a:
            return f"{self.b}√{self.d}"
        sign = "+" if self.b > 0 else "-"
        return f"{self.a}{sign}{abs(self.b)}√{self.d}"


class ComplexQuad:
    """``re + im·i`` with ``re``, ``im`` in Q(√d)."""

    __slots__ = ("re", "im")

    def __init__(self, re=0, im=0, d: int | None = None):
        re_, im_ = re, im
        if d is None:
            d = next(
                (x.d for x in (re_, im_) if isinstance(x, RealQuad)),
                1,
            )
        re_ = _to_rq(re_, d)
        im_ = _to_rq(im_, d)
        if re_.d != im_.d:
            raise FieldConfigError("real and imaginary parts in different fields")
        object.__setattr__(self, "re", re_)
        object.__setattr__(self, "im", im_)

    @classmethod
    def _make(cls, re, im):
        obj = object.__new__(cls)
        object.__setattr__(obj, "re", re)
        object.__setattr__(obj, "im", im)
        return obj

    def __setattr__(self, name, value):
        raise AttributeError("ComplexQuad is immutable")

    @property
    def d(self) -> int:
        return self.re.d

    @classmethod
    def i(cls, d: int = 1) -> "ComplexQuad":
        return cls(0, 1, d=d)

    def _lift(self, other):
        if isinstance(other, ComplexQuad):
            if other.d != self.d:
                raise FieldConfigError(f"mixed fields Q(√{self.d}, i) and Q(√{other.d}, i)")
            return other
        if isinstance(other, (int, Fraction, RealQuad)):
            return ComplexQuad._make(_to_rq(other, self.d), RealQuad._make(Fraction(0), Fraction(0), self.d))
        return None

    def __add__(self, other):
        if isinstance(other, (int, Fraction)):
            return ComplexQuad._make(self.re + other, self.im)
        o = self._lift(other)
        if o is None:
            return NotImplemented
        return ComplexQuad._make(self.re + o.re, self.im + o.im)

    __radd__ = __add__

    def __neg__(self):
        return ComplexQuad._make(-self.re, -self.im)

    def __pos__(self):
        return self

    def __sub__(self, other):
        if isinstance(other, (int, Fraction)):
            return ComplexQuad._make(self.re - other, self.im)
        o = self._lift(other)
        if o is None:
            return NotImplemented
        return ComplexQuad._make(self.re - o.re, self.im - o.im)

    def __rsub__(self, other):
        o = self._lift(other)
        if o is None:
            return NotImplemented
        return o - self

    def __mul__(self, other):
        if isinstance(other, (int, Fraction, RealQuad)):
            if isinstance(other, RealQuad) and other.d != self.d:
                raise FieldConfigError(f"mixed fields Q(√{self.d}, i) and Q(√{other.d})")
            return ComplexQuad._make(self.re * other, self.im * other)
        o = self._lift(other)
        if o is None:
            return NotImplemented
        if not self.im and not o.im:
            return ComplexQuad._make(self.re * o.re, self.im)
        return ComplexQuad._make(
            self.re * o.re - self.im * o.im, self.re * o.im + self.im * o.re
        )

    __rmul__ = __mul__

    def abs2(self) -> RealQuad:
        """``z·conj(z)`` as an element of Q(√d)."""
        return self.re * self.re + self.im * self.im

    def inv(self) -> "ComplexQuad":
        n = self.abs2()
        if not n:
            raise DivisionByZero("inverse of zero in Q(√d, i)")
        ninv = n.inv()
        return ComplexQuad._make(self.re * ninv, -self.im * ninv)

    def __truediv__(self, other):
        if isinstance(other, (int, Fraction)):
            if other == 0:
                raise DivisionByZero("division by zero")
            return ComplexQuad._make(self.re / other, self.im / other)
        o = self._lift(other)
        if o is None:
            return NotImplemented
        return self * o.inv()

    def __rtruediv__(self, other):
        o = self._lift(other)
        if o is None:
            return NotImplemented
        return o * self.inv()

    def __pow__(self, n: int):
        if n < 0:
            return self.inv() ** (-n)
        out = ComplexQuad(1, 0, d=self.d)
        base = self
        while n:
            if n & 1:
                out = out * base
            base = base * base
            n >>= 1
        return out

    def conjugate(self) -> "ComplexQuad":
        return ComplexQuad._make(self.re, -self.im)

    def __eq__(self, other):
        if isinstance(other, ComplexQuad):
            return self.re == other.re and self.im == other.im
        if isinstance(other, (int, Fraction, RealQuad)):
            return not self.im and self.re == other
        return NotImplemented

    def __hash__(self):
        if not self.im:
            return hash(self.re)
        return hash((self.re, self.im))

    def __bool__(self):
        return bool(self.re) or bool(self.im)

    def __complex__(self):
        return complex(float(self.re), float(self.im))

    def is_real(self) -> bool:
        return not self.im

    def __repr__(self):
        return f"ComplexQuad({self.re!r}, {self.im!r})"

    def __str__(self):
        if not self.im:
            return str(self.re)
        if not self.re:
            return f"({self.im})i"
        return f"({self.re})+({self.im})i"


def _to_rq(x, d) -> RealQuad:
    if isinstance(x, RealQuad):
        if x.d != d and x.b:
            raise FieldConfigError(f"mixed fields Q(√{x.d}) and Q(√{d})")
        return x if x.d == d else RealQuad._make(x.a, x.b, d)
    if isinstance(x, (int, Fraction)):
        return RealQuad._make(Fraction(x), Fraction(0), d)
    if isinstance(x, Rational):
        return RealQuad._make(Fraction(x.numerator, x.denominator), Fraction(0), d)
    raise TypeError(f"cannot interpret {x!r} as an element of Q(√{d})")


def exact_sign(x) -> int:
    """Sign of ``a + b√d`` under the embedding √d ↦ positive root."""
    if isinstance(x, ComplexQuad):
        if x.im:
            raise ValueError("sign of a non-real number")
        x = x.re
    if isinstance(x, (int, Fraction)):
        return (x > 0) - (x < 0)
    a, b, d = x.a, x.b, x.d
    sa = (a > 0) - (a < 0)
    sb = (b > 0) - (b < 0)
    if sb == 0:
        return sa
    if sa == 0 or sa == sb:
        return sb
    # opposite signs: compare a² with d·b²
    diff = a * a - d * b * b
    if diff > 0:
        return sa
    if diff < 0:
        return sb
    return 0


def conj(z):
    """Complex conjugation; identity on real scalars."""
    if isinstance(z, ComplexQuad):
        return ComplexQuad._make(z.re, -z.im)
    if isinstance(z, complex):
        return z.conjugate()
    return z


def real_part(z):
    if isinstance(z, ComplexQuad):
        return z.re
    if isinstance(z, complex):
        return z.real
    return z


def imag_part(z):
    if isinstance(z, ComplexQuad):
        return z.im
    if isinstance(z, complex):
        return z.imag
    if isinstance(z, RealQuad):
        return RealQuad._make(Fraction(0), Fraction(0), z.d)
    return 0 * z


def to_complex(z) -> complex:
    if isinstance(z, (ComplexQuad, complex)):
        return complex(z)
    return complex(float(z))


def _rational_sqrt(q: Fraction):
    if q < 0:
        return None
    n, m = q.numerator, q.denominator
    rn, rm = math.isqrt(n), math.isqrt(m)
    if rn * rn == n and rm * rm == m:
        return Fraction(rn, rm)
    return None


def sqrt_exact(x, d: int | None = None):
    """Non-negative square root of ``x`` inside Q(√d), or None if it is not there."""
    if isinstance(x, ComplexQuad):
        if x.im:
            return None
        x = x.re
    if isinstance(x, (int, Fraction)):
        x = RealQuad._make(Fraction(x), Fraction(0), d or 1)
    if exact_sign(x) < 0:
        return None
    a, b, dd = x.a, x.b, x.d
    if not b:
        r = _rational_sqrt(a)
        if r is not None:
            return RealQuad._make(r, Fraction(0), dd)
        # a = d·s²  →  √a = s·√d
        if dd > 1:
            s = _rational_sqrt(a / dd)
            if s is not None:
                return RealQuad._make(Fraction(0), s, dd)
        return None
    # (p + q√d)² = p² + d q² + 2pq√d; p² is a root of z² − a z + d b²/4
    disc = _rational_sqrt(a * a - dd * b * b)
    if disc is None:
        return None
    for p2 in ((a + disc) / 2, (a - disc) / 2):
        p = _rational_sqrt(p2)
        if p:
            q = b / (2 * p)
            cand = RealQuad._make(p, q, dd)
            if exact_sign(cand) < 0:
                cand = -cand
            if cand * cand == x:
                return cand
    return None


def imaginary_unit(field, values=()):
    """``i`` in the backend of ``field``, taking √d from the first quadratic entry seen."""
    if not field.exact:
        return 1j
    for v in values:
        if isinstance(v, (ComplexQuad, RealQuad)):
            return ComplexQuad.i(v.d)
    return ComplexQuad.i(1)


class ExactField:
    """Decision procedures for exact scalars (Fraction / RealQuad / ComplexQuad)."""

    exact = True
    tol = 0.0

    def is_zero(self, x) -> bool:
        return not x

    def sign(self, x) -> int:
        return exact_sign(x)

    def conj(self, x):
        return conj(x)

    def pivot_index(self, column_values):
        for idx, v in column_values:
            if v:
                return idx
        return None

    def __repr__(self):
        return "ExactField()"


class FloatField:
    """Floating point backend; every zero/sign decision goes through ``tol``."""

    exact = False

    def __init__(self, tol: float = 1e-9):
        if not tol > 0:
            raise FieldConfigError("tolerance must be positive")
        self.tol = float(tol)

    def is_zero(self, x) -> bool:
        return abs(x) <= self.tol

    def sign(self, x) -> int:
        if isinstance(x, complex):
            if abs(x.imag) > self.tol * max(1.0, abs(x.real)):
                raise ValueError("sign of a non-real number")
            x = x.real
        x = float(x)
        if abs(x) <= self.tol:
            return 0
        return 1 if x > 0 else -1

    def conj(self, x):
        return x.conjugate() if isinstance(x, complex) else x

    def pivot_index(self, column_values):
        best, best_abs = None, self.tol
        for idx, v in column_values:
            av = abs(v)
            if av > best_abs:
                best, best_abs = idx, av
        return best

    def __repr__(self):
        return f"FloatField(tol={self.tol:g})"


EXACT = ExactField()


# --- textual literals -------------------------------------------------------

_RAT_RE = re.compile(r"^\s*([+-]?\d+)(?:\s*/\s*(\d+))?\s*$")
_RQ_RE = re.compile(r"^\s*\[\s*([^,\]]+?)\s*,\s*([^,\]]+?)\s*\]\s*$")
_CQ_RE = re.compile(
    r"^\s*\{\s*re\s*:\s*(\[[^\]]*\])\s*,\s*im\s*:\s*(\[[^\]]*\])\s*\}\s*$"
)


def _parse_rational(text: str) -> Fraction:
    m = _RAT_RE.match(text)
    if not m:
        raise ValueError(f"malformed rational literal {text!r}")
    num = int(m.group(1))
    den = int(m.group(2)) if m.group(2) else 1
    if den == 0:
        raise ValueError(f"zero denominator in {text!r}")
    return Fraction(num, den)


def parse_scalar(text: str, d: int = 1):
    """Parse ``p/q``, ``[a, b]`` (a + b√d) or ``{re:[a,b], im:[c,e]}``.

    Rational literals come back as ``Fraction``; the others as RealQuad /
    ComplexQuad over Q(√d).
    """
    text = text.strip()
    if text.startswith("{"):
        m = _CQ_RE.match(text)
        if not m:
            raise ValueError(f"malformed complex literal {text!r}")
        return ComplexQuad(parse_scalar(m.group(1), d), parse_scalar(m.group(2), d), d=d)
    if text.startswith("["):
        m = _RQ_RE.match(text)
        if not m:
            raise ValueError(f"malformed quadratic literal {text!r}")
        return RealQuad(_parse_rational(m.group(1)), _parse_rational(m.group(2)), d)
    return _parse_rational(text)


def _fmt_rat(q) -> str:
    q = Fraction(q)
    return str(q.numerator) if q.denominator == 1 else f"{q.numerator}/{q.denominator}"


def format_scalar(x) -> str:
    """Inverse of :func:`parse_scalar`, choosing the shortest exact form."""
    if isinstance(x, ComplexQuad):
        if not x.im:
            return format_scalar(x.re)
        return (
            f"{{re:[{_fmt_rat(x.re.a)},{_fmt_rat(x.re.b)}],"
            f"im:[{_fmt_rat(x.im.a)},{_fmt_rat(x.im.b)}]}}"
        )
    if isinstance(x, RealQuad):
        if not x.b:
            return _fmt_rat(x.a)
        return f"[{_fmt_rat(x.a)},{_fmt_rat(x.b)}]"
    if isinstance(x, (int, Fraction)):
        return _fmt_rat(x)
    raise TypeError(f"cannot format {x!r} as an exact literal")

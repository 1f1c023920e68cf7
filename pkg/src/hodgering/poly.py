"""Univariate polynomials over Q as coefficient lists, lowest degree first.

Only what the center machinery needs: Euclid, Sturm sequences and
factorization of squarefree polynomials whose irreducible factors have
degree at most 4 (rational roots plus quadratic splittings of quartics).
"""
from __future__ import annotations

from fractions import Fraction
from math import isqrt, lcm

from .errors import UnsupportedCenter, ValidationError

MAX_FACTOR_DEGREE = 4


def normalize(p):
    p = [Fraction(c) for c in p]
    while p and p[-1] == 0:
        p.pop()
    return p


def degree(p) -> int:
    return len(normalize(p)) - 1


def monic(p):
    p = normalize(p)
    if not p:
        return p
    lead = p[-1]
    return [c / lead for c in p]


def add(p, q):
    n = max(len(p), len(q))
    return normalize([(p[i] if i < len(p) else 0) + (q[i] if i < len(q) else 0) for i in range(n)])


def sub(p, q):
    return add(p, [-c for c in q])


def mul(p, q):
    if not p or not q:
        return []
    out = [Fraction(0)] * (len(p) + len(q) - 1)
    for i, a in enumerate(p):
        if a:
            for j, b in enumerate(q):
                out[i + j] += a * b
    return normalize(out)


def divmod_poly(p, q):
    p, q = normalize(p), normalize(q)
    if not q:
        raise ZeroDivisionError("polynomial division by zero")
    quo = [Fraction(0)] * max(len(p) - len(q) + 1, 1)
    rem = list(p)
    while len(rem) >= len(q) and rem:
        shift = len(rem) - len(q)
        c = rem[-1] / q[-1]
        quo[shift] = c
        for i, b in enumerate(q):
            rem[i + shift] -= c * b
        rem = normalize(rem)
    return normalize(quo), rem


def gcd(p, q):
    p, q = normalize(p), normalize(q)
    while q:
        p, q = q, divmod_poly(p, q)[1]
    return monic(p)


def ext_gcd(p, q):
    """Return (g, u, v) with u·p + v·q = g = gcd(p, q), g monic."""
    r0, r1 = normalize(p), normalize(q)
    s0, s1 = [Fraction(1)], []
    t0, t1 = [], [Fraction(1)]
    while r1:
        quo, rem = divmod_poly(r0, r1)
        r0, r1 = r1, rem
        s0, s1 = s1, sub(s0, mul(quo, s1))
        t0, t1 = t1, sub(t0, mul(quo, t1))
    lead = r0[-1]
    return [c / lead for c in r0], [c / lead for c in s0], [c / lead for c in t0]


def derivative(p):
    return normalize([i * c for i, c in enumerate(p)][1:])


def evaluate(p, x):
    acc = 0
    for c in reversed(p):
        acc = acc * x + c
    return acc


def is_squarefree(p) -> bool:
    return degree(gcd(p, derivative(p))) == 0


def sturm_sequence(p):
    p = normalize(p)
    seq = [p, derivative(p)]
    while seq[-1] and degree(seq[-1]) > 0:
        rem = divmod_poly(seq[-2], seq[-1])[1]
        if not rem:
            break
        seq.append([-c for c in rem])
    return [s for s in seq if s]


def _sign_changes(values):
    signs = [v for v in values if v != 0]
    return sum(1 for a, b in zip(signs, signs[1:]) if (a > 0) != (b > 0))


def count_real_roots(p) -> int:
    """Number of distinct real roots, via sign changes of the Sturm sequence at ±∞."""
    seq = sturm_sequence(p)
    at_pos = [s[-1] for s in seq]
    at_neg = [s[-1] * (-1) ** (len(s) - 1) for s in seq]
    return _sign_changes(at_neg) - _sign_changes(at_pos)


def totally_real(p) -> bool:
    """True iff every complex root of the squarefree polynomial ``p`` is real."""
    p = normalize(p)
    if degree(p) < 1:
        raise ValidationError("constant polynomial has no roots", "degree")
    if not is_squarefree(p):
        raise ValidationError("polynomial is not squarefree", "squarefree")
    return count_real_roots(p) == degree(p)


def _divisors(n: int):
    n = abs(n)
    small, large = [], []
    k = 1
    while k * k <= n:
        if n % k == 0:
            small.append(k)
            if k * k != n:
                large.append(n // k)
        k += 1
    return small + large[::-1]


def _integral_monic(p):
    """Scale x ↦ y/L so that ``p`` becomes monic with integer coefficients."""
    p = monic(p)
    n = len(p) - 1
    den = 1
    for c in p:
        den = lcm(den, c.denominator)
    coeffs = [int(p[i] * den ** (n - i)) for i in range(n + 1)]
    return coeffs, den


def _unscale(q_int, den):
    n = len(q_int) - 1
    return monic([Fraction(q_int[i], den ** (n - i)) for i in range(n + 1)])


def rational_roots(p):
    p = normalize(p)
    if degree(p) < 1:
        return []
    roots = []
    if p[0] == 0:
        roots.append(Fraction(0))
        k = 0
        while p[k] == 0:
            k += 1
        p = p[k:]
        if degree(p) < 1:
            return roots
    coeffs, den = _integral_monic(p)
    for r in _divisors(coeffs[0]):
        for cand in (r, -r):
            if evaluate(coeffs, cand) == 0:
                roots.append(Fraction(cand, den))
    return sorted(set(roots))


def _quartic_quadratic_split(p):
    """Try (y² + a y + b)(y² + c y + e) over Z for a monic integral quartic."""
    c0, c1, c2, c3 = p[0], p[1], p[2], p[3]
    for q in _divisors(c0):
        for qq in (q, -q):
            s = c0 // qq
            if qq != s:
                num = c1 - c3 * qq
                if num % (s - qq):
                    continue
                a = num // (s - qq)
                c = c3 - a
                if qq + s + a * c == c2:
                    return [qq, a, 1], [s, c, 1]
            else:
                if c1 != qq * c3:
                    continue
                disc = c3 * c3 - 4 * (c2 - 2 * qq)
                if disc < 0:
                    continue
                r = isqrt(disc)
                if r * r != disc or (c3 + r) % 2:
                    continue
                a = (c3 + r) // 2
                c = c3 - a
                return [qq, a, 1], [s, c, 1]
    return None


def factor(p):
    """Irreducible monic factors of a squarefree polynomial over Q.

    Raises :class:`UnsupportedCenter` when an irreducible factor of degree
    above four cannot be excluded.
    """
    p = monic(p)
    if degree(p) < 1:
        return []
    if not is_squarefree(p):
        raise ValidationError("polynomial is not squarefree", "squarefree")
    factors = []
    for r in rational_roots(p):
        lin = [-r, Fraction(1)]
        factors.append(lin)
        p = divmod_poly(p, lin)[0]
    p = monic(p)
    deg = degree(p)
    if deg <= 0:
        return factors
    if deg <= 3:
        # no rational roots left, so degree ≤ 3 is irreducible
        return factors + [p]
    if deg == 4:
        ints, den = _integral_monic(p)
        split = _quartic_quadratic_split(ints)
        if split is None:
            return factors + [p]
        return factors + [_unscale(split[0], den), _unscale(split[1], den)]
    raise UnsupportedCenter(
        f"cannot factor a degree-{deg} polynomial without rational roots (cap {MAX_FACTOR_DEGREE})"
    )


def to_string(p, var="x") -> str:
    p = normalize(p)
    if not p:
        return "0"
    terms = []
    for k in range(len(p) - 1, -1, -1):
        c = p[k]
        if c == 0:
            continue
        mag = abs(c)
        coef = "" if (mag == 1 and k > 0) else str(mag)
        mono = "" if k == 0 else (var if k == 1 else f"{var}^{k}")
        body = f"{coef}{'*' if coef and mono else ''}{mono}"
        sign = "-" if c < 0 else "+"
        terms.append((sign, body))
    first_sign, first = terms[0]
    out = ("-" if first_sign == "-" else "") + first
    for sign, body in terms[1:]:
        out += f" {sign} {body}"
    return out

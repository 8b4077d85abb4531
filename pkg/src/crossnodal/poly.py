"""Univariate polynomials over Q as coefficient lists, lowest degree first."""

from __future__ import annotations

from fractions import Fraction
from math import gcd, lcm
from typing import Sequence

from .linalg import ONE, ZERO, to_fraction

Poly = list  # list[Fraction], coefficient of t^k at index k


def trim(p: Sequence) -> Poly:
    p = [to_fraction(c) for c in p]
    while p and not p[-1]:
        p.pop()
    return p


def degree(p: Sequence) -> int:
    return len(trim(p)) - 1


def monic(p: Sequence) -> Poly:
    p = trim(p)
    lead = p[-1]
    return [c / lead for c in p]


def add(p: Sequence, q: Sequence) -> Poly:
    n = max(len(p), len(q))
    return trim([(p[i] if i < len(p) else ZERO) + (q[i] if i < len(q) else ZERO) for i in range(n)])


def sub(p: Sequence, q: Sequence) -> Poly:
    return add(p, [-c for c in q])


def mul(p: Sequence, q: Sequence) -> Poly:
    if not p or not q:
        return []
    out = [ZERO] * (len(p) + len(q) - 1)
    for i, a in enumerate(p):
        if a:
            for j, b in enumerate(q):
                out[i + j] += a * b
    return trim(out)


def divmod_(p: Sequence, q: Sequence) -> tuple[Poly, Poly]:
    p, q = trim(p), trim(q)
    if not q:
        raise ZeroDivisionError("division by the zero polynomial")
    quot = [ZERO] * max(len(p) - len(q) + 1, 1)
    rem = list(p)
    dq, lead = len(q) - 1, q[-1]
    while len(rem) - 1 >= dq and rem:
        shift = len(rem) - 1 - dq
        c = rem[-1] / lead
        quot[shift] = c
        for i, b in enumerate(q):
            rem[i + shift] -= c * b
        rem = trim(rem)
    return trim(quot), rem


def derivative(p: Sequence) -> Poly:
    return trim([i * c for i, c in enumerate(p)][1:])


def pgcd(p: Sequence, q: Sequence) -> Poly:
    a, b = trim(p), trim(q)
    while b:
        a, b = b, divmod_(a, b)[1]
    return monic(a) if a else []


def xgcd(p: Sequence, q: Sequence) -> tuple[Poly, Poly, Poly]:
    """(g, s, t) with s p + t q = g = monic gcd."""
    r0, r1 = trim(p), trim(q)
    s0, s1 = [ONE], []
    t0, t1 = [], [ONE]
    while r1:
        quo, rem = divmod_(r0, r1)
        r0, r1 = r1, rem
        s0, s1 = s1, sub(s0, mul(quo, s1))
        t0, t1 = t1, sub(t0, mul(quo, t1))
    lead = r0[-1]
    return [c / lead for c in r0], [c / lead for c in s0], [c / lead for c in t0]


def evaluate(p: Sequence, x) -> Fraction:
    acc = ZERO
    for c in reversed(p):
        acc = acc * x + c
    return acc


def squarefree_part(p: Sequence) -> Poly:
    p = monic(p)
    g = pgcd(p, derivative(p))
    return monic(divmod_(p, g)[0]) if degree(g) > 0 else p


def _divisors(n: int) -> list[int]:
    n = abs(n)
    small, large = [], []
    d = 1
    while d * d <= n:
        if n % d == 0:
            small.append(d)
            if d * d != n:
                large.append(n // d)
        d += 1
    return small + large[::-1]


def rational_roots(p: Sequence) -> list[Fraction]:
    """Distinct rational roots, ascending, via the rational root theorem."""
    p = trim(p)
    if len(p) <= 1:
        return []
    den = lcm(*(c.denominator for c in p))
    ints = [int(c * den) for c in p]
    g = gcd(*ints)
    ints = [c // g for c in ints]
    roots = set()
    while ints and ints[0] == 0:
        roots.add(ZERO)
        ints = ints[1:]
    if len(ints) > 1:
        for a in _divisors(ints[0]):
            for b in _divisors(ints[-1]):
                for cand in (Fraction(a, b), Fraction(-a, b)):
                    if evaluate(ints, cand) == 0:
                        roots.add(cand)
    return sorted(roots)


def split_rational(p: Sequence) -> tuple[list[Fraction], Poly]:
    """Rational roots of a squarefree p and the monic cofactor without rational roots."""
    roots = rational_roots(p)
    rest = monic(p)
    for r in roots:
        rest = divmod_(rest, [-r, ONE])[0]
    return roots, rest


def irreducible_factors(p: Sequence) -> list[Poly]:
    """Monic irreducible factors over Q of a squarefree polynomial."""
    import sympy

    t = sympy.Symbol("t")
    expr = sympy.Poly([sympy.Rational(c.numerator, c.denominator) for c in reversed(trim(p))], t, domain="QQ")
    out = []
    for fac, _mult in expr.factor_list()[1]:
        coeffs = [Fraction(int(c.p), int(c.q)) for c in reversed(fac.all_coeffs())]
        out.append(monic(coeffs))
    out.sort(key=lambda f: (len(f), [(c.numerator, c.denominator) for c in f]))
    return out


def crt_idempotents(factors: Sequence[Sequence]) -> list[Poly]:
    """Polynomials E_k with E_k = 1 mod f_k and E_k = 0 mod f_j (j != k), reduced mod prod f."""
    total = [ONE]
    for f in factors:
        total = mul(total, f)
    out = []
    for f in factors:
        cof = divmod_(total, f)[0]
        g, s, _ = xgcd(cof, f)
        if degree(g) != 0:
            raise ValueError("factors are not pairwise coprime")
        out.append(divmod_(mul(s, cof), total)[1])
    return out

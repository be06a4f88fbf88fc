"""Dense univariate polynomials as coefficient lists (lowest degree first).

These helpers back the univariate fast paths of :class:`Poly` (gcd,
interpolation, rational reconstruction, root extraction).  Coefficients are
ints or Fractions; every function returns a trimmed list (``[]`` is zero).
"""

from __future__ import annotations

from fractions import Fraction
from math import gcd


def trim(a):
    a = list(a)
    while a and not a[-1]:
        a.pop()
    return a


def add(a, b):
    if len(a) < len(b):
        a, b = b, a
    out = list(a)
    for i, c in enumerate(b):
        out[i] += c
    return trim(out)


def sub(a, b):
    return add(a, [-c for c in b])


def scale(a, c):
    return trim([x * c for x in a]) if c else []


def mul(a, b):
    if not a or not b:
        return []
    out = [0] * (len(a) + len(b) - 1)
    for i, x in enumerate(a):
        if x:
            for j, y in enumerate(b):
                out[i + j] += x * y
    return trim(out)


def deriv(a):
    return trim([i * a[i] for i in range(1, len(a))])


def evaluate(a, x):
    acc = 0
    for c in reversed(a):
        acc = acc * x + c
    return acc


def divmod_field(a, b):
    """Quotient and remainder over Q."""
    if not b:
        raise ZeroDivisionError("polynomial division by zero")
    a = [Fraction(c) for c in a]
    q = [Fraction(0)] * max(len(a) - len(b) + 1, 0)
    lb = Fraction(b[-1])
    while len(a) >= len(b) and a:
        shift = len(a) - len(b)
        f = a[-1] / lb
        q[shift] = f
        for i, c in enumerate(b):
            a[i + shift] -= f * c
        a = trim(a)
    return trim([_clean(c) for c in q]), trim([_clean(c) for c in a])


def _clean(c):
    if isinstance(c, Fraction) and c.denominator == 1:
        return c.numerator
    return c


def clear_denominators(a):
    """Return (integer list, multiplier) with integer list = multiplier * a."""
    m = 1
    for c in a:
        if isinstance(c, Fraction):
            m = m * c.denominator // gcd(m, c.denominator)
    return [int(c * m) for c in a], m


def content(a):
    g = 0
    for c in a:
        g = gcd(g, int(c))
        if g == 1:
            break
    return g


def primitive(a):
    """Integer primitive part with positive leading coefficient."""
    a, _ = clear_denominators(trim(a))
    if not a:
        return []
    g = content(a)
    if a[-1] < 0:
        g = -g
    return [c // g for c in a]


def prem(a, b):
    """Pseudo-remainder of integer lists."""
    a = list(a)
    lb = b[-1]
    db = len(b) - 1
    steps = len(a) - db
    while len(a) - 1 >= db and a:
        la = a[-1]
        shift = len(a) - 1 - db
        a = [c * lb for c in a]
        for i, c in enumerate(b):
            a[i + shift] -= la * c
        a = trim(a)
        steps -= 1
    # exactly lb^(deg a - deg b + 1) overall
    if a and steps > 0:
        f = lb ** steps
        a = [c * f for c in a]
    return a


def gcd_z(a, b):
    """Primitive gcd over Z[x] (equivalently over Q[x]) by the subresultant PRS."""
    a, b = primitive(a), primitive(b)
    if not a:
        return b
    if not b:
        return a
    if len(a) < len(b):
        a, b = b, a
    g = h = 1
    while True:
        delta = len(a) - len(b)
        r = prem(a, b)
        if not r:
            return primitive(b)
        if len(r) == 1:
            return [1]
        div = g * h ** delta
        a, b = b, [c // div for c in r]
        g = a[-1]
        h = g ** delta // h ** (delta - 1) if delta else h


def monic(a):
    a = trim(a)
    lc = Fraction(a[-1])
    return [_clean(Fraction(c) / lc) for c in a]


def squarefree(a):
    if not trim(a):
        raise ValueError("zero polynomial")
    return len(gcd_z(a, deriv(a))) <= 1


def interpolate(points, values):
    """Newton interpolation over Q; returns the unique polynomial of degree < len(points)."""
    n = len(points)
    coef = [Fraction(v) for v in values]
    xs = [Fraction(p) for p in points]
    for j in range(1, n):
        for i in range(n - 1, j - 1, -1):
            coef[i] = (coef[i] - coef[i - 1]) / (xs[i] - xs[i - j])
    out = [Fraction(0)]
    for i in range(n - 1, -1, -1):
        out = add(mul(out, [-xs[i], 1]), [coef[i]])
    return trim([_clean(c) for c in out])


def rational_reconstruct(points, values, num_bound, den_bound):
    """Find r/t with deg r <= num_bound, deg t <= den_bound matching the samples.

    Extended Euclid on (prod (x - x_i), interpolant), stopped at the first
    remainder of degree <= num_bound.  Returns (num, den) with den monic, or
    None when no admissible pair exists.
    """
    m = [1]
    for p in points:
        m = mul(m, [-Fraction(p), 1])
    p = interpolate(points, values)
    r0, r1 = m, p
    t0, t1 = [], [1]
    while r1 and len(r1) - 1 > num_bound:
        q, r = divmod_field(r0, r1)
        r0, r1 = r1, r
        t0, t1 = t1, sub(t0, mul(q, t1))
    if not t1 or len(t1) - 1 > den_bound:
        return None
    g = gcd_z(r1, t1) if r1 else [1]
    if len(g) > 1:
        r1 = divmod_field(r1, g)[0]
        t1 = divmod_field(t1, g)[0]
    lc = Fraction(t1[-1])
    return [_clean(Fraction(c) / lc) for c in r1], [_clean(Fraction(c) / lc) for c in t1]


def _divisors(n):
    n = abs(n)
    small = []
    large = []
    d = 1
    while d * d <= n:
        if n % d == 0:
            small.append(d)
            if d * d != n:
                large.append(n // d)
        d += 1
    return small + large[::-1]


def rational_roots(a):
    """Distinct rational roots of a nonzero polynomial, sorted ascending."""
    a = primitive(a)
    roots = set()
    while a and a[0] == 0:
        roots.add(Fraction(0))
        a = a[1:]
    if len(a) <= 1:
        return sorted(roots)
    for p in _divisors(a[0]):
        for q in _divisors(a[-1]):
            for cand in (Fraction(p, q), Fraction(-p, q)):
                if cand not in roots and evaluate(a, cand) == 0:
                    roots.add(cand)
    return sorted(roots)

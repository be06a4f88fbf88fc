"""Sparse multivariate polynomials with exact rational coefficients.

Variables are drawn from the fixed list ``VARIABLES``; a polynomial carries
the subset it uses, in that order.  Monomials are packed into a single int
(a signed base-2**24 digit per variable) so that multiplying monomials is
integer addition.  Negative exponents are only accepted for ``q``.
"""

from __future__ import annotations

from fractions import Fraction
from math import gcd as igcd

from . import upoly

VARIABLES = ("u", "v", "beta", "q", "x", "h")
_ORDER = {name: i for i, name in enumerate(VARIABLES)}
_SHIFT = 24
_BASE = 1 << _SHIFT
_HALF = _BASE >> 1


class DivisionError(ArithmeticError):
    pass


class DomainError(ValueError):
    pass


def _norm(c):
    if c.__class__ is Fraction and c.denominator == 1:
        return c.numerator
    return c


def encode(exps) -> int:
    k = 0
    for e in reversed(exps):
        k = k * _BASE + e
    return k


def decode(key: int, nv: int) -> tuple:
    out = []
    for _ in range(nv):
        r = key % _BASE
        if r >= _HALF:
            r -= _BASE
        out.append(r)
        key = (key - r) >> _SHIFT
    return tuple(out)


def _sorted_vars(names):
    for n in names:
        if n not in _ORDER:
            raise DomainError(f"unknown variable {n!r}")
    return tuple(sorted(set(names), key=_ORDER.__getitem__))


def is_scalar(x) -> bool:
    return x.__class__ is int or x.__class__ is Fraction


class Poly:
    """Immutable sparse polynomial.  ``terms`` maps packed monomials to coefficients."""

    __slots__ = ("vars", "terms", "_hash")

    def __init__(self, terms=None, vars=()):
        self.vars = tuple(vars)
        self.terms = terms if terms is not None else {}
        self._hash = None

    # construction -----------------------------------------------------
    @classmethod
    def var(cls, name: str) -> "Poly":
        _sorted_vars([name])
        return cls({1: 1}, (name,))

    @classmethod
    def const(cls, c) -> "Poly":
        c = _norm(Fraction(c)) if not is_scalar(c) else _norm(c)
        return cls({0: c} if c else {}, ())

    @classmethod
    def from_terms(cls, vars, items) -> "Poly":
        """Build from an iterable of (exponent tuple, coefficient)."""
        vs = tuple(vars)
        if vs != _sorted_vars(vs) or len(set(vs)) != len(vs):
            raise DomainError(f"variables must follow the order {VARIABLES}")
        qpos = vs.index("q") if "q" in vs else -1
        terms: dict = {}
        for exps, c in items:
            exps = tuple(int(e) for e in exps)
            if len(exps) != len(vs):
                raise DomainError("exponent vector does not match variables")
            for i, e in enumerate(exps):
                if e < 0 and i != qpos:
                    raise DomainError("negative exponents are only allowed for q")
                if abs(e) >= _HALF:
                    raise DomainError("exponent out of range")
            k = encode(exps)
            terms[k] = terms.get(k, 0) + c
        return cls({k: _norm(c) for k, c in terms.items() if c}, vs)

    @classmethod
    def from_dense(cls, coeffs, var: str) -> "Poly":
        return cls({i: _norm(c) for i, c in enumerate(coeffs) if c}, (var,))

    # basic queries ----------------------------------------------------
    def __bool__(self):
        return bool(self.terms)

    def is_constant(self) -> bool:
        return not self.terms or (len(self.terms) == 1 and 0 in self.terms)

    def constant_value(self):
        if not self.is_constant():
            raise DomainError("polynomial is not constant")
        return self.terms.get(0, 0)

    def items(self):
        """Yield (exponent tuple, coefficient) pairs."""
        nv = len(self.vars)
        for k, c in self.terms.items():
            yield decode(k, nv), c

    def sorted_items(self):
        """Terms in descending graded-lex order."""
        return sorted(self.items(), key=lambda t: (sum(t[0]), t[0]), reverse=True)

    def used_vars(self) -> tuple:
        nv = len(self.vars)
        used = [False] * nv
        for exps, _ in self.items():
            for i, e in enumerate(exps):
                if e:
                    used[i] = True
        return tuple(v for v, f in zip(self.vars, used) if f)

    def trimmed(self) -> "Poly":
        used = self.used_vars()
        if used == self.vars:
            return self
        return self.reencode(used)

    def degree(self, var=None) -> int:
        """Total degree, or degree in ``var``; -1 for the zero polynomial."""
        if not self.terms:
            return -1
        if var is None:
            return max(sum(e) for e, _ in self.items())
        if var not in self.vars:
            return 0
        i = self.vars.index(var)
        return max(e[i] for e, _ in self.items())

    def min_degree(self, var) -> int:
        if var not in self.vars or not self.terms:
            return 0
        i = self.vars.index(var)
        return min(e[i] for e, _ in self.items())

    def leading_term(self):
        if not self.terms:
            raise DomainError("zero polynomial has no leading term")
        return max(self.items(), key=lambda t: (sum(t[0]), t[0]))

    def leading_coefficient(self):
        return self.leading_term()[1]

    # variable bookkeeping ---------------------------------------------
    def reencode(self, vs) -> "Poly":
        vs = tuple(vs)
        if vs == self.vars:
            return self
        pos = []
        for v in self.vars:
            if v in vs:
                pos.append(vs.index(v))
            else:
                pos.append(-1)
        nv = len(self.vars)
        out = {}
        for k, c in self.terms.items():
            exps = decode(k, nv)
            new = [0] * len(vs)
            for i, e in enumerate(exps):
                if e:
                    if pos[i] < 0:
                        raise DomainError(f"variable {self.vars[i]} cannot be dropped")
                    new[pos[i]] = e
            out[encode(new)] = c
        return Poly(out, vs)

    def _aligned(self, other: "Poly"):
        if self.vars == other.vars:
            return self.vars, self.terms, other.terms
        vs = _sorted_vars(self.vars + other.vars)
        return vs, self.reencode(vs).terms, other.reencode(vs).terms

    # arithmetic -------------------------------------------------------
    def __neg__(self):
        return Poly({k: -c for k, c in self.terms.items()}, self.vars)

    def __pos__(self):
        return self

    def __add__(self, other):
        if is_scalar(other):
            if not other:
                return self
            t = dict(self.terms)
            c = t.get(0, 0) + other
            if c:
                t[0] = _norm(c)
            else:
                t.pop(0, None)
            return Poly(t, self.vars)
        if not isinstance(other, Poly):
            return NotImplemented
        vs, ta, tb = self._aligned(other)
        if len(ta) < len(tb):
            ta, tb = tb, ta
        t = dict(ta)
        get = t.get
        for k, c in tb.items():
            s = get(k, 0) + c
            if s:
                t[k] = _norm(s)
            else:
                del t[k]
        return Poly(t, vs)

    __radd__ = __add__

    def __sub__(self, other):
        if is_scalar(other):
            return self + (-other)
        if not isinstance(other, Poly):
            return NotImplemented
        return self + (-other)

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        if is_scalar(other):
            if not other:
                return Poly({}, self.vars)
            if other == 1:
                return self
            return Poly({k: _norm(c * other) for k, c in self.terms.items()}, self.vars)
        if not isinstance(other, Poly):
            return NotImplemented
        vs, ta, tb = self._aligned(other)
        if len(ta) > len(tb):
            ta, tb = tb, ta
        if len(ta) == 1:
            (ka, ca), = ta.items()
            if ca == 1:
                return Poly({ka + kb: cb for kb, cb in tb.items()}, vs)
            return Poly({ka + kb: _norm(ca * cb) for kb, cb in tb.items()}, vs)
        res: dict = {}
        get = res.get
        tbi = list(tb.items())
        for ka, ca in ta.items():
            for kb, cb in tbi:
                k = ka + kb
                res[k] = get(k, 0) + ca * cb
        return Poly({k: _norm(c) for k, c in res.items() if c}, vs)

    __rmul__ = __mul__

    def __truediv__(self, other):
        if is_scalar(other):
            if not other:
                raise ZeroDivisionError("division by zero")
            return self * (1 / Fraction(other))
        if isinstance(other, Poly) and other.is_constant() and other:
            return self / other.constant_value()
        from .ratfunc import RationalFunction

        if isinstance(other, (Poly, RationalFunction)):
            return RationalFunction(self) / other
        return NotImplemented

    def __rtruediv__(self, other):
        from .ratfunc import RationalFunction

        return RationalFunction(Poly.const(other) if is_scalar(other) else other) / self

    def __pow__(self, e: int):
        if e < 0:
            if len(self.terms) == 1:
                (k, c), = self.terms.items()
                exps = decode(k, len(self.vars))
                return Poly.from_terms(self.vars, [(tuple(-x * -e for x in exps), Fraction(1) / Fraction(c) ** -e)])
            raise DomainError("negative powers are only defined for monomials")
        result = Poly({0: 1}, self.vars)
        base = self
        while e:
            if e & 1:
                result = result * base
            e >>= 1
            if e:
                base = base * base
        return result

    # comparison -------------------------------------------------------
    def __eq__(self, other):
        if is_scalar(other):
            if not other:
                return not self.terms
            return len(self.terms) == 1 and self.terms.get(0) == other
        if isinstance(other, Poly):
            if self.vars == other.vars:
                return self.terms == other.terms
            return (self - other).terms == {}
        return NotImplemented

    def __hash__(self):
        if self._hash is None:
            t = self.trimmed()
            if not t.vars:
                self._hash = hash(t.terms.get(0, 0))
            else:
                self._hash = hash((t.vars, frozenset(t.terms.items())))
        return self._hash

    # calculus and substitution ----------------------------------------
    def diff(self, var: str) -> "Poly":
        if var not in self.vars:
            return Poly({}, self.vars)
        i = self.vars.index(var)
        nv = len(self.vars)
        unit = 1 << (_SHIFT * i)
        out = {}
        for k, c in self.terms.items():
            e = decode(k, nv)[i]
            if e:
                out[k - unit] = _norm(c * e)
        return Poly(out, self.vars)

    def coefficients_in(self, var: str) -> dict:
        """Map power of ``var`` to coefficient polynomial in the remaining variables."""
        if var not in self.vars:
            return {0: self} if self.terms else {}
        i = self.vars.index(var)
        nv = len(self.vars)
        rest = tuple(v for v in self.vars if v != var)
        groups: dict = {}
        for k, c in self.terms.items():
            exps = decode(k, nv)
            e = exps[i]
            groups.setdefault(e, {})[encode(exps[:i] + exps[i + 1:])] = c
        return {e: Poly(t, rest) for e, t in groups.items()}

    def coefficient(self, var: str, power: int) -> "Poly":
        return self.coefficients_in(var).get(power, Poly({}, tuple(v for v in self.vars if v != var)))

    def subs(self, mapping: dict):
        """Substitute variables by scalars, polynomials or rational functions."""
        result = self
        for var, value in mapping.items():
            result = result._subs1(var, value)
        return result

    def _subs1(self, var, value):
        from .ratfunc import RationalFunction

        if var not in self.vars:
            return self
        groups = self.coefficients_in(var)
        if is_scalar(value):
            out = Poly({}, tuple(v for v in self.vars if v != var))
            for e in sorted(groups):
                if e < 0 and not value:
                    raise ZeroDivisionError("negative power of zero")
                out = out + groups[e] * _norm(Fraction(value) ** e)
            return out
        if isinstance(value, Poly):
            lo = min(groups)
            if lo < 0:
                raise DomainError("cannot substitute a polynomial into negative powers")
            out = Poly({}, ())
            cur = Poly({0: 1}, ())
            for e in range(0, max(groups) + 1):
                if e in groups:
                    out = out + groups[e] * cur
                cur = cur * value
            return out
        if isinstance(value, RationalFunction):
            num, den = value.num, value.den
            lo, hi = min(groups), max(groups)
            if lo < 0:
                raise DomainError("cannot substitute into negative powers")
            npow = [Poly({0: 1}, ())]
            dpow = [Poly({0: 1}, ())]
            for _ in range(hi):
                npow.append(npow[-1] * num)
                dpow.append(dpow[-1] * den)
            out = Poly({}, ())
            for e, g in groups.items():
                out = out + g * npow[e] * dpow[hi - e]
            return RationalFunction(out, dpow[hi])
        raise TypeError(f"cannot substitute {type(value).__name__}")

    def evaluate(self, values: dict):
        """Full evaluation at scalar values for every variable present."""
        r = self.subs(values)
        if isinstance(r, Poly):
            r = r.trimmed()
            if r.vars:
                raise DomainError(f"variables {r.vars} left unassigned")
            return r.constant_value()
        return r

    # univariate bridges -----------------------------------------------
    def to_dense(self, var: str) -> list:
        t = self.trimmed()
        if not t.terms:
            return []
        if t.vars and t.vars != (var,):
            raise DomainError(f"polynomial is not univariate in {var}")
        if not t.vars:
            return [t.terms[0]]
        deg = max(t.terms)
        if min(t.terms) < 0:
            raise DomainError("negative exponents")
        out = [0] * (deg + 1)
        for k, c in t.terms.items():
            out[k] = c
        return out

    def univariate_var(self):
        """The single variable this polynomial depends on, or None if constant; raises otherwise."""
        used = self.used_vars()
        if len(used) > 1:
            raise DomainError("polynomial is not univariate")
        return used[0] if used else None

    # integer structure ------------------------------------------------
    def denominator_lcm(self) -> int:
        m = 1
        for c in self.terms.values():
            if c.__class__ is Fraction:
                m = m * c.denominator // igcd(m, c.denominator)
        return m

    def content(self) -> Fraction:
        """Rational content: self = content * (integer primitive poly with positive leading coefficient)."""
        if not self.terms:
            return Fraction(0)
        m = self.denominator_lcm()
        g = 0
        for c in self.terms.values():
            g = igcd(g, int(c * m))
        c = Fraction(g, m)
        if self.leading_coefficient() < 0:
            c = -c
        return c

    def primitive(self) -> "Poly":
        if not self.terms:
            return self
        return self * (1 / self.content())

    # division ---------------------------------------------------------
    def exact_div(self, other) -> "Poly":
        if is_scalar(other):
            return self / other
        if not other:
            raise ZeroDivisionError("division by zero polynomial")
        if not self.terms:
            return self
        if other.is_constant():
            return self / other.constant_value()
        vs, ta, tb = self._aligned(other)
        nv = len(vs)
        if nv == 1 and min(ta) >= 0 and min(tb) >= 0:
            q, r = upoly.divmod_field(Poly(ta, vs).to_dense(vs[0]), Poly(tb, vs).to_dense(vs[0]))
            if r:
                raise DivisionError("inexact division")
            return Poly.from_dense(q, vs[0])
        qpos = vs.index("q") if "q" in vs else -1
        okey = {}

        def key_of(k):
            o = okey.get(k)
            if o is None:
                e = decode(k, nv)
                o = okey[k] = (sum(e), e)
            return o

        lb_k = max(tb, key=key_of)
        lb_e = key_of(lb_k)[1]
        lb_c = Fraction(tb[lb_k])
        rem = dict(ta)
        quo = {}
        blist = list(tb.items())
        while rem:
            lr_k = max(rem, key=key_of)
            lr_e = key_of(lr_k)[1]
            for i in range(nv):
                if lr_e[i] < lb_e[i] and i != qpos:
                    raise DivisionError("inexact division")
            qk = lr_k - lb_k
            qc = _norm(rem[lr_k] / lb_c)
            quo[qk] = qc
            for kb, cb in blist:
                k = qk + kb
                s = rem.get(k, 0) - qc * cb
                if s:
                    rem[k] = _norm(s)
                else:
                    rem.pop(k, None)
            if len(quo) > 10 * (len(ta) + 10) * (len(tb) + 10):
                raise DivisionError("inexact division")
        return Poly(quo, vs)

    # display ----------------------------------------------------------
    def __repr__(self):
        return f"Poly({self})"

    def __str__(self):
        if not self.terms:
            return "0"
        parts = []
        for exps, c in self.sorted_items():
            mono = "*".join(
                (v if e == 1 else f"{v}^{e}") for v, e in zip(self.vars, exps) if e
            )
            if not mono:
                s = str(c)
            elif c == 1:
                s = mono
            elif c == -1:
                s = "-" + mono
            else:
                s = f"{c}*{mono}" if c.__class__ is int else f"({c})*{mono}"
            parts.append(s)
        out = " + ".join(parts)
        return out.replace("+ -", "- ")


def var(name: str) -> Poly:
    return Poly.var(name)


def const(c) -> Poly:
    return Poly.const(c)


def as_poly(x) -> Poly:
    if isinstance(x, Poly):
        return x
    if is_scalar(x):
        return Poly.const(x)
    raise TypeError(f"not a polynomial: {x!r}")


# gcd ---------------------------------------------------------------------


def _laurent_shift(p: Poly):
    """Multiply by the q-power that clears negative q exponents."""
    if "q" in p.vars:
        lo = p.min_degree("q")
        if lo < 0:
            return p * Poly.from_terms(("q",), [((-lo,), 1)])
    return p


def poly_gcd(a, b) -> Poly:
    """Greatest common divisor, integer-primitive with positive leading coefficient."""
    a, b = as_poly(a), as_poly(b)
    if not a and not b:
        return Poly({}, ())
    a, b = _laurent_shift(a), _laurent_shift(b)
    if not a:
        return b.primitive().trimmed()
    if not b:
        return a.primitive().trimmed()
    a, b = a.trimmed(), b.trimmed()
    vs = _sorted_vars(a.vars + b.vars)
    if not vs:
        return Poly({0: 1}, ())
    if len(vs) == 1:
        g = upoly.gcd_z(a.to_dense(vs[0]) if a.vars else [a.constant_value()],
                        b.to_dense(vs[0]) if b.vars else [b.constant_value()])
        return Poly.from_dense(g, vs[0]).trimmed()
    return _mgcd(a.primitive(), b.primitive()).primitive().trimmed()


def _content_in(p: Poly, var: str) -> Poly:
    g = None
    for c in p.coefficients_in(var).values():
        g = c if g is None else poly_gcd(g, c)
        if g.is_constant():
            return Poly({0: 1}, ())
    return g.primitive()


def _mgcd(a: Poly, b: Poly) -> Poly:
    vs = _sorted_vars(a.used_vars() + b.used_vars())
    if not vs:
        return Poly({0: 1}, ())
    x = vs[0]
    da, db = a.degree(x), b.degree(x)
    if da == 0:
        return poly_gcd(a, _content_in(b, x))
    if db == 0:
        return poly_gcd(_content_in(a, x), b)
    ca, cb = _content_in(a, x), _content_in(b, x)
    pa, pb = a.exact_div(ca), b.exact_div(cb)
    gc = poly_gcd(ca, cb)
    if da < db:
        pa, pb = pb, pa
    # subresultant PRS: every division below is exact, so no per-step contents are needed
    g = h = Poly({0: 1}, ())
    while True:
        delta = pa.degree(x) - pb.degree(x)
        r = _prem(pa, pb, x)
        if not r:
            break
        if r.degree(x) == 0:
            return gc
        pa, pb = pb, r.exact_div(g * h ** delta)
        g = pa.coefficient(x, pa.degree(x))
        h = (g ** delta).exact_div(h ** (delta - 1)) if delta else h
    return (gc * pb.exact_div(_content_in(pb, x))).primitive()


def _prem(a: Poly, b: Poly, x: str) -> Poly:
    db = b.degree(x)
    lb = b.coefficient(x, db)
    xp = Poly.var(x)
    r = a
    steps = a.degree(x) - db + 1
    while r and r.degree(x) >= db:
        dr = r.degree(x)
        lr = r.coefficient(x, dr)
        r = r * lb - lr * (xp ** (dr - db)) * b
        steps -= 1
    # scale to exactly lc(b)^(deg a - deg b + 1), which the subresultant divisions rely on
    return r * lb ** steps if r and steps else r


def squarefree_check(p: Poly, var: str) -> bool:
    if not p:
        raise DomainError("zero polynomial")
    if p.degree(var) <= 0:
        return True
    return poly_gcd(p, p.diff(var)).degree(var) == 0

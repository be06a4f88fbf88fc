"""Rational functions: reduced quotients of polynomials with a monic denominator."""

from __future__ import annotations

from fractions import Fraction

from .poly import DomainError, Poly, _norm, as_poly, is_scalar, poly_gcd


class RationalFunction:
    __slots__ = ("num", "den", "_hash")

    def __init__(self, num, den=None, *, reduced: bool = False):
        num = as_poly(num)
        den = Poly({0: 1}, ()) if den is None else as_poly(den)
        if not den:
            raise ZeroDivisionError("zero denominator")
        if not reduced:
            num, den = _reduce(num, den)
        self.num = num
        self.den = den
        self._hash = None

    # conversion --------------------------------------------------------
    @classmethod
    def coerce(cls, x) -> "RationalFunction":
        if isinstance(x, RationalFunction):
            return x
        return cls(x)

    def is_polynomial(self) -> bool:
        return self.den.is_constant()

    def as_poly(self) -> Poly:
        if not self.den.is_constant():
            raise DomainError("not a polynomial")
        return self.num / self.den.constant_value()

    def __bool__(self):
        return bool(self.num)

    # arithmetic --------------------------------------------------------
    def __neg__(self):
        return RationalFunction(-self.num, self.den, reduced=True)

    def __add__(self, other):
        if is_scalar(other):
            if not other:
                return self
            return RationalFunction(self.num + self.den * other, self.den, reduced=True)
        if isinstance(other, Poly):
            if not other:
                return self
            return RationalFunction(self.num + self.den * other, self.den, reduced=True)
        if not isinstance(other, RationalFunction):
            return NotImplemented
        if not other.num:
            return self
        if not self.num:
            return other
        if self.den == other.den:
            return RationalFunction(self.num + other.num, self.den)
        if self.den.is_constant() or other.den.is_constant():
            return RationalFunction(self.num * other.den + other.num * self.den, self.den * other.den)
        g = poly_gcd(self.den, other.den)
        if g.is_constant():
            return RationalFunction(
                self.num * other.den + other.num * self.den, self.den * other.den
            )
        d1 = self.den.exact_div(g)
        d2 = other.den.exact_div(g)
        return RationalFunction(self.num * d2 + other.num * d1, d1 * other.den)

    __radd__ = __add__

    def __sub__(self, other):
        return self + (-other)

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        if is_scalar(other):
            if not other:
                return RationalFunction(Poly({}, ()), reduced=True)
            return RationalFunction(self.num * other, self.den, reduced=True)
        if isinstance(other, Poly):
            other = RationalFunction(other, reduced=True)
        if not isinstance(other, RationalFunction):
            return NotImplemented
        if not self.num or not other.num:
            return RationalFunction(Poly({}, ()), reduced=True)
        # cross-cancel before multiplying to keep sizes small
        g1 = _gcd_or_one(self.num, other.den)
        g2 = _gcd_or_one(other.num, self.den)
        n = _div(self.num, g1) * _div(other.num, g2)
        d = _div(self.den, g2) * _div(other.den, g1)
        lc = Fraction(d.leading_coefficient())
        if lc != 1:
            n, d = n * (1 / lc), d * (1 / lc)
        return RationalFunction(n, d, reduced=True)

    __rmul__ = __mul__

    def inverse(self) -> "RationalFunction":
        if not self.num:
            raise ZeroDivisionError("inverse of zero")
        n, d = self.den, self.num
        lc = Fraction(d.leading_coefficient())
        return RationalFunction(n * (1 / lc), d * (1 / lc), reduced=True)

    def __truediv__(self, other):
        if is_scalar(other):
            if not other:
                raise ZeroDivisionError("division by zero")
            return self * (1 / Fraction(other))
        return self * RationalFunction.coerce(other).inverse()

    def __rtruediv__(self, other):
        return RationalFunction.coerce(other) * self.inverse()

    def __pow__(self, e: int):
        if e < 0:
            return self.inverse() ** (-e)
        return RationalFunction(self.num ** e, self.den ** e, reduced=True)

    # comparison --------------------------------------------------------
    def __eq__(self, other):
        if is_scalar(other) or isinstance(other, Poly):
            return self.num == self.den * other
        if isinstance(other, RationalFunction):
            return self.num == other.num and self.den == other.den
        return NotImplemented

    def __hash__(self):
        if self._hash is None:
            if self.den == 1:
                self._hash = hash(self.num)
            else:
                self._hash = hash((self.num, self.den))
        return self._hash

    # evaluation --------------------------------------------------------
    def subs(self, mapping: dict):
        n = self.num.subs(mapping)
        d = self.den.subs(mapping)
        if isinstance(d, Poly) and not d:
            raise ZeroDivisionError("substitution hits a pole")
        if isinstance(d, RationalFunction) and not d.num:
            raise ZeroDivisionError("substitution hits a pole")
        out = RationalFunction.coerce(n) / d
        if out.den == 1:
            return out.num
        return out

    def evaluate(self, values: dict):
        d = self.den.evaluate(values)
        if not d:
            raise ZeroDivisionError("evaluation at a pole")
        return _norm(Fraction(self.num.evaluate(values)) / d)

    def __repr__(self):
        return f"RationalFunction({self})"

    def __str__(self):
        if self.den == 1:
            return str(self.num)
        return f"({self.num})/({self.den})"


def _div(a: Poly, g):
    return a if g is None else a.exact_div(g)


def _gcd_or_one(a: Poly, b: Poly):
    if b.is_constant() or a.is_constant():
        return None
    g = poly_gcd(a, b)
    return None if g.is_constant() else g


def _reduce(num: Poly, den: Poly):
    if not num:
        return Poly({}, ()), Poly({0: 1}, ())
    if not den.is_constant():
        g = poly_gcd(num, den)
        if not g.is_constant():
            num = num.exact_div(g)
            den = den.exact_div(g)
    if "q" in num.used_vars() or "q" in den.used_vars():
        # q^k is a unit for Laurent inputs; pin it by making the lowest q exponent zero
        lo = min(p.min_degree("q") if "q" in p.vars else 0 for p in (num, den))
        if lo:
            shift = Poly.from_terms(("q",), [((-lo,), 1)])
            num, den = num * shift, den * shift
    lc = Fraction(den.leading_coefficient())
    if lc != 1:
        inv = 1 / lc
        num, den = num * inv, den * inv
    return num, den.trimmed() if den.is_constant() else den


def as_field_element(x):
    """Coerce polynomials to rational functions; leave scalars and rational functions alone."""
    if isinstance(x, Poly):
        if x.is_constant():
            return x.constant_value()
        return RationalFunction(x, reduced=True)
    return x

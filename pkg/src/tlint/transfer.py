"""The loop-model transfer operator T_n(u, beta) and what is read off from it.

T_n is the double-row operator with R(u) = 1 + u e and trivial boundary
weights.  It is assembled in TL_{n+1}: the auxiliary strand starts on the
right, is carried to the left by R_n ... R_1, back by R_1 ... R_n, and is
finally closed by the partial trace.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache

from .exactmath import (
    DomainError,
    Poly,
    RationalFunction,
    chebyshev,
    poly_gcd,
    q_integer,
    taylor_shift,
)
from .exactmath import upoly
from .tlcore import BETA, InternalError, TLElement, e, identity_diagram, one

U = Poly.var("u")
V = Poly.var("v")
Q = Poly.var("q")
X = Poly.var("x")


@dataclass
class TransferOperator:
    n: int
    element: TLElement

    def coefficient_elements(self) -> list:
        """a_0, ..., a_{2n} with T_n(u) = sum_i a_i u^i."""
        out = [dict() for _ in range(2 * self.n + 1)]
        for d, c in self.element.terms.items():
            for p, g in _as_poly(c).coefficients_in("u").items():
                out[p][d] = g
        return [TLElement(self.n, t, self.element.beta) for t in out]


@dataclass
class HamiltonianExpansion:
    u_star: object
    k: int
    scalar_poly: object  # in the variable "u", standing for epsilon
    principal: TLElement
    raw: TLElement
    normalization: str


def _as_poly(c) -> Poly:
    return c if isinstance(c, Poly) else Poly.const(c)


def r_operator(u=U, beta=BETA) -> TLElement:
    return one(2, beta) + e(2, 1, beta).scale(u)


def _double_row(n: int, factor, beta) -> TLElement:
    N = n + 1
    x = one(N, beta)
    for i in list(range(n, 0, -1)) + list(range(1, n + 1)):
        x = x * factor(N, i)
    return x.partial_trace()


@lru_cache(maxsize=None)
def _build(n: int, beta) -> TLElement:
    b = BETA if beta is None else beta

    def factor(N, i):
        return one(N, b) + e(N, i, b).scale(U)

    return _double_row(n, factor, b)


def build_transfer(n: int, beta=None) -> TransferOperator:
    """T_n(u) with symbolic beta, or with beta fixed to a rational number."""
    if n < 1:
        raise DomainError("n must be at least 1")
    if beta is not None:
        beta = Fraction(beta)
        beta = beta.numerator if beta.denominator == 1 else beta
    return TransferOperator(n, _build(n, beta))


def _swap_uv(c):
    return c.subs({"u": V}) if isinstance(c, Poly) else c


def commutator_check(n: int, mutate: bool = False) -> bool:
    """[T_n(u), T_n(v)] == 0 identically in u, v, beta.

    With ``mutate`` one R-factor of the upper row is replaced by
    1 + u e + u^2 e (the other factors keep R(u)); the check must then fail.
    Replacing every factor that way would only reparametrise u.
    """
    if mutate:
        seen = []

        def factor(N, i):
            r = one(N) + e(N, i).scale(U)
            if i == 1 and not seen:
                seen.append(i)
                r = r + e(N, i).scale(U * U)
            return r

        t = _double_row(n, factor, BETA)
    else:
        t = build_transfer(n).element
    tv = t.map_coeffs(_swap_uv)
    return not (t * tv - tv * t)


def palindromic(T: TransferOperator) -> bool:
    a = T.coefficient_elements()
    n = T.n
    return all(a[2 * n - i] == a[i] for i in range(n))


def _times_un_at_u_plus_inverse(p: Poly, n: int) -> Poly:
    """u^n p(u + 1/u) for p of x-degree at most n."""
    out = Poly.const(0)
    for j, g in p.coefficients_in("x").items():
        if j > n:
            raise DomainError("x-degree exceeds n")
        out = out + g * (U * U + 1) ** j * U ** (n - j)
    return out


def crossing_and_tt(n: int) -> dict:
    """Check a_{2n-i} = a_i and build Ttilde_n(x) with T_n(u) = u^n Ttilde_n(u + 1/u)."""
    T = build_transfer(n)
    if not palindromic(T):
        raise InternalError(f"T_{n} is not palindromic")
    a = T.coefficient_elements()
    tt = a[n]
    for i in range(1, n + 1):
        ch = chebyshev("T", i, "x").subs({"x": X / 2})
        tt = tt + a[n - i].scale(2 * ch)
    for d, c in T.element.terms.items():
        if _times_un_at_u_plus_inverse(_as_poly(tt.coeff(d)), n) != c:
            raise InternalError("substitution check of Ttilde failed")
    return {"palindrome": True, "tt": tt}


def scalar_part(n: int, beta=BETA):
    return beta * q_integer(n + 1, "u", 2) + 2 * U * q_integer(n, "u", 2)


def prefactor(beta=BETA):
    """u (beta + 2u)(2 + beta u), the common factor of all non-identity coefficients."""
    return U * (beta + 2 * U) * (2 + beta * U)


def gamma_decompose(n: int) -> dict:
    if n < 2:
        raise DomainError("n must be at least 2")
    T = build_transfer(n).element
    scalar = scalar_part(n)
    if T.identity_coeff() != scalar:
        raise InternalError("identity coefficient differs from the scalar part")
    f = prefactor()
    gammas = {}
    for d, c in T.non_identity().terms.items():
        try:
            gammas[d] = c.exact_div(f)
        except ArithmeticError as exc:
            raise InternalError(f"coefficient of {d} not divisible by u(beta+2u)(2+beta u)") from exc
    return {"scalar": scalar, "gammas": gammas}


@dataclass
class IdentityPoints:
    points: frozenset
    gcd: Poly
    residual: Poly  # part of the gcd without rational roots (constant when fully split)


def identity_points(n: int, beta) -> IdentityPoints:
    """Roots of the u-gcd of all non-identity coefficients of T_n(u, beta)."""
    if n < 2:
        raise DomainError("n must be at least 2")
    T = build_transfer(n, beta).element
    g = Poly.const(0)
    for c in T.non_identity().terms.values():
        g = poly_gcd(g, _as_poly(c))
    dense = g.to_dense("u") if g else [0]
    roots = upoly.rational_roots(dense) if g and g.degree("u") > 0 else []
    rest = dense
    for r in roots:
        while True:
            q, rem = upoly.divmod_field(rest, [-r, 1])
            if any(rem):
                break
            rest = q
    residual = Poly.from_dense(upoly.monic(rest), "u") if g else Poly.const(0)
    return IdentityPoints(frozenset(roots), g, residual)


def expected_identity_points(beta) -> frozenset:
    b = Fraction(beta)
    if b == 0:
        return frozenset({Fraction(0)})
    if b in (2, -2):
        return frozenset({Fraction(0), -b / 2})
    return frozenset({Fraction(0), -b / 2, -2 / b})


# hamiltonian limits ----------------------------------------------------------------


def _classify(u_star, beta):
    """Name u_star as '0', '-beta/2' or '-2/beta' (None when it is none of these)."""
    if not u_star:
        return "0"
    if isinstance(beta, Poly):
        half, inv = -BETA / 2, RationalFunction(Poly.const(-2), BETA)
    else:
        half = -Fraction(beta) / 2
        inv = Fraction(-2) / beta if beta else None
    if u_star == half:
        return "-beta/2"
    if inv is not None and u_star == inv:
        return "-2/beta"
    return None


def _u_coeff(c, k: int):
    """Coefficient of u^k in a polynomial or in a rational function with u-free denominator."""
    if isinstance(c, RationalFunction):
        if "u" in c.den.used_vars():
            raise InternalError("denominator depends on u")
        num = c.num.coefficient("u", k)
        return RationalFunction(num, c.den) if num else 0
    if isinstance(c, Poly):
        return c.coefficient("u", k)
    return c if k == 0 else 0


def _simplify(c):
    if isinstance(c, RationalFunction) and c.den.is_constant():
        c = c.num / c.den.constant_value()
    if isinstance(c, Poly) and c.is_constant():
        return c.constant_value()
    return c


def normalization_constant(n: int, kind: str, normalization: str, beta, renormalized: bool = False):
    if normalization == "raw":
        return 1
    if normalization == "h0":
        if kind != "0":
            raise DomainError("h0 normalization applies only at u* = 0")
        return -2 if renormalized else -2 * beta
    if normalization == "hbeta":
        if beta == 2 or beta == -2 or not beta:
            raise DomainError("hbeta normalization needs beta not in {0, 2, -2}")
        if kind == "-2/beta":
            us = RationalFunction(Poly.const(-2), BETA) if isinstance(beta, Poly) else Fraction(-2) / beta
            return (beta * beta - 4) * us ** (n - 1)
        if kind == "-beta/2":
            return (beta * beta - 4) * (beta / 2) * (-beta / 2) ** (n - 2)
        raise DomainError("hbeta normalization applies at u* = -beta/2 or -2/beta")
    raise DomainError(f"unknown normalization {normalization!r}")


def hamiltonian_at(n: int, u_star, normalization: str = "raw", beta=None) -> HamiltonianExpansion:
    """Expand T_n(u* + eps) = p(eps) 1 + eps^k H + O(eps^{k+1}) and normalise the principal part.

    ``beta=None`` keeps beta symbolic.  At beta = 0 and u* = 0 the operator
    T_n(eps, 0) / (2 eps) is expanded instead, since T_n(0, 0) vanishes.
    """
    if n < 2:
        raise DomainError("n must be at least 2")
    T = build_transfer(n, beta).element
    b = BETA if beta is None else T.beta
    renormalized = False
    if beta is not None and not b and not u_star:
        T = T.map_coeffs(lambda c: _as_poly(c).exact_div(2 * U))
        renormalized = True
    kind = _classify(u_star, b)
    shifted = T.map_coeffs(lambda c: taylor_shift(_as_poly(c), "u", u_star))
    one_d = identity_diagram(n)
    for c in shifted.non_identity().terms.values():
        if _u_coeff(c, 0):
            raise DomainError(f"u* = {u_star} is not an identity point")
    k = None
    for j in range(1, 4 * n + 2):
        if any(_u_coeff(c, j) for c in shifted.non_identity().terms.values()):
            k = j
            break
    if k is None:
        raise DomainError("T_n is scalar")
    order_k = TLElement(n, {d: _simplify(_u_coeff(c, k)) for d, c in shifted.terms.items()}, T.beta)
    idc = shifted.terms.get(one_d, 0)
    scalar = sum((_u_coeff(idc, j) * U ** j for j in range(k + 1)), Poly.const(0))
    const = normalization_constant(n, kind, normalization, b, renormalized)
    inv = 1 / RationalFunction.coerce(const) if not isinstance(const, (int, Fraction)) else Fraction(1, 1) / const
    principal = order_k.non_identity().map_coeffs(lambda c: _simplify(c * inv))
    return HamiltonianExpansion(u_star, k, _simplify(scalar), principal, order_k, normalization)


def h0(n: int, beta=BETA) -> TLElement:
    out = TLElement(n, {}, beta)
    for i in range(1, n):
        out = out - e(n, i, beta)
    return out


def hbeta(n: int) -> TLElement:
    """h_{-2/beta} for symbolic beta."""
    us = RationalFunction(Poly.const(-2), BETA)
    return hamiltonian_at(n, us, "hbeta").principal


# braid limit and isotropic point ------------------------------------------------------


def braid_element(n: int, verify: bool = True) -> TLElement:
    """F_n = q^{-n} T_n(-q) with beta = q + 1/q."""
    if n < 2:
        raise DomainError("n must be at least 2")
    T = build_transfer(n).element
    qb = Q + Q ** -1
    qn = Q ** -n
    F = TLElement(n, {d: _as_poly(c).subs({"beta": qb, "u": -Q}) * qn for d, c in T.terms.items()}, qb)
    if verify:
        Fbar = TLElement(n, {d: _as_poly(c).subs({"beta": qb, "u": -(Q ** -1)}) * Q ** n for d, c in T.terms.items()}, qb)
        if Fbar != F:
            raise InternalError("F_n differs from its bar image")
        for i in range(1, n):
            g = e(n, i, qb)
            if g * F != F * g:
                raise InternalError(f"F_{n} does not commute with e_{i}")
    return F


def isotropic_value(n: int, beta=None) -> TLElement:
    T = build_transfer(n, beta).element
    return T.map_coeffs(lambda c: _simplify(_as_poly(c).subs({"u": 1})))

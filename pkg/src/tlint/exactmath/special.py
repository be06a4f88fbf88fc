"""Chebyshev polynomials, q-integers and (double) factorial helpers."""

from __future__ import annotations

from fractions import Fraction
from functools import lru_cache
from math import comb

from .poly import DomainError, Poly


@lru_cache(maxsize=None)
def chebyshev(kind: str, k: int, var: str = "x") -> Poly:
    """U_k or T_k via P_{k+1} = 2x P_k - P_{k-1}."""
    if k < 0:
        raise DomainError("k must be non-negative")
    if kind not in ("U", "T"):
        raise DomainError("kind must be 'U' or 'T'")
    x = Poly.var(var)
    p0 = Poly.const(1)
    if k == 0:
        return p0
    p1 = 2 * x if kind == "U" else x
    for _ in range(k - 1):
        p0, p1 = p1, 2 * x * p1 - p0
    return p1


@lru_cache(maxsize=None)
def cheb_u_half_beta(k: int) -> Poly:
    """U_k(beta/2) as a polynomial in beta (integer coefficients)."""
    if k < 0:
        raise DomainError("k must be non-negative")
    b = Poly.var("beta")
    p0, p1 = Poly.const(1), b
    if k == 0:
        return p0
    for _ in range(k - 1):
        p0, p1 = p1, b * p1 - p0
    return p1


def q_integer(k: int, var: str = "u", power: int = 1) -> Poly:
    """[k]_{var^power} = 1 + t + ... + t^{k-1} with t = var^power."""
    return Poly.from_terms((var,), [((power * i,), 1) for i in range(k)])


def double_factorial(n: int) -> int:
    if n < -1:
        raise DomainError("double factorial undefined below -1")
    out = 1
    while n > 1:
        out *= n
        n -= 2
    return out


def double_factorial_binom(n1: int, n2: int) -> Fraction:
    """n1!! / (n2!! (n1-n2)!!) with (-1)!! = 1."""
    if n1 < -1 or n2 < 0 or n2 % 2:
        raise DomainError("need n1 >= -1 and n2 even and non-negative")
    if n1 - n2 < -1:
        raise DomainError("n1 - n2 must be at least -1")
    out = Fraction(double_factorial(n1), double_factorial(n2) * double_factorial(n1 - n2))
    return out.numerator if out.denominator == 1 else out


def catalan(n: int) -> int:
    return comb(2 * n, n) // (n + 1)


def central_binomial(n: int) -> int:
    """c_n = binom(n, floor(n/2))."""
    return comb(n, n // 2)

"""Exact scalars, polynomials, rational functions and linear algebra."""

from .interp import ReconstructionError, interpolate_reconstruct, reconstruct_adaptive
from .linalg import SolveResult, charpoly, determinant, inverse, kernel_basis, rank, solve_linear
from .matrix import DimError, Matrix, eval_poly_at_matrix
from .poly import (
    VARIABLES,
    DivisionError,
    DomainError,
    Poly,
    as_poly,
    const,
    is_scalar,
    poly_gcd,
    squarefree_check,
    var,
)
from .ratfunc import RationalFunction
from .special import (
    catalan,
    central_binomial,
    cheb_u_half_beta,
    chebyshev,
    double_factorial,
    double_factorial_binom,
    q_integer,
)


def poly_arith(a, b, op: str):
    """Dispatch add/mul/exact_div/gcd on polynomials."""
    a, b = as_poly(a), as_poly(b)
    if op == "add":
        return a + b
    if op == "mul":
        return a * b
    if op == "exact_div":
        return a.exact_div(b)
    if op == "gcd":
        return poly_gcd(a, b)
    raise DomainError(f"unknown op {op!r}")


def taylor_shift(p, var_name: str, center):
    """p(center + var) with the shifted variable keeping its name.

    Scalar or polynomial centers give a Poly; a rational-function center gives
    a RationalFunction whose denominator is a power of the center's.
    """
    p = as_poly(p)
    v = Poly.var(var_name)
    if isinstance(center, RationalFunction):
        if center.den.is_constant():
            center = center.as_poly()
        else:
            return p.subs({var_name: RationalFunction(v * center.den + center.num, center.den)})
    return p.subs({var_name: v + center})


__all__ = [
    "VARIABLES",
    "DimError",
    "DivisionError",
    "DomainError",
    "Matrix",
    "Poly",
    "RationalFunction",
    "ReconstructionError",
    "SolveResult",
    "as_poly",
    "catalan",
    "central_binomial",
    "cheb_u_half_beta",
    "charpoly",
    "chebyshev",
    "const",
    "determinant",
    "double_factorial",
    "double_factorial_binom",
    "eval_poly_at_matrix",
    "interpolate_reconstruct",
    "inverse",
    "is_scalar",
    "kernel_basis",
    "poly_arith",
    "poly_gcd",
    "q_integer",
    "rank",
    "reconstruct_adaptive",
    "solve_linear",
    "squarefree_check",
    "taylor_shift",
    "var",
]

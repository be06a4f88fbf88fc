"""Interpolation and rational reconstruction from exact samples."""

from __future__ import annotations

from fractions import Fraction

from . import upoly
from .poly import Poly
from .ratfunc import RationalFunction


class ReconstructionError(ArithmeticError):
    pass


def interpolate_reconstruct(samples, degree_bound, var: str = "beta", den_bound: int = 0):
    """Recover a polynomial (``den_bound == 0``) or rational function from samples.

    ``degree_bound`` bounds the numerator degree.  When there is a sample to
    spare, the last one is held out and must be reproduced; with exactly
    ``degree_bound + 1`` samples the polynomial interpolant is unique and is
    returned as is.
    """
    samples = [(Fraction(p), Fraction(v)) for p, v in samples]
    if len({p for p, _ in samples}) != len(samples):
        raise ValueError("sample points must be distinct")
    if den_bound == 0 and len(samples) == degree_bound + 1:
        pts = [p for p, _ in samples]
        return Poly.from_dense(upoly.interpolate(pts, [v for _, v in samples]), var)
    need = degree_bound + den_bound + 2
    if len(samples) < need:
        raise ValueError(f"need at least {need} samples, got {len(samples)}")
    fit, (hp, hv) = samples[:-1], samples[-1]
    pts = [p for p, _ in fit]
    vals = [v for _, v in fit]
    if den_bound == 0:
        coeffs = upoly.interpolate(pts, vals)
        if len(coeffs) - 1 > degree_bound:
            raise ReconstructionError("interpolant exceeds the degree bound")
        if upoly.evaluate(coeffs, hp) != hv:
            raise ReconstructionError("held-out sample mismatch")
        return Poly.from_dense(coeffs, var)
    res = upoly.rational_reconstruct(pts, vals, degree_bound, den_bound)
    if res is None:
        raise ReconstructionError("no rational function within the bounds")
    num, den = res
    dv = upoly.evaluate(den, hp)
    if dv == 0 or Fraction(upoly.evaluate(num, hp)) / dv != hv:
        raise ReconstructionError("held-out sample mismatch")
    n = Poly.from_dense(num, var)
    d = Poly.from_dense(den, var)
    if d.is_constant():
        return n / d.constant_value()
    return RationalFunction(n, d)


def reconstruct_adaptive(fn, points, start_bound: int, var: str = "beta", max_bound: int = 4096):
    """Rational reconstruction with doubling bounds.

    ``fn(point)`` returns the exact value; ``points`` is an iterator of
    distinct sample points.  Bounds for numerator and denominator are equal
    and doubled until a reconstruction survives the held-out check.
    """
    samples = []
    bound = max(start_bound, 1)
    it = iter(points)
    while bound <= max_bound:
        while len(samples) < 2 * bound + 3:
            p = next(it)
            samples.append((p, fn(p)))
        try:
            return interpolate_reconstruct(samples, bound, var, den_bound=bound)
        except ReconstructionError:
            bound *= 2
    raise ReconstructionError("degree bound exhausted")

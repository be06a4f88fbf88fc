"""Minimal polynomials, spectra and polynomial expressions of T_n(u) in a hamiltonian.

Everything here is exact.  Three kinds of coefficient fields appear:
rationals (beta specialised), Q(beta) handled directly by elimination over
rational functions, and Q(beta) reached by exact evaluation at integer beta
followed by interpolation or rational reconstruction.  Interpolated results
are always certified afterwards, either by a proven degree bound or by an
exact symbolic round trip.
"""

from __future__ import annotations

import random
from dataclasses import dataclass, field
from fractions import Fraction

from .exactmath import (
    DimError,
    DomainError,
    Matrix,
    Poly,
    RationalFunction,
    ReconstructionError,
    chebyshev,
    charpoly,
    eval_poly_at_matrix,
    interpolate_reconstruct,
    inverse,
    poly_gcd,
    rank,
)
from .exactmath import modular, upoly
from .exactmath.special import central_binomial
from .tlcore import BETA, InternalError, TLElement, enumerate_diagrams, jones_wenzl
from .tlrep import rep_matrix
from .transfer import build_transfer, crossing_and_tt, h0, hbeta, prefactor

H = Poly.var("h")
U = Poly.var("u")
X = Poly.var("x")


def _simplify(x):
    if isinstance(x, RationalFunction):
        if x.den.is_constant():
            x = x.num / x.den.constant_value()
        else:
            return x
    if isinstance(x, Poly):
        return x.constant_value() if x.is_constant() else x
    if x.__class__ is Fraction and x.denominator == 1:
        return x.numerator
    return x


def _is_rational(x) -> bool:
    return isinstance(x, (int, Fraction))


def _div(a, b):
    if _is_rational(a) and _is_rational(b):
        return _simplify(Fraction(a) / b)
    return _simplify(RationalFunction.coerce(a) / b)


def _as_poly(c) -> Poly:
    return c if isinstance(c, Poly) else Poly.const(c)


def _eval_beta(x, b):
    """Value of a scalar / Poly / RationalFunction in beta at beta = b."""
    if _is_rational(x):
        return x
    return _simplify(x.evaluate({"beta": b}) if isinstance(x, RationalFunction) else x.evaluate({"beta": b}))


def specialize(a: TLElement, b) -> TLElement:
    """Fix beta = b in the loop value and in every coefficient."""
    b = _simplify(Fraction(b))
    terms = {}
    for d, c in a.terms.items():
        if isinstance(c, (Poly, RationalFunction)):
            c = _simplify(c.subs({"beta": b}))
        terms[d] = c
    return TLElement(a.n, terms, b)


def rho(a: TLElement) -> Matrix:
    return rep_matrix(a).matrix


def hamiltonian(n: int, ham: str = "h0", beta=None) -> TLElement:
    """h0 = -sum e_i, or h_{-2/beta}; symbolic unless ``beta`` is given."""
    if ham == "h0":
        h = h0(n)
    elif ham == "hbeta":
        if beta is not None and not beta:
            raise DomainError("h_{-2/beta} is undefined at beta = 0")
        h = hbeta(n)
    else:
        raise DomainError(f"unknown hamiltonian {ham!r}")
    return h if beta is None else specialize(h, beta)


# minimal polynomials ---------------------------------------------------------------


@dataclass
class MinPolyResult:
    coeffs: list  # monic, lowest degree first; entries rational or in Q(beta)
    degree: int
    squarefree: bool
    certificate: str  # "evaluated": m(M) computed and zero; "cayley-hamilton": m is the charpoly
    field: str  # "Q" or "Q(beta)"

    @property
    def poly(self):
        """m as a Poly in h (and beta), or a RationalFunction when coefficients have denominators."""
        den = Poly.const(1)
        for c in self.coeffs:
            if isinstance(c, RationalFunction):
                den = _lcm(den, c.den)
        num = Poly.const(0)
        for i, c in enumerate(self.coeffs):
            if c:
                num = num + _as_poly(_simplify(RationalFunction.coerce(c) * den)) * H ** i
        if den.is_constant():
            return num
        return RationalFunction(num, den)

    def coefficient(self, i: int):
        return self.coeffs[i] if i < len(self.coeffs) else 0


def _lcm(a: Poly, b: Poly) -> Poly:
    if a.is_constant():
        return b
    if b.is_constant():
        return a
    g = poly_gcd(a, b)
    out = (a * b).exact_div(g)
    return out / Fraction(out.leading_coefficient())


def _reduce_against(vec: list, basis: list):
    """Reduce vec by echelon rows (pivot, row, combo); return (residual, combo of vec)."""
    r = list(vec)
    combo = {}
    for piv, row, rc in basis:
        x = r[piv]
        if x:
            f = _div(x, row[piv])
            for j, y in enumerate(row):
                if y:
                    r[j] = _simplify(r[j] - f * y)
            for k, y in rc.items():
                combo[k] = _simplify(combo.get(k, 0) - f * y)
    return r, combo


def _local_minpoly(M: Matrix, v: list) -> list:
    """Monic minimal polynomial of the vector v under M (lowest degree first)."""
    basis = []
    w = list(v)
    k = 0
    while True:
        r, combo = _reduce_against(w, basis)
        combo[k] = _simplify(combo.get(k, 0) + 1)
        piv = next((j for j, x in enumerate(r) if x), None)
        if piv is None:
            return [_simplify(combo.get(i, 0)) for i in range(k + 1)]
        basis.append((piv, r, combo))
        w = M.apply(w)
        k += 1


def _upoly_lcm(a: list, b: list) -> list:
    g = upoly.monic(upoly.gcd_z(a, b))
    q, rem = upoly.divmod_field(upoly.mul(a, b), g)
    if rem:
        raise InternalError("lcm division not exact")
    return upoly.monic(q)


def _field_of(M: Matrix) -> str:
    return "Q" if all(_is_rational(x) for _, _, x in M.entries()) else "Q(beta)"


def _probe(rng, dim):
    return [rng.randint(-9, 9) or 1 for _ in range(dim)]


def _minpoly_rational(M: Matrix, seed: int, probes: int, evaluate_up_to: int) -> MinPolyResult:
    dim = M.nrows
    rng = random.Random(seed)
    m = [1]
    for _ in range(probes):
        m = _upoly_lcm(m, _local_minpoly(M, _probe(rng, dim)))
        if len(m) - 1 == dim:
            break
    if len(m) - 1 == dim:
        cert = "cayley-hamilton"
    else:
        cert = "evaluated"
        while True:
            R = eval_poly_at_matrix(m, M)
            bad = next((j for j in range(dim) if any(R.rows[i].get(j) for i in range(dim))), None)
            if bad is None:
                break
            m = _upoly_lcm(m, _local_minpoly(M, [1 if i == bad else 0 for i in range(dim)]))
    if cert == "cayley-hamilton" and dim <= evaluate_up_to:
        if not eval_poly_at_matrix(m, M).is_zero():
            raise InternalError("minimal polynomial does not annihilate")
        cert = "evaluated"
    sq = len(upoly.gcd_z(m, upoly.deriv(m))) == 1
    return MinPolyResult(m, len(m) - 1, sq, cert, "Q")


def _poly_lcm_in_h(a: list, b: list) -> list:
    """LCM over Q(beta) of two monic polynomials in h given as coefficient lists."""
    def cleared(c):
        den = Poly.const(1)
        for x in c:
            if isinstance(x, RationalFunction):
                den = _lcm(den, x.den)
        return sum((_as_poly(_simplify(RationalFunction.coerce(x) * den)) * H ** i for i, x in enumerate(c) if x), Poly.const(0))

    pa, pb = cleared(a), cleared(b)
    g = poly_gcd(pa, pb)
    prod = (pa * pb).exact_div(g)
    coeffs = prod.coefficients_in("h")
    top = max(coeffs)
    lc = coeffs[top]
    return [_simplify(RationalFunction(coeffs.get(i, Poly.const(0)), lc)) for i in range(top + 1)]


def _minpoly_krylov_field(M: Matrix, seed: int, probes: int) -> MinPolyResult:
    dim = M.nrows
    rng = random.Random(seed)
    m = None
    for _ in range(probes):
        loc = _local_minpoly(M, _probe(rng, dim))
        m = loc if m is None else _poly_lcm_in_h(m, loc)
        if len(m) - 1 == dim:
            break
    cert = "cayley-hamilton" if len(m) - 1 == dim else "evaluated"
    while True:
        R = eval_poly_at_matrix(m, M)
        bad = next((j for j in range(dim) if any(R.rows[i].get(j) for i in range(dim))), None)
        if bad is None:
            break
        m = _poly_lcm_in_h(m, _local_minpoly(M, [1 if i == bad else 0 for i in range(dim)]))
    cert = "evaluated"
    return MinPolyResult(m, len(m) - 1, _squarefree_field(m), cert, "Q(beta)")


def _sample_points():
    k = 1
    while True:
        yield k
        yield -k
        k += 1


def _squarefree_field(m: list) -> bool:
    """Squarefree over Q(beta): certified by one specialisation, else an exact gcd."""
    deg = len(m) - 1
    tried = 0
    for b in _sample_points():
        try:
            mb = [_eval_beta(c, b) for c in m]
        except ZeroDivisionError:
            continue
        if len(upoly.gcd_z(mb, upoly.deriv(mb))) == 1:
            return True
        tried += 1
        if tried == 6:
            break
    p = MinPolyResult(m, deg, False, "", "Q(beta)").poly
    num = p.num if isinstance(p, RationalFunction) else p
    g = poly_gcd(num, num.diff("h"))
    return g.degree("h") == 0


def _charpoly_interpolated(M: Matrix) -> list:
    """det(h - M) over Q(beta) from exact charpolys at integer beta.

    With D the lcm of entry denominators and delta the largest beta-degree of
    D*M, the coefficient of h^{dim-i} in charpoly(D*M) has degree at most
    i*delta, so dim*delta + 1 samples determine it exactly.
    """
    dim = M.nrows
    D = Poly.const(1)
    for _, _, x in M.entries():
        if isinstance(x, RationalFunction):
            D = _lcm(D, x.den)
    Mp = M.map(lambda x: _simplify(RationalFunction.coerce(x) * D) if not _is_rational(x) else x * D)
    delta = max((_as_poly(x).degree("beta") for _, _, x in Mp.entries()), default=0)
    pts = []
    vals = []
    it = _sample_points()
    while len(pts) < dim * delta + 1:
        b = next(it)
        rows = [[_eval_beta(Mp[i, j], b) for j in range(dim)] for i in range(dim)]
        pts.append(b)
        vals.append(charpoly(rows))
    out = []
    for t in range(dim + 1):
        i = dim - t
        coeffs = upoly.interpolate(pts, [v[t] for v in vals])
        if len(coeffs) - 1 > i * delta:
            raise InternalError("charpoly coefficient exceeds its degree bound")
        c = Poly.from_dense(coeffs, "beta")
        out.append(_simplify(RationalFunction(c, D ** i)) if i else _simplify(c))
    return out


def _cyclic_somewhere(M: Matrix, seed: int, tries: int = 4) -> bool:
    """A cyclic vector at one beta certifies that M is non-derogatory over Q(beta)."""
    rng = random.Random(seed)
    dim = M.nrows
    tried = 0
    for b in _sample_points():
        if b in (0,):
            continue
        try:
            Mb = M.map(lambda x: _eval_beta(x, b))
        except ZeroDivisionError:
            continue
        if len(_local_minpoly(Mb, _probe(rng, dim))) - 1 == dim:
            return True
        tried += 1
        if tried == tries:
            return False
    return False


def minimal_polynomial(M: Matrix, *, seed: int = 0, probes: int = 3, method: str = "auto",
                       evaluate_up_to: int = 40) -> MinPolyResult:
    """Monic minimal polynomial of an exact square matrix.

    Rational matrices: Krylov sequences of seeded random probes, combined by
    LCM.  The LCM always divides the true minimal polynomial, so either it
    has full degree (and is the characteristic polynomial) or m(M) = 0 is
    checked exactly, adding standard-basis probes until it holds.

    Matrices over Q(beta): ``method="krylov"`` runs the same procedure with
    rational-function arithmetic; ``"interpolate"`` computes the
    characteristic polynomial by interpolation under a proven degree bound
    and accepts it when a cyclic vector exists at some integer beta.
    ``"auto"`` uses Krylov up to dimension 6.
    """
    if M.nrows != M.ncols:
        raise DimError("square matrix required")
    if _field_of(M) == "Q":
        return _minpoly_rational(M, seed, probes, evaluate_up_to)
    if method == "auto":
        method = "krylov" if M.nrows <= 6 else "interpolate"
    if method == "krylov":
        return _minpoly_krylov_field(M, seed, probes)
    if method != "interpolate":
        raise DomainError(f"unknown method {method!r}")
    if not _cyclic_somewhere(M, seed):
        return _minpoly_krylov_field(M, seed, probes)
    m = _charpoly_interpolated(M)
    cert = "cayley-hamilton"
    if M.nrows <= 12:
        if not eval_poly_at_matrix(m, M).is_zero():
            raise InternalError("interpolated characteristic polynomial does not annihilate")
        cert = "evaluated"
    return MinPolyResult(m, len(m) - 1, _squarefree_field(m), cert, "Q(beta)")


def spectrum_nondegenerate(M, primes=modular.PRIMES[:3]) -> bool:
    """True iff the characteristic polynomial of a rational matrix is squarefree.

    A squarefree reduction modulo a prime certifies it; otherwise the exact
    characteristic polynomial decides.
    """
    rows = M.to_dense() if isinstance(M, Matrix) else [list(r) for r in M]
    den = 1
    for r in rows:
        for x in r:
            if x.__class__ is Fraction:
                den = den * x.denominator // _gcd(den, x.denominator)
    if den != 1:
        rows = [[x * den for x in r] for r in rows]
    for p in primes:
        cp = modular.charpoly_mod_p(modular.to_mod_array(rows, p), p)
        if modular.squarefree_mod_p(cp, p):
            return True
    cp = charpoly(rows)
    return len(upoly.gcd_z(cp, upoly.deriv(cp))) == 1


def _gcd(a: int, b: int) -> int:
    from math import gcd

    return gcd(a, b)


def centralizer_dimension(h: TLElement, n: int, beta) -> int:
    """dim {x in TL_n : [x, h] = 0} at a rational beta, by an exact rank computation."""
    hb = specialize(h, beta)
    diagrams = enumerate_diagrams(n)
    index = {d: i for i, d in enumerate(diagrams)}
    cols = []
    for d in diagrams:
        x = TLElement.diagram(d, beta=hb.beta)
        c = x * hb - hb * x
        col = [0] * len(diagrams)
        for q, v in c.terms.items():
            col[index[q]] = v
        cols.append(col)
    rows = [list(r) for r in zip(*cols)]
    return len(diagrams) - rank(rows)


# powers of an element inside TL_n ---------------------------------------------------------


class PowerBasis:
    """Echelon form of 1, h, h^2, ... in the diagram basis until the first dependency.

    ``degree`` is the degree of the minimal polynomial of h in TL_n itself
    (no representation involved); ``minpoly`` is that polynomial.
    """

    def __init__(self, h: TLElement):
        self.n = h.n
        self.diagrams = enumerate_diagrams(h.n)
        self.index = {d: i for i, d in enumerate(self.diagrams)}
        self.basis = []
        self.powers = []
        p = TLElement.identity(h.n, h.beta)
        k = 0
        while True:
            r, combo = _reduce_against(self.vector(p), self.basis)
            combo[k] = _simplify(combo.get(k, 0) + 1)
            piv = next((j for j, x in enumerate(r) if x), None)
            if piv is None:
                self.minpoly = [_simplify(combo.get(i, 0)) for i in range(k + 1)]
                break
            self.basis.append((piv, r, combo))
            self.powers.append(p)
            p = p * h
            k += 1
        self.degree = k

    def vector(self, a: TLElement) -> list:
        v = [0] * len(self.diagrams)
        for d, c in a.terms.items():
            v[self.index[d]] = c
        return v

    def solve(self, a: TLElement):
        """Coefficients c with a = sum c_i h^i, or None if a is not a polynomial in h."""
        r, combo = _reduce_against(self.vector(a), self.basis)
        if any(r):
            return None
        return [_simplify(-combo.get(i, 0)) for i in range(self.degree)]


def _group_by_power(t: TLElement, var: str) -> dict:
    cols: dict = {}
    for d, c in t.terms.items():
        for j, g in _as_poly(c).coefficients_in(var).items():
            cols.setdefault(j, {})[d] = _simplify(g)
    return {j: TLElement(t.n, terms, t.beta) for j, terms in cols.items()}


def _express_numeric(t: TLElement, pb: PowerBasis, var: str):
    """Matrix c[i][j] with t = sum_{i,j} c[i][j] var^j h^i, or None when inconsistent."""
    cols = _group_by_power(t, var)
    top = max(cols, default=0)
    coef = [[0] * (top + 1) for _ in range(pb.degree)]
    for j, tj in cols.items():
        sol = pb.solve(tj)
        if sol is None:
            return None
        for i, c in enumerate(sol):
            coef[i][j] = c
    return coef


# polynomial expressions -------------------------------------------------------------------


@dataclass
class PolyExpression:
    """T = scalar*1 + (1/f) sum_{i>=1} coeffs[i-1] h^i, or status "inconsistent"."""

    scalar: object
    coeffs: list
    f: object
    status: str
    var: str = "u"
    degree: int = 0  # degree of the minimal polynomial of h used
    a: list = field(default_factory=list)  # coeffs[i] / prefactor, symbolic mode only
    prefactor: object = None

    def rebuild(self, h: TLElement) -> TLElement:
        """scalar*1 + (1/f) sum coeffs_i h^i (for checking)."""
        out = TLElement.identity(h.n, h.beta, self.scalar)
        p = TLElement.identity(h.n, h.beta)
        finv = 1 if self.f == 1 else RationalFunction(Poly.const(1), _as_poly(self.f))
        for c in self.coeffs:
            p = p * h
            if c:
                out = out + p.scale(_simplify(RationalFunction.coerce(c) * finv) if finv != 1 else c)
        return out


def _to_element(x) -> TLElement:
    return x.element if hasattr(x, "element") else x


def _poly_in(coeff_row: list, var: str):
    """sum_j coeff_row[j] var^j, returning a Poly or a RationalFunction."""
    v = Poly.var(var)
    den = Poly.const(1)
    for c in coeff_row:
        if isinstance(c, RationalFunction):
            den = _lcm(den, c.den)
    num = Poly.const(0)
    for j, c in enumerate(coeff_row):
        if c:
            num = num + _as_poly(_simplify(RationalFunction.coerce(c) * den)) * v ** j
    return num if den.is_constant() else RationalFunction(num, den)


def express_numeric(T, h: TLElement, beta, var: str = "u") -> PolyExpression:
    """Express T(var, beta) in powers of h at a rational beta."""
    t = specialize(_to_element(T), beta)
    hb = specialize(h, beta)
    pb = PowerBasis(hb)
    coef = _express_numeric(t, pb, var)
    if coef is None:
        return PolyExpression(None, [], 1, "inconsistent", var, pb.degree)
    scalar = _poly_in(coef[0], var)
    coeffs = [_poly_in(row, var) for row in coef[1:]]
    return PolyExpression(_simplify(scalar), coeffs, 1, "exact", var, pb.degree)


def _divide_dense(num: list, den: list):
    """Quotient and remainder of dense polynomials with field-element coefficients."""
    num = list(num)
    q = [0] * max(len(num) - len(den) + 1, 0)
    lead = RationalFunction.coerce(den[-1]).inverse()
    while len(num) >= len(den) and any(num):
        while num and not num[-1]:
            num.pop()
        if len(num) < len(den):
            break
        shift = len(num) - len(den)
        f = _simplify(num[-1] * lead)
        q[shift] = f
        for i, c in enumerate(den):
            if c:
                num[i + shift] = _simplify(num[i + shift] - f * c)
        num.pop()
    return q, [c for c in num if c]


def _dense_in(p, var: str) -> list:
    """Coefficient list in var of a Poly or RationalFunction (coefficients in the other variables)."""
    if isinstance(p, RationalFunction):
        inv = RationalFunction(Poly.const(1), p.den)
        d = p.num.coefficients_in(var)
        return [_simplify(inv * d.get(j, Poly.const(0))) for j in range(max(d) + 1)] if d else []
    d = _as_poly(p).coefficients_in(var)
    return [_simplify(d.get(j, Poly.const(0))) for j in range(max(d) + 1)] if d else []


def _sample_solve(t: TLElement, h: TLElement, var: str, b):
    """Coefficient matrix at beta = b, or None if h is undefined or t is not expressible there."""
    try:
        tb = specialize(t, b)
        hb = specialize(h, b)
    except ZeroDivisionError:
        return None, 0
    pb = PowerBasis(hb)
    return _express_numeric(tb, pb, var), pb.degree


def _reconstruct_all(t: TLElement, h: TLElement, var: str, start_bound: int = 8, max_bound: int = 1024):
    """Symbolic coefficient matrix c[i][j] in Q(beta) by sampling at integer beta."""
    samples = []  # (beta, coefficient matrix)
    generic = 0
    it = _sample_points()
    bound = start_bound
    while bound <= max_bound:
        while len(samples) < 2 * bound + 3:
            b = next(it)
            coef, deg = _sample_solve(t, h, var, b)
            if coef is None:
                continue
            if deg > generic:
                generic = deg
                samples = [(bb, c) for bb, c in samples if len(c) == deg]
            if deg < generic:
                continue
            samples.append((b, coef))
        rows = len(samples[0][1])
        cols = max(len(c[0]) for _, c in samples)
        out = [[0] * cols for _ in range(rows)]
        try:
            for i in range(rows):
                for j in range(cols):
                    pts = [(b, c[i][j] if j < len(c[i]) else 0) for b, c in samples]
                    if all(v == 0 for _, v in pts):
                        continue
                    r = interpolate_reconstruct(pts, bound, "beta", den_bound=bound)
                    out[i][j] = _simplify(r)
            return out, generic
        except ReconstructionError:
            bound *= 2
    raise ReconstructionError("degree bound exhausted")


def _extract_denominator(coeffs: list, var: str, divisor):
    """Divide each coefficient by ``divisor`` in Q(beta)[var]; return (f, a_i, ok)."""
    dden = _dense_in(divisor, var)
    quotients = []
    for c in coeffs:
        q, rem = _divide_dense(_dense_in(c, var), dden)
        if rem:
            return None, None
        quotients.append(q)
    f = Poly.const(1)
    for q in quotients:
        for c in q:
            if isinstance(c, RationalFunction):
                f = _lcm(f, c.den)
    a = []
    for q in quotients:
        row = [_simplify(RationalFunction.coerce(c) * f) if c else 0 for c in q]
        a.append(_poly_in(row, var))
    return _simplify(f), a


def express_in_polynomial(T, h: TLElement, mode: str = "symbolic_beta", beta=None,
                          var: str = "u", divisor=None, verify: bool = True) -> PolyExpression:
    """Write T as a polynomial in h.

    ``numeric_beta``: exact solve at the given rational beta; an inconsistent
    system means beta is exceptional for h.  ``symbolic_beta``: coefficients
    in Q(beta) from exact samples and rational reconstruction, then the
    common factor ``divisor`` (default u(beta+2u)(2+beta u)) is divided out
    and f is the monic lcm of the remaining beta-denominators.  With
    ``verify`` the result is checked by an exact symbolic round trip.
    """
    t = _to_element(T)
    if mode == "numeric_beta":
        if beta is None:
            raise DomainError("numeric mode needs beta")
        return express_numeric(t, h, beta, var)
    if mode != "symbolic_beta":
        raise DomainError(f"unknown mode {mode!r}")
    coef, deg = _reconstruct_all(t, h, var)
    scalar = _simplify(_poly_in(coef[0], var))
    coeffs = [_simplify(_poly_in(row, var)) for row in coef[1:]]
    divisor = prefactor() if divisor is None else divisor
    f, a = _extract_denominator(coeffs, var, divisor)
    if a is None:
        raise InternalError("coefficients are not divisible by the common factor")
    out = PolyExpression(scalar, [_simplify(RationalFunction.coerce(divisor) * ai) for ai in a],
                         f, "exact", var, deg, a, divisor)
    out.coeffs = [_simplify(RationalFunction.coerce(c) / _as_poly(f)) * _as_poly(f) if f != 1 else c
                  for c in out.coeffs]
    if verify and not verify_expression(out, t, h):
        raise InternalError("round trip of the polynomial expression failed")
    return out


def verify_expression(expr: PolyExpression, t: TLElement, h: TLElement) -> bool:
    """f (T - scalar 1) == divisor * sum a_i h^i, exactly."""
    fpoly = _as_poly(expr.f)
    lhs = (t - TLElement.identity(t.n, t.beta, expr.scalar)).scale(fpoly) if fpoly != 1 else t - TLElement.identity(t.n, t.beta, expr.scalar)
    rhs = TLElement(t.n, {}, t.beta)
    p = TLElement.identity(t.n, t.beta)
    for ai in expr.a:
        p = p * h
        if ai:
            rhs = rhs + p.scale(ai)
    rhs = rhs.scale(expr.prefactor)
    diff = lhs - rhs
    return all(not _simplify(c) for c in diff.terms.values())


def transfer_expression(n: int, ham: str = "h0", mode: str = "symbolic_beta", beta=None) -> PolyExpression:
    T = build_transfer(n)
    return express_in_polynomial(T, hamiltonian(n, ham), mode, beta)


def tt_hat_coefficients(n: int) -> dict:
    """f and the polynomials hat-a_{i,k} in the x-form of T_n in powers of h0.

    Ttilde_n(x) = [beta U_n(x/2) + 2 U_{n-1}(x/2)] 1
                  + W (x^{n-3}[(beta - x) h0 + h0^2] + (1/f) sum_{i,k} hat-a_{i,k} x^k h0^i)
    with W = beta^2 + 2 beta x + 4.
    """
    if n < 3:
        raise DomainError("n must be at least 3")
    tt = crossing_and_tt(n)["tt"]
    half = {"x": X / 2}
    scalar = BETA * chebyshev("U", n, "x").subs(half) + 2 * chebyshev("U", n - 1, "x").subs(half)
    if tt.identity_coeff() != scalar:
        raise InternalError("identity part of Ttilde differs from the Chebyshev form")
    h = h0(n)
    coef, deg = _reconstruct_all(tt, h, "x")
    coeffs = [_simplify(_poly_in(row, "x")) for row in coef[1:]]
    W = BETA * BETA + 2 * BETA * X + 4
    lead = X ** (n - 3)
    known = {0: lead * (BETA - X), 1: lead}
    rest = [_simplify(RationalFunction.coerce(c) - W * known.get(i, 0)) for i, c in enumerate(coeffs)]
    f, a = _extract_denominator(rest, "x", W)
    if a is None:
        raise InternalError("x-form remainder not divisible by beta^2 + 2 beta x + 4")
    table = {}
    for i, ai in enumerate(a, start=1):
        for k, c in enumerate(_dense_in(ai, "x")):
            if c:
                table[(i, k)] = c
    # certify: rebuild Ttilde from the table
    expr = PolyExpression(scalar, [], f, "exact", "x", deg,
                          [_simplify(RationalFunction.coerce(known.get(i, 0)) * _as_poly(f) + a[i]) for i in range(len(a))], W)
    if not verify_expression(expr, tt, h):
        raise InternalError("x-form round trip failed")
    return {"f": f, "a_hat": table, "degree": deg}


# scans -------------------------------------------------------------------------------------


def default_scan_betas(seed: int = 0) -> list:
    rng = random.Random(seed)
    base = [Fraction(k, 2) for k in range(-6, 7)]
    base += [Fraction(rng.randint(-40, 40), rng.randint(1, 9)) for _ in range(3)]
    return sorted(set(base))


def exceptional_scan(n: int, u_star: str = "0", beta_list=None, control=Fraction(101, 7)) -> dict:
    """Per beta: minimal-polynomial degrees of h and expressibility of T_n in h.

    ``minpoly_degree`` is the degree of the minimal polynomial of h inside
    TL_n; ``rep_minpoly_degree`` is that of rho_n(h), which is smaller where
    rho_n is not faithful (beta = 0 with n even, for example).  ``in_Z``
    marks a drop of the algebra degree below its value at the generic
    ``control`` point and ``exceptional`` marks an inconsistent system.
    """
    ham = {"0": "h0", "-2/beta": "hbeta", "h0": "h0", "hbeta": "hbeta"}[str(u_star)]
    betas = default_scan_betas() if beta_list is None else [Fraction(b) for b in beta_list]
    T = build_transfer(n)
    hs = hamiltonian(n, ham)
    generic = PowerBasis(specialize(hs, control)).degree
    report = {}
    for b in betas:
        if ham == "hbeta" and not b:
            report[b] = {"defined": False, "minpoly_degree": None, "rep_minpoly_degree": None,
                         "expressible": None, "in_Z": None, "exceptional": None}
            continue
        hb = specialize(hs, b)
        expr = express_numeric(T, hs, b)
        report[b] = {"defined": True, "minpoly_degree": expr.degree,
                     "rep_minpoly_degree": minimal_polynomial(rho(hb)).degree,
                     "expressible": expr.status == "exact", "in_Z": expr.degree < generic,
                     "exceptional": expr.status != "exact"}
    return report


# generators from eigenbases ------------------------------------------------------------------


def construct_generator(eigenbasis, block_partition: list) -> Matrix:
    """S diag(0..0, 1..1, 2..2, ...) S^{-1}: a non-derogatory element with the given eigenblocks."""
    S = eigenbasis if isinstance(eigenbasis, Matrix) else Matrix.from_dense(eigenbasis)
    if S.nrows != S.ncols or sum(block_partition) != S.nrows:
        raise DimError("partition must sum to the dimension of a square basis")
    try:
        Sinv = Matrix.from_dense(inverse(S))
    except ZeroDivisionError as exc:
        raise DimError("eigenbasis is singular") from exc
    labels = []
    for k, size in enumerate(block_partition):
        labels += [k] * size
    return S @ Matrix.diagonal(labels) @ Sinv


# Jones-Wenzl as a polynomial in a hamiltonian ---------------------------------------------------


def jw_polynomial(n: int, ham: str = "h0") -> dict:
    """The polynomial p with wj_n = p(h), read off from the minimal polynomial of h.

    For m the minimal polynomial of h with m(0) = 0, write m(x) = m_1 x p(x)
    with p(0) = 1.  Then h p(h) = 0, and p(h) = wj_n is checked exactly.
    """
    h = hamiltonian(n, ham)
    mp = minimal_polynomial(rho(h))
    m = mp.coeffs
    if m[0]:
        raise InternalError("h is invertible, no Jones-Wenzl relation")
    m1 = m[1]
    if not m1:
        raise InternalError("zero is a repeated root of the minimal polynomial")
    p = [_div(c, m1) for c in m[1:]]
    W = jones_wenzl(n)
    ph = TLElement(n, {}, BETA)
    power = TLElement.identity(n, BETA)
    for c in p:
        if c:
            ph = ph + power.scale(c)
        power = power * h
    equal = all(not _simplify(v) for v in (ph - W).terms.values())
    annihilates = not any(_simplify(v) for v in (h * W).terms.values())
    return {"p": p, "degree": len(p) - 1, "p0": p[0], "equal": equal,
            "h_wj_zero": annihilates, "minpoly": mp}


def verify_jw_polynomial(n: int, u_star: str = "0") -> bool:
    ham = {"0": "h0", "-2/beta": "hbeta", "h0": "h0", "hbeta": "hbeta"}[str(u_star)]
    r = jw_polynomial(n, ham)
    return bool(r["equal"] and r["h_wj_zero"] and r["p0"] == 1 and r["degree"] == central_binomial(n) - 1)

"""Exact elimination: Bareiss for rational matrices, Gauss-Jordan over Q(beta)."""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from math import gcd

from .matrix import DimError, Matrix
from .poly import Poly, is_scalar
from .ratfunc import RationalFunction, as_field_element


@dataclass
class SolveResult:
    solution: list | None  # one solution vector per right-hand side, or None
    inconsistent: bool
    kernel: list = field(default_factory=list)
    rank: int = 0


def _is_scalar_matrix(rows) -> bool:
    return all(is_scalar(x) for r in rows for x in r)


def _row_to_int(row):
    m = 1
    for x in row:
        if x.__class__ is Fraction:
            m = m * x.denominator // gcd(m, x.denominator)
    return [int(x * m) for x in row], m


def _dense(M) -> list:
    if isinstance(M, Matrix):
        return M.to_dense()
    return [list(r) for r in M]


def _columns_to_rows(B, nrows):
    if B is None:
        return [[] for _ in range(nrows)], 0
    cols = [list(c) for c in B]
    for c in cols:
        if len(c) != nrows:
            raise DimError("right-hand side length mismatch")
    return [[c[i] for c in cols] for i in range(nrows)], len(cols)


def _bareiss_echelon(A, ncols):
    """In-place fraction-free row echelon on integer rows; pivots searched in the first ncols columns."""
    nrows = len(A)
    width = len(A[0]) if A else 0
    prev = 1
    r = 0
    pivots = []
    for c in range(ncols):
        p = None
        best = None
        for i in range(r, nrows):
            x = A[i][c]
            if x and (best is None or abs(x) < best):
                p, best = i, abs(x)
                if best == 1:
                    break
        if p is None:
            continue
        A[r], A[p] = A[p], A[r]
        pr = A[r]
        pv = pr[c]
        for i in range(r + 1, nrows):
            ri = A[i]
            f = ri[c]
            if f:
                for j in range(c + 1, width):
                    ri[j] = (pv * ri[j] - f * pr[j]) // prev
            else:
                for j in range(c + 1, width):
                    if ri[j]:
                        ri[j] = (pv * ri[j]) // prev
            ri[c] = 0
        prev = pv
        pivots.append(c)
        r += 1
        if r == nrows:
            break
    return pivots


def _solve_scalar(Mrows, Brows, nb, want_kernel):
    nrows = len(Mrows)
    ncols = len(Mrows[0]) if nrows else 0
    A = []
    for i in range(nrows):
        row, _ = _row_to_int(list(Mrows[i]) + list(Brows[i]))
        A.append(row)
    pivots = _bareiss_echelon(A, ncols)
    rank = len(pivots)
    for i in range(rank, nrows):
        if any(A[i][ncols + k] for k in range(nb)):
            return SolveResult(None, True, [], rank)
    free = [c for c in range(ncols) if c not in set(pivots)]

    def back(rhs_of_row, free_values):
        x = [Fraction(0)] * ncols
        for c, v in free_values.items():
            x[c] = Fraction(v)
        for idx in range(rank - 1, -1, -1):
            c = pivots[idx]
            row = A[idx]
            s = Fraction(rhs_of_row(idx))
            for j in range(c + 1, ncols):
                if row[j] and x[j]:
                    s -= row[j] * x[j]
            x[c] = s / row[c]
        return [v.numerator if v.denominator == 1 else v for v in x]

    sols = [back(lambda i, k=k: A[i][ncols + k], {}) for k in range(nb)]
    kernel = []
    if want_kernel:
        for f in free:
            vec = back(lambda i: 0, {f: 1})
            kernel.append(vec)
    return SolveResult(sols, False, kernel, rank)


def _size(x):
    if isinstance(x, RationalFunction):
        return (x.num.degree() + x.den.degree(), len(x.num.terms) + len(x.den.terms))
    if isinstance(x, Poly):
        return (x.degree(), len(x.terms))
    return (0, 0)


def _inv(x):
    if is_scalar(x):
        return 1 / Fraction(x)
    return RationalFunction.coerce(x).inverse()


def _simplify(x):
    if isinstance(x, RationalFunction) and x.den == 1:
        p = x.num
        return p.constant_value() if p.is_constant() else p
    if x.__class__ is Fraction and x.denominator == 1:
        return x.numerator
    return x


def _solve_field(Mrows, Brows, nb, want_kernel):
    nrows = len(Mrows)
    ncols = len(Mrows[0]) if nrows else 0
    A = [[as_field_element(x) for x in list(Mrows[i]) + list(Brows[i])] for i in range(nrows)]
    width = ncols + nb
    r = 0
    pivots = []
    for c in range(ncols):
        cands = [i for i in range(r, nrows) if A[i][c]]
        if not cands:
            continue
        p = min(cands, key=lambda i: _size(A[i][c]))
        A[r], A[p] = A[p], A[r]
        inv = _inv(A[r][c])
        A[r] = [_simplify(x * inv) if x else x for x in A[r]]
        pr = A[r]
        for i in range(nrows):
            if i != r and A[i][c]:
                f = A[i][c]
                ri = A[i]
                for j in range(c, width):
                    if pr[j]:
                        ri[j] = _simplify(ri[j] - f * pr[j])
        pivots.append(c)
        r += 1
        if r == nrows:
            break
    rank = len(pivots)
    for i in range(rank, nrows):
        if any(A[i][ncols + k] for k in range(nb)):
            return SolveResult(None, True, [], rank)
    pset = set(pivots)
    free = [c for c in range(ncols) if c not in pset]
    sols = []
    for k in range(nb):
        x = [0] * ncols
        for idx, c in enumerate(pivots):
            x[c] = A[idx][ncols + k]
        sols.append(x)
    kernel = []
    if want_kernel:
        for f in free:
            x = [0] * ncols
            x[f] = 1
            for idx, c in enumerate(pivots):
                if A[idx][f]:
                    x[c] = _simplify(-A[idx][f])
            kernel.append(x)
    return SolveResult(sols, False, kernel, rank)


def solve_linear(M, B=None, *, want_kernel: bool = False) -> SolveResult:
    """Solve M x = b for each column b of B (a list of column vectors).

    Rational matrices with rational right-hand sides go through fraction-free
    Bareiss elimination; anything involving polynomials or rational functions
    is eliminated over the fraction field.
    """
    Mrows = _dense(M)
    nrows = len(Mrows)
    if nrows and any(len(r) != len(Mrows[0]) for r in Mrows):
        raise DimError("ragged matrix")
    Brows, nb = _columns_to_rows(B, nrows)
    if _is_scalar_matrix(Mrows) and _is_scalar_matrix(Brows):
        return _solve_scalar(Mrows, Brows, nb, want_kernel)
    if _is_scalar_matrix(Mrows):
        # scalar system with module-valued right-hand sides: invert the scalar part
        res = _solve_scalar(Mrows, [[] for _ in range(nrows)], 0, want_kernel)
        ncols = len(Mrows[0]) if nrows else 0
        if res.rank == ncols == nrows:
            inv = inverse(Mrows)
            sols = []
            for k in range(nb):
                col = [Brows[i][k] for i in range(nrows)]
                sols.append([_dot(inv[i], col) for i in range(ncols)])
            return SolveResult(sols, False, res.kernel, res.rank)
    return _solve_field(Mrows, Brows, nb, want_kernel)


def _dot(row, col):
    acc = 0
    for a, b in zip(row, col):
        if a and b:
            acc = acc + b * a
    return acc


def inverse(M) -> list:
    rows = _dense(M)
    n = len(rows)
    if any(len(r) != n for r in rows):
        raise DimError("square matrix required")
    eye = [[1 if i == j else 0 for i in range(n)] for j in range(n)]
    res = solve_linear(rows, eye)
    if res.inconsistent or res.rank < n:
        raise ZeroDivisionError("singular matrix")
    cols = res.solution
    return [[cols[j][i] for j in range(n)] for i in range(n)]


def kernel_basis(M) -> list:
    return solve_linear(M, None, want_kernel=True).kernel


def rank(M) -> int:
    return solve_linear(M, None).rank


def _exact_div(a, b):
    if is_scalar(a) and is_scalar(b):
        q, r = divmod(a, b)
        if r:
            raise ArithmeticError("Bareiss division not exact")
        return q
    if is_scalar(a):
        a = Poly.const(a)
    return a.exact_div(b)


def determinant(M):
    """Bareiss determinant over Z or Z[vars]; rational or rational-function entries are scaled first."""
    rows = _dense(M)
    n = len(rows)
    if any(len(r) != n for r in rows):
        raise DimError("square matrix required")
    if n == 0:
        return 1
    scale = 1
    if any(isinstance(x, RationalFunction) for r in rows for x in r):
        new = []
        for r in rows:
            d = Poly.const(1)
            for x in r:
                if isinstance(x, RationalFunction) and not x.den.is_constant():
                    d = _lcm(d, x.den)
            new.append([_simplify(RationalFunction.coerce(x) * d) for x in r])
            scale = scale * d
        rows = new
        det = determinant(rows)
        return _simplify(RationalFunction.coerce(det) / scale)
    A = []
    for r in rows:
        if _is_scalar_matrix([r]):
            ir, m = _row_to_int(r)
            scale *= m
            A.append(ir)
        else:
            m = 1
            for x in r:
                if isinstance(x, Poly):
                    dm = x.denominator_lcm()
                    m = m * dm // gcd(m, dm)
                elif x.__class__ is Fraction:
                    m = m * x.denominator // gcd(m, x.denominator)
            scale *= m
            A.append([x * m for x in r])
    sign = 1
    prev = 1
    for k in range(n - 1):
        p = next((i for i in range(k, n) if A[i][k]), None)
        if p is None:
            return 0
        if p != k:
            A[k], A[p] = A[p], A[k]
            sign = -sign
        pk = A[k]
        for i in range(k + 1, n):
            ri = A[i]
            for j in range(k + 1, n):
                ri[j] = _exact_div(pk[k] * ri[j] - ri[k] * pk[j], prev)
            ri[k] = 0
        prev = pk[k]
    det = A[n - 1][n - 1] * sign
    if scale != 1:
        det = det * Fraction(1, scale) if is_scalar(scale) else det / scale
    return _simplify(det) if not isinstance(det, Poly) else det


def _lcm(a: Poly, b: Poly) -> Poly:
    from .poly import poly_gcd

    g = poly_gcd(a, b)
    return (a * b).exact_div(g)


def charpoly(M) -> list:
    """Characteristic polynomial det(x I - M) of a rational matrix, lowest degree first.

    Reduction to upper Hessenberg form by similarity, then the usual
    three-term recurrence on leading principal minors.
    """
    rows = _dense(M)
    n = len(rows)
    if any(len(r) != n for r in rows):
        raise DimError("square matrix required")
    H = [[Fraction(x) for x in r] for r in rows]
    for j in range(n - 2):
        piv = next((i for i in range(j + 1, n) if H[i][j]), None)
        if piv is None:
            continue
        if piv != j + 1:
            H[piv], H[j + 1] = H[j + 1], H[piv]
            for r in H:
                r[piv], r[j + 1] = r[j + 1], r[piv]
        p = H[j + 1][j]
        for i in range(j + 2, n):
            if H[i][j]:
                f = H[i][j] / p
                ri, rp = H[i], H[j + 1]
                for k in range(j, n):
                    if rp[k]:
                        ri[k] -= f * rp[k]
                for r in H:
                    if r[i]:
                        r[j + 1] += f * r[i]
    polys = [[Fraction(1)]]
    for m in range(1, n + 1):
        prev = polys[m - 1]
        cur = [Fraction(0)] + prev
        hm = H[m - 1][m - 1]
        for i, c in enumerate(prev):
            cur[i] -= hm * c
        prod = Fraction(1)
        for i in range(1, m):
            prod *= H[m - i][m - i - 1]
            if not prod:
                break
            coef = H[m - i - 1][m - 1] * prod
            if coef:
                for t, c in enumerate(polys[m - i - 1]):
                    cur[t] -= coef * c
        polys.append(cur)
    return [_simplify(c) for c in polys[n]]

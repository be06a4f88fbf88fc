"""Exact integer linear algebra modulo a word-sized prime, vectorised with numpy.

Used only for certificates that transfer from F_p to Q: full rank modulo p
implies full rank over Q, and a squarefree characteristic polynomial modulo p
(of the same degree) implies a squarefree characteristic polynomial over Q.
Values stay below 2**31 so products fit in int64 without overflow.
"""

from __future__ import annotations

from fractions import Fraction

import numpy as np

PRIMES = (2147483629, 2147483587, 2147483579, 2147483563, 2147483549)


def to_mod_array(rows, p: int) -> np.ndarray:
    """Reduce a dense matrix of ints/Fractions modulo p."""
    out = np.zeros((len(rows), len(rows[0]) if rows else 0), dtype=np.int64)
    for i, r in enumerate(rows):
        for j, x in enumerate(r):
            if x:
                if x.__class__ is Fraction:
                    d = x.denominator % p
                    if d == 0:
                        raise ZeroDivisionError("denominator divisible by the prime")
                    out[i, j] = (x.numerator % p) * pow(d, p - 2, p) % p
                else:
                    out[i, j] = x % p
    return out


def rank_mod_p(A: np.ndarray, p: int) -> int:
    A = A.copy() % p
    nrows, ncols = A.shape
    r = 0
    for c in range(ncols):
        if r == nrows:
            break
        nz = np.nonzero(A[r:, c])[0]
        if nz.size == 0:
            continue
        piv = r + int(nz[0])
        if piv != r:
            A[[r, piv]] = A[[piv, r]]
        inv = pow(int(A[r, c]), p - 2, p)
        A[r] = (A[r] * inv) % p
        below = A[r + 1:, c].copy()
        mask = below != 0
        if mask.any():
            rows = np.nonzero(mask)[0] + r + 1
            A[rows] = (A[rows] - (below[mask][:, None] * A[r][None, :]) % p) % p
        r += 1
    return r


def charpoly_mod_p(A: np.ndarray, p: int) -> list:
    """Characteristic polynomial (lowest degree first, monic) via Hessenberg reduction."""
    H = A.copy() % p
    n = H.shape[0]
    for j in range(n - 2):
        nz = np.nonzero(H[j + 1:, j])[0]
        if nz.size == 0:
            continue
        i = j + 1 + int(nz[0])
        if i != j + 1:
            H[[i, j + 1]] = H[[j + 1, i]]
            H[:, [i, j + 1]] = H[:, [j + 1, i]]
        inv = pow(int(H[j + 1, j]), p - 2, p)
        for k in range(j + 2, n):
            if H[k, j]:
                f = int(H[k, j]) * inv % p
                H[k] = (H[k] - f * H[j + 1] % p) % p
                H[:, j + 1] = (H[:, j + 1] + f * H[:, k] % p) % p
    polys = [np.array([1], dtype=np.int64)]
    for m in range(1, n + 1):
        hm = int(H[m - 1, m - 1])
        prev = polys[m - 1]
        cur = np.zeros(m + 1, dtype=np.int64)
        cur[1:] = prev
        cur[:m] = (cur[:m] - hm * prev) % p
        prod = 1
        for i in range(1, m):
            prod = prod * int(H[m - i, m - i - 1]) % p
            if prod == 0:
                break
            coef = int(H[m - i - 1, m - 1]) * prod % p
            if coef:
                q = polys[m - i - 1]
                cur[: q.size] = (cur[: q.size] - coef * q) % p
        polys.append(cur % p)
    return [int(c) for c in polys[n]]


def _trim(a):
    while a and a[-1] == 0:
        a.pop()
    return a


def poly_gcd_mod_p(a: list, b: list, p: int) -> list:
    a, b = _trim([x % p for x in a]), _trim([x % p for x in b])
    while b:
        inv = pow(b[-1], p - 2, p)
        while len(a) >= len(b) and a:
            f = a[-1] * inv % p
            shift = len(a) - len(b)
            for i, c in enumerate(b):
                a[i + shift] = (a[i + shift] - f * c) % p
            _trim(a)
        a, b = b, a
    return a


def squarefree_mod_p(poly: list, p: int) -> bool:
    d = [(i * poly[i]) % p for i in range(1, len(poly))]
    return len(poly_gcd_mod_p(poly, d, p)) == 1

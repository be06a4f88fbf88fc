"""Temperley-Lieb diagrams and the algebra TL_n(beta).

A diagram on n strands is a tuple ``p`` of length 2n with ``p[i]`` the node
joined to node ``i``.  Nodes 0..n-1 run left to right along the lower edge and
nodes n..2n-1 continue counterclockwise, i.e. right to left along the upper
edge, so the upper node above strand j is ``2n-1-j``.

In a product ``a * b`` the diagram ``a`` is the lower factor: ``b`` is stacked
on top of ``a`` and each closed loop contributes a factor ``beta``.
"""

from __future__ import annotations

from fractions import Fraction
from functools import lru_cache

from .exactmath import (
    DimError,
    DomainError,
    Poly,
    RationalFunction,
    cheb_u_half_beta,
)


class RingError(TypeError):
    pass


class InternalError(RuntimeError):
    pass


# diagrams --------------------------------------------------------------------


def upper(n: int, j: int) -> int:
    """Node index of the upper endpoint above strand j."""
    return 2 * n - 1 - j


def is_diagram(p) -> bool:
    m = len(p)
    if m % 2:
        return False
    stack = []
    for i in range(m):
        j = p[i]
        if not 0 <= j < m or j == i or p[j] != i:
            return False
        if j > i:
            stack.append(i)
        elif not stack or stack.pop() != j:
            return False
    return not stack


@lru_cache(maxsize=None)
def enumerate_diagrams(n: int) -> tuple:
    """All non-crossing perfect matchings of 2n nodes, in lexicographic order of pairing arrays."""
    out = []

    def rec(p, i):
        while i < 2 * n and p[i] >= 0:
            i += 1
        if i == 2 * n:
            out.append(tuple(p))
            return
        # partner j must leave an even, self-contained interval between i and j
        for j in range(i + 1, 2 * n, 2):
            if p[j] < 0 and all(p[k] < 0 for k in range(i + 1, j)):
                p[i], p[j] = j, i
                rec(p, i + 1)
                p[i] = p[j] = -1

    rec([-1] * (2 * n), 0)
    return tuple(sorted(out))


def identity_diagram(n: int) -> tuple:
    return tuple(upper(n, i) if i < n else 2 * n - 1 - i for i in range(2 * n))


def generator_diagram(n: int, i: int) -> tuple:
    """e_i (1-indexed) joining strands i and i+1 at both edges."""
    if not 1 <= i < n:
        raise DimError(f"e_{i} does not exist in TL_{n}")
    p = list(identity_diagram(n))
    a, b = i - 1, i
    p[a], p[b] = b, a
    ua, ub = upper(n, a), upper(n, b)
    p[ua], p[ub] = ub, ua
    return tuple(p)


_PRODUCTS: dict = {}


def compose(a: tuple, b: tuple):
    """Stack ``b`` on top of ``a``; returns (diagram, number of closed loops)."""
    key = (a, b)
    hit = _PRODUCTS.get(key)
    if hit is not None:
        return hit
    m = len(a)
    n = m // 2
    res = [-1] * m
    seen = [False] * n
    for start in range(m):
        if res[start] >= 0:
            continue
        in_a = start < n
        node = start
        while True:
            if in_a:
                p = a[node]
                if p < n:
                    end = p
                    break
                j = m - 1 - p
                seen[j] = True
                node, in_a = j, False
            else:
                p = b[node]
                if p >= n:
                    end = p
                    break
                seen[p] = True
                node, in_a = m - 1 - p, True
        res[start] = end
        res[end] = start
    loops = 0
    for j in range(n):
        if not seen[j]:
            loops += 1
            k = j
            while not seen[k]:
                seen[k] = True
                k2 = m - 1 - a[m - 1 - k]
                seen[k2] = True
                k = b[k2]
    out = (tuple(res), loops)
    if len(_PRODUCTS) > 4_000_000:
        _PRODUCTS.clear()
    _PRODUCTS[key] = out
    return out


def dagger_diagram(p: tuple) -> tuple:
    m = len(p)
    return tuple(m - 1 - p[m - 1 - i] for i in range(m))


def rotate_diagram(p: tuple, k: int) -> tuple:
    m = len(p)
    if m == 0:
        return p
    out = [0] * m
    for i in range(m):
        out[(i + k) % m] = (p[i] + k) % m
    return tuple(out)


def embed_diagram(p: tuple, target_n: int, offset: int) -> tuple:
    n = len(p) // 2
    if offset < 0 or offset + n > target_n:
        raise DimError(f"cannot embed TL_{n} at offset {offset} into TL_{target_n}")
    N = target_n

    def place(i):
        return offset + i if i < n else upper(N, offset + (2 * n - 1 - i))

    out = list(identity_diagram(N))
    for i in range(2 * n):
        out[place(i)] = place(p[i])
    return tuple(out)


def concat_diagram(p: tuple, q: tuple) -> tuple:
    m, n = len(p) // 2, len(q) // 2
    N = m + n

    def place_left(i):
        return i if i < m else upper(N, 2 * m - 1 - i)

    def place_right(i):
        return m + i if i < n else upper(N, m + 2 * n - 1 - i)

    out = [0] * (2 * N)
    for i in range(2 * m):
        out[place_left(i)] = place_left(p[i])
    for i in range(2 * n):
        out[place_right(i)] = place_right(q[i])
    return tuple(out)


def partial_trace_diagram(p: tuple):
    """Close the rightmost strand; returns (diagram on n-1 strands, loops)."""
    m = len(p)
    n = m // 2
    if n < 1:
        raise DimError("partial trace needs at least one strand")
    lo, up = n - 1, n  # rightmost lower node and the upper node above it
    q = list(p)
    loops = 0
    if q[lo] == up:
        loops = 1
    else:
        x, y = q[lo], q[up]
        q[x], q[y] = y, x
    keep = [i for i in range(m) if i not in (lo, up)]
    relabel = {old: new for new, old in enumerate(keep)}
    return tuple(relabel[q[i]] for i in keep), loops


def through_lines(p: tuple) -> int:
    n = len(p) // 2
    return sum(1 for i in range(n) if p[i] >= n)


# elements --------------------------------------------------------------------


BETA = Poly.var("beta")


def _zero(x) -> bool:
    return not x


class TLElement:
    """Finite linear combination of diagrams; ``beta`` is the loop value used in products."""

    __slots__ = ("n", "terms", "beta")

    def __init__(self, n: int, terms=None, beta=BETA):
        self.n = n
        self.terms = {d: c for d, c in (terms or {}).items() if c}
        self.beta = beta

    # constructors -----------------------------------------------------
    @classmethod
    def identity(cls, n: int, beta=BETA, coeff=1) -> "TLElement":
        return cls(n, {identity_diagram(n): coeff}, beta)

    @classmethod
    def generator(cls, n: int, i: int, beta=BETA) -> "TLElement":
        return cls(n, {generator_diagram(n, i): 1}, beta)

    @classmethod
    def diagram(cls, p: tuple, beta=BETA, coeff=1) -> "TLElement":
        if not is_diagram(p):
            raise DomainError(f"not a non-crossing pairing: {p}")
        return cls(len(p) // 2, {tuple(p): coeff}, beta)

    @classmethod
    def word(cls, n: int, indices, beta=BETA) -> "TLElement":
        """e_{i1} e_{i2} ... (lower factor first)."""
        out = cls.identity(n, beta)
        for i in indices:
            out = out * cls.generator(n, i, beta)
        return out

    # helpers ----------------------------------------------------------
    def _check(self, other: "TLElement"):
        if self.n != other.n:
            raise DimError(f"TL_{self.n} vs TL_{other.n}")
        if self.beta is not other.beta and not (self.beta == other.beta):
            raise RingError("elements use different loop values")

    def with_terms(self, terms) -> "TLElement":
        return TLElement(self.n, terms, self.beta)

    def coeff(self, p) -> object:
        return self.terms.get(tuple(p), 0)

    def identity_coeff(self):
        return self.terms.get(identity_diagram(self.n), 0)

    def non_identity(self) -> "TLElement":
        one = identity_diagram(self.n)
        return self.with_terms({d: c for d, c in self.terms.items() if d != one})

    def map_coeffs(self, fn, beta=None) -> "TLElement":
        return TLElement(self.n, {d: fn(c) for d, c in self.terms.items()}, self.beta if beta is None else beta)

    def sorted_terms(self):
        return sorted(self.terms.items())

    # arithmetic -------------------------------------------------------
    def __bool__(self):
        return bool(self.terms)

    def __add__(self, other):
        if not isinstance(other, TLElement):
            if _zero(other):
                return self
            return self + TLElement.identity(self.n, self.beta, other)
        self._check(other)
        t = dict(self.terms)
        for d, c in other.terms.items():
            s = t.get(d, 0) + c
            if s:
                t[d] = s
            else:
                t.pop(d, None)
        return TLElement(self.n, t, self.beta)

    __radd__ = __add__

    def __neg__(self):
        return self.with_terms({d: -c for d, c in self.terms.items()})

    def __sub__(self, other):
        return self + (-other)

    def __rsub__(self, other):
        return (-self) + other

    def scale(self, c) -> "TLElement":
        if _zero(c):
            return self.with_terms({})
        return self.with_terms({d: x * c for d, x in self.terms.items()})

    def __mul__(self, other):
        if not isinstance(other, TLElement):
            return self.scale(other)
        self._check(other)
        bpow = [1]
        res: dict = {}
        get = res.get
        oterms = list(other.terms.items())
        for a, ca in self.terms.items():
            for b, cb in oterms:
                c, loops = compose(a, b)
                v = ca * cb
                if loops:
                    while len(bpow) <= loops:
                        bpow.append(bpow[-1] * self.beta)
                    v = v * bpow[loops]
                res[c] = get(c, 0) + v
        return TLElement(self.n, res, self.beta)

    def __rmul__(self, other):
        return self.scale(other)

    def __pow__(self, e: int) -> "TLElement":
        out = TLElement.identity(self.n, self.beta)
        for _ in range(e):
            out = out * self
        return out

    def __eq__(self, other):
        if isinstance(other, TLElement):
            if self.n != other.n:
                return False
            if self.terms.keys() != other.terms.keys():
                return False
            return all(c == other.terms[d] for d, c in self.terms.items())
        if _zero(other):
            return not self.terms
        return self == TLElement.identity(self.n, self.beta, other)

    __hash__ = None

    def commutator(self, other: "TLElement") -> "TLElement":
        return self * other - other * self

    # structural maps --------------------------------------------------
    def dagger(self) -> "TLElement":
        return self.with_terms({dagger_diagram(d): c for d, c in self.terms.items()})

    def rotate(self, k: int) -> "TLElement":
        return self.with_terms({rotate_diagram(d, k): c for d, c in self.terms.items()})

    def embed(self, target_n: int, offset: int = 0) -> "TLElement":
        return TLElement(target_n, {embed_diagram(d, target_n, offset): c for d, c in self.terms.items()}, self.beta)

    def partial_trace(self) -> "TLElement":
        res: dict = {}
        for d, c in self.terms.items():
            q, loops = partial_trace_diagram(d)
            v = c * self.beta if loops else c
            res[q] = res.get(q, 0) + v
        return TLElement(self.n - 1, res, self.beta)

    def tensor(self, other: "TLElement") -> "TLElement":
        if not (self.beta == other.beta):
            raise RingError("elements use different loop values")
        res: dict = {}
        for a, ca in self.terms.items():
            for b, cb in other.terms.items():
                d = concat_diagram(a, b)
                res[d] = res.get(d, 0) + ca * cb
        return TLElement(self.n + other.n, res, self.beta)

    def specialize(self, mapping: dict) -> "TLElement":
        """Substitute variables in every coefficient (and in the loop value)."""
        def sub(c):
            return c.subs(mapping) if isinstance(c, (Poly, RationalFunction)) else c

        beta = sub(self.beta)
        return TLElement(self.n, {d: sub(c) for d, c in self.terms.items()}, _simplify(beta))

    def __repr__(self):
        return f"TLElement(n={self.n}, {len(self.terms)} terms)"

    def __str__(self):
        if not self.terms:
            return "0"
        return " + ".join(f"({c})*{list(d)}" for d, c in self.sorted_terms())


def _simplify(x):
    if isinstance(x, Poly) and x.is_constant():
        return x.constant_value()
    if isinstance(x, RationalFunction) and x.den == 1:
        return _simplify(x.num)
    return x


# public operations mirroring the diagram maps ------------------------------------


def multiply(a: TLElement, b: TLElement) -> TLElement:
    return a * b


def dagger(a: TLElement) -> TLElement:
    return a.dagger()


def rotate(a: TLElement, k: int) -> TLElement:
    return a.rotate(k)


def embed(a: TLElement, target_n: int, offset: int = 0) -> TLElement:
    return a.embed(target_n, offset)


def partial_trace(a: TLElement) -> TLElement:
    return a.partial_trace()


def tensor_concat(a: TLElement, b: TLElement) -> TLElement:
    return a.tensor(b)


def e(n: int, i: int, beta=BETA) -> TLElement:
    return TLElement.generator(n, i, beta)


def one(n: int, beta=BETA) -> TLElement:
    return TLElement.identity(n, beta)


def generators(n: int, beta=BETA) -> list:
    return [TLElement.generator(n, i, beta) for i in range(1, n)]


# Jones-Wenzl -----------------------------------------------------------------


def _qint(k: int, beta):
    """[k] = U_{k-1}(beta/2), symbolic or at a specific beta."""
    p = cheb_u_half_beta(k - 1)
    if isinstance(beta, Poly):
        return p
    return p.evaluate({"beta": beta})


def _jw_numerators(n: int, beta):
    """(W, D) with wj_n = W / D, W having coefficients in Z[beta] (or Q at a numeric beta).

    Uses the single-clasp expansion
        wj_k = wj_{k-1} + sum_{i=1}^{k-1} (-1)^{k-i} ([i]/[k]) wj_{k-1} e_{k-1} e_{k-2} ... e_i,
    which only multiplies wj_{k-1} by single diagrams.
    """
    W = TLElement.identity(1, beta)
    D = 1
    for k in range(2, n + 1):
        Wk = W.embed(k, 0)
        qk = _qint(k, beta)
        acc = Wk.scale(qk)
        for i in range(1, k):
            word = TLElement.word(k, range(k - 1, i - 1, -1), beta)
            sign = 1 if (k - i) % 2 == 0 else -1
            acc = acc + (Wk * word).scale(_qint(i, beta) * sign)
        W = acc
        D = D * qk
    return W, D


def jones_wenzl_wenzl(n: int, beta=BETA) -> TLElement:
    """The recursion wj_{k+1} = wj_k - (U_{k-1}/U_k)(beta/2) wj_k e_k wj_k, coefficients reduced."""
    field = isinstance(beta, Poly)
    wj = TLElement.identity(1, beta)
    for k in range(1, n):
        w = wj.embed(k + 1, 0)
        ratio = _qint(k, beta) / _qint(k + 1, beta) if not field else RationalFunction(_qint(k, beta), _qint(k + 1, beta))
        wj = w - (w * TLElement.generator(k + 1, k, beta) * w).scale(ratio)
        if field:
            wj = wj.map_coeffs(_simplify)
    return wj


def _check_numeric_beta(n: int, beta):
    for k in range(1, n):
        if cheb_u_half_beta(k).evaluate({"beta": beta}) == 0:
            raise DomainError(f"U_{k}(beta/2) vanishes at beta={beta}; wj_{n} has a pole there")


def jones_wenzl(n: int, beta=BETA, verify: bool = True) -> TLElement:
    """Jones-Wenzl idempotent wj_n with coefficients in Q(beta), or in Q at a numeric beta."""
    if n < 1:
        raise DomainError("n must be at least 1")
    if not isinstance(beta, Poly):
        beta = Fraction(beta)
        _check_numeric_beta(n, beta)
    W, D = _jw_numerators(n, beta)
    if verify:
        verify_jones_wenzl(W, D)
    if isinstance(beta, Poly):
        den = D if isinstance(D, Poly) else Poly.const(D)
        return W.map_coeffs(lambda c: _simplify(RationalFunction(c, den)))
    return W.map_coeffs(lambda c: _simplify(Fraction(c) / D))


def verify_jones_wenzl(W: TLElement, D, full_square_up_to: int = 6) -> None:
    """Check e_i W = W e_i = 0 and W^2 = D W (with D = identity coefficient).

    Beyond ``full_square_up_to`` strands the square is checked via the
    annihilation property: every non-identity diagram factors as x e_i, so
    W W = (identity coefficient of W) W once e_i W = 0 is known.
    """
    n = W.n
    for i in range(1, n):
        g = TLElement.generator(n, i, W.beta)
        if g * W or W * g:
            raise InternalError(f"e_{i} does not annihilate wj_{n}")
    if not (W.identity_coeff() == D):
        raise InternalError("identity coefficient of wj_n is not 1")
    if n <= full_square_up_to and not ((W * W) == W.scale(D)):
        raise InternalError(f"wj_{n} is not idempotent")

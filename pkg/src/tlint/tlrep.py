"""Standard modules V_{n,d}: link states, representation matrices and Gram forms.

A link state is a tuple ``x`` of length n: ``x[i]`` is the partner of node i,
or -1 if node i carries a defect.  Arcs are drawn above the nodes and defects
run upward, so no arc may enclose a defect.  Within L_{n,d} states are listed
in lexicographic order of these tuples; the full representation stacks the
blocks with d ascending from n mod 2.
"""

from __future__ import annotations

import random
from dataclasses import dataclass
from functools import lru_cache
from math import comb

from .exactmath import (
    DomainError,
    Matrix,
    Poly,
    RationalFunction,
    cheb_u_half_beta,
    determinant,
)
from .tlcore import BETA, TLElement, enumerate_diagrams


def defect_counts(n: int) -> list:
    return list(range(n % 2, n + 1, 2))


def dim_standard(n: int, d: int) -> int:
    if d not in defect_counts(n):
        raise DomainError(f"d={d} is not a defect count for n={n}")
    k = (n - d) // 2
    return comb(n, k) - (comb(n, k - 1) if k >= 1 else 0)


@lru_cache(maxsize=None)
def enumerate_link_states(n: int, d: int) -> tuple:
    if n < 0 or d not in defect_counts(n):
        raise DomainError(f"d={d} is not a defect count for n={n}")
    out = []

    def rec(i, open_stack, p, defects):
        if i == n:
            if not open_stack and defects == d:
                out.append(tuple(p))
            return
        remaining = n - i
        # open an arc
        if len(open_stack) + 1 <= remaining - 1:
            open_stack.append(i)
            rec(i + 1, open_stack, p, defects)
            open_stack.pop()
        # close the innermost arc
        if open_stack:
            j = open_stack.pop()
            p[i], p[j] = j, i
            rec(i + 1, open_stack, p, defects)
            p[i] = p[j] = -1
            open_stack.append(j)
        # defect, only outside every arc
        if not open_stack and defects < d:
            rec(i + 1, open_stack, p, defects + 1)

    rec(0, [], [-1] * n, 0)
    return tuple(sorted(out))


def full_basis(n: int) -> list:
    """(d, state) pairs in the order used by the full representation."""
    return [(d, x) for d in defect_counts(n) for x in enumerate_link_states(n, d)]


def defects_of(x) -> list:
    return [i for i, p in enumerate(x) if p < 0]


# action ------------------------------------------------------------------------


_ACT: dict = {}


def act_diagram(p: tuple, x: tuple):
    """Stack x above diagram p and read the lower edge.

    Returns (state, loops), or None when two defects of x get joined (the
    through-line count drops and the result vanishes in the standard module).
    """
    key = (p, x)
    if key in _ACT:
        return _ACT[key]
    n = len(x)
    m = 2 * n
    res = [None] * n
    seen = [False] * n
    for j in range(n):
        if res[j] is not None:
            continue
        node = j
        while True:
            q = p[node]
            if q < n:
                res[j], res[q] = q, j
                break
            t = m - 1 - q
            seen[t] = True
            xt = x[t]
            if xt < 0:
                res[j] = -1
                break
            seen[xt] = True
            node = m - 1 - xt
    loops = 0
    out = None
    for t in range(n):
        if not seen[t] and x[t] < 0:
            # an unreached defect is joined to another defect
            break
    else:
        out = ()
    for t in range(n if out is not None else 0):
        if not seen[t]:
            loops += 1
            k = t
            while not seen[k]:
                seen[k] = True
                k2 = x[k]
                seen[k2] = True
                k = m - 1 - p[m - 1 - k2]
    if out is not None:
        out = (tuple(res), loops)
    if len(_ACT) > 2_000_000:
        _ACT.clear()
    _ACT[key] = out
    return out


def act(a: TLElement, x: tuple) -> dict:
    """a . x as a dict state -> coefficient."""
    if a.n != len(x):
        raise DomainError("size mismatch")
    out: dict = {}
    for p, c in a.terms.items():
        r = act_diagram(p, x)
        if r is None:
            continue
        y, loops = r
        v = c * a.beta ** loops if loops else c
        s = out.get(y, 0) + v
        if s:
            out[y] = s
        else:
            out.pop(y, None)
    return out


@dataclass
class RepMatrix:
    n: int
    d: object  # int or "full"
    matrix: Matrix
    basis: list  # list of link states


def _block(a: TLElement, n: int, d: int) -> Matrix:
    states = enumerate_link_states(n, d)
    index = {x: i for i, x in enumerate(states)}
    M = Matrix(len(states), len(states))
    for j, x in enumerate(states):
        for y, c in act(a, x).items():
            M.rows[index[y]][j] = c
    return M


def rep_matrix(a: TLElement, n: int | None = None, d="full") -> RepMatrix:
    n = a.n if n is None else n
    if n != a.n:
        raise DomainError("size mismatch")
    if d == "full":
        blocks = [_block(a, n, dd) for dd in defect_counts(n)]
        return RepMatrix(n, "full", Matrix.block_diag(*blocks), [x for _, x in full_basis(n)])
    return RepMatrix(n, d, _block(a, n, d), list(enumerate_link_states(n, d)))


# bilinear form -------------------------------------------------------------------


def pairing_loops(x: tuple, y: tuple):
    """Glue the reflection of x below y: number of loops, or None if the pairing vanishes."""
    n = len(x)
    seen = [False] * n
    for s in range(n):
        if seen[s] or x[s] >= 0:
            continue
        node = s
        seen[s] = True
        use_y = True
        while True:
            nxt = y[node] if use_y else x[node]
            if nxt < 0:
                if not use_y:
                    return None
                break
            node = nxt
            seen[node] = True
            use_y = not use_y
    loops = 0
    for s in range(n):
        if seen[s]:
            continue
        if y[s] < 0:
            return None
        loops += 1
        k = s
        while not seen[k]:
            seen[k] = True
            k2 = x[k]
            seen[k2] = True
            k = y[k2]
    return loops


def bilinear(x: tuple, y: tuple, beta=BETA):
    loops = pairing_loops(x, y)
    if loops is None:
        return 0
    return beta ** loops if loops else 1


def gram_matrix(n: int, d: int, beta=BETA) -> Matrix:
    states = enumerate_link_states(n, d)
    return Matrix.from_dense([[bilinear(x, y, beta) for y in states] for x in states])


def gram_formula(n: int, d: int) -> RationalFunction:
    out = RationalFunction(Poly.const(1))
    for j in range(1, (n - d) // 2 + 1):
        ratio = RationalFunction(cheb_u_half_beta(d + j), cheb_u_half_beta(j - 1))
        out = out * ratio ** dim_standard(n, d + 2 * j)
    return out


def gram_det_check(n: int, d: int) -> dict:
    direct = determinant(gram_matrix(n, d))
    if not isinstance(direct, Poly):
        direct = Poly.const(direct)
    formula = gram_formula(n, d)
    return {"direct": direct, "formula": formula, "equal": formula == direct}


def _bilinear_vec(x, vec: dict, beta):
    acc = 0
    for y, c in vec.items():
        b = bilinear(x, y, beta)
        if b:
            acc = acc + c * b
    return acc


def bilinear_adjoint_check(n: int, d: int, trials: int = 20, seed: int = 0, elements=None) -> bool:
    """Check <x, a y> = <a^dagger x, y> over all state pairs for random diagrams a."""
    rng = random.Random(seed)
    diagrams = enumerate_diagrams(n)
    states = enumerate_link_states(n, d)
    if elements is None:
        elements = [TLElement.diagram(rng.choice(diagrams)) for _ in range(trials)]
    for a in elements:
        ad = a.dagger()
        for x in states:
            ax = act(ad, x)
            for y in states:
                ay = act(a, y)
                lhs = _bilinear_vec(x, ay, a.beta)
                rhs = 0
                for z, c in ax.items():
                    b = bilinear(z, y, a.beta)
                    if b:
                        rhs = rhs + c * b
                if not (lhs == rhs):
                    return False
    return True


def is_faithful_kernel(n: int, beta) -> bool:
    """Exact kernel solve of rho_n(x) = 0 over the diagram basis (small n)."""
    from .exactmath import rank

    cols = []
    for p in enumerate_diagrams(n):
        M = rep_matrix(TLElement.diagram(p, beta=beta)).matrix
        cols.append([M[i, j] for i in range(M.nrows) for j in range(M.ncols)])
    rows = [list(r) for r in zip(*cols)]
    return rank(rows) == len(cols)


def is_faithful_modular(n: int, beta, primes=None) -> bool:
    """Full column rank of the same system modulo a prime certifies faithfulness over Q."""

    from .exactmath import modular

    diagrams = enumerate_diagrams(n)
    primes = primes or modular.PRIMES[:2]
    blocks = [enumerate_link_states(n, d) for d in defect_counts(n)]
    for p in primes:
        cols = []
        for dgm in diagrams:
            col = []
            for states in blocks:
                index = {x: i for i, x in enumerate(states)}
                for x in states:
                    vec = [0] * len(states)
                    r = act_diagram(dgm, x)
                    if r is not None:
                        y, loops = r
                        vec[index[y]] = pow(beta, loops)
                    col.extend(vec)
            cols.append(col)
        A = modular.to_mod_array([list(r) for r in zip(*cols)], p)
        if modular.rank_mod_p(A, p) == len(diagrams):
            return True
    return False

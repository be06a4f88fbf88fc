from fractions import Fraction
from itertools import permutations

import pytest
from hypothesis import given
from hypothesis import strategies as st

from tlint.exactmath import (
    DimError,
    Matrix,
    Poly,
    RationalFunction,
    ReconstructionError,
    catalan,
    central_binomial,
    charpoly,
    chebyshev,
    determinant,
    double_factorial_binom,
    interpolate_reconstruct,
    inverse,
    kernel_basis,
    poly_gcd,
    q_integer,
    rank,
    solve_linear,
    squarefree_check,
)
from tlint.exactmath import modular, upoly

u, b, q, x = (Poly.var(s) for s in ("u", "beta", "q", "x"))

small = st.integers(-4, 4)
polys = st.dictionaries(st.tuples(st.integers(0, 3), st.integers(0, 2)), small, max_size=5).map(
    lambda d: Poly.from_terms(("u", "beta"), list(d.items())))
nonzero_polys = polys.filter(lambda p: bool(p))
fractions = st.fractions(min_value=-5, max_value=5, max_denominator=6)


def square(n):
    return st.lists(st.lists(st.integers(-3, 3), min_size=n, max_size=n), min_size=n, max_size=n)


def leibniz(rows):
    n = len(rows)
    total = Fraction(0)
    for perm in permutations(range(n)):
        sign = 1
        for i in range(n):
            for j in range(i + 1, n):
                if perm[i] > perm[j]:
                    sign = -sign
        term = Fraction(sign)
        for i in range(n):
            term *= rows[i][perm[i]]
        total += term
    return total


@given(polys, polys, polys)
def test_ring_axioms(p, r, s):
    assert (p + r) * s == p * s + r * s
    assert (p * r) * s == p * (r * s)
    assert p * r == r * p
    assert p - p == Poly.const(0)


@given(polys, nonzero_polys)
def test_exact_division_round_trip(p, d):
    assert (p * d).exact_div(d) == p


@given(nonzero_polys, nonzero_polys, nonzero_polys)
def test_gcd_contains_common_factor(p, r, g):
    h = poly_gcd(p * g, r * g)
    h.exact_div(g)
    (p * g).exact_div(h)
    (r * g).exact_div(h)


laurent_polys = st.dictionaries(st.tuples(st.integers(0, 2), st.integers(0, 2), st.integers(-2, 2)), fractions,
                                min_size=1, max_size=4).map(
    lambda d: Poly.from_terms(("u", "beta", "q"), list(d.items()))).filter(bool)


@given(laurent_polys, laurent_polys, laurent_polys)
def test_trivariate_laurent_cancellation_is_canonical(p, r, g):
    f = RationalFunction(p * g, r * g)
    assert f == RationalFunction(p, r)
    assert f.num * r == f.den * p


@given(st.lists(small, min_size=1, max_size=6), st.lists(small, min_size=1, max_size=6),
       st.lists(small, min_size=1, max_size=4))
def test_integer_gcd_divides_and_contains_common_factor(a, c, g):
    a, c, g = upoly.trim(a), upoly.trim(c), upoly.trim(g)
    if not (a and c and g):
        return
    h = Poly.from_dense(upoly.gcd_z(upoly.mul(a, g), upoly.mul(c, g)), "x")
    h.exact_div(Poly.from_dense(g, "x"))
    Poly.from_dense(upoly.mul(a, g), "x").exact_div(h)


def test_gcd_example():
    assert poly_gcd(u * u - 1, u * u + 2 * u + 1) == u + 1


@given(nonzero_polys, nonzero_polys, nonzero_polys)
def test_rational_functions_form_a_field(p, r, s):
    a = RationalFunction(p, r)
    c = RationalFunction(s, r * r + 1)
    assert (a + c) - c == a
    assert (a * c) / c == a
    assert a * a.inverse() == RationalFunction(Poly.const(1))


def test_rational_function_reduces():
    f = RationalFunction(u * u - 1, u - 1)
    assert f.is_polynomial() and f.as_poly() == u + 1
    with pytest.raises(ZeroDivisionError):
        RationalFunction(u, Poly.const(0))


@given(st.lists(fractions, min_size=1, max_size=5))
def test_interpolation_recovers_polynomial(coeffs):
    p = Poly.from_dense(coeffs, "beta")
    deg = len(coeffs) - 1
    samples = [(t, p.evaluate({"beta": t})) for t in range(deg + 3)]
    assert interpolate_reconstruct(samples, deg + 1, "beta") == p


def test_interpolation_small_examples():
    samples = [(t, t ** 4 - t ** 2) for t in range(5)]
    assert interpolate_reconstruct(samples, 4) == b ** 4 - b ** 2
    rf = RationalFunction(b + 1, b * b + 3)
    samples = [(t, rf.evaluate({"beta": t})) for t in range(8)]
    assert interpolate_reconstruct(samples, 1, den_bound=2) == rf
    with pytest.raises(ReconstructionError):
        interpolate_reconstruct([(t, t ** 3) for t in range(5)], 2)


@given(st.integers(1, 4).flatmap(square))
def test_determinant_matches_leibniz(rows):
    assert determinant(Matrix.from_dense(rows)) == leibniz(rows)


@given(st.integers(1, 4).flatmap(square))
def test_charpoly_is_det_of_xi_minus_m(rows):
    n = len(rows)
    cp = charpoly(Matrix.from_dense(rows))
    assert len(cp) == n + 1 and cp[-1] == 1
    for t in (-2, 0, 3):
        shifted = [[(t if i == j else 0) - rows[i][j] for j in range(n)] for i in range(n)]
        assert upoly.evaluate(cp, t) == leibniz(shifted)


@given(st.integers(1, 4).flatmap(square))
def test_solve_and_inverse(rows):
    M = Matrix.from_dense(rows)
    n = len(rows)
    r = rank(M)
    ker = kernel_basis(M)
    assert len(ker) == n - r
    for v in ker:
        assert all(sum(rows[i][j] * v[j] for j in range(n)) == 0 for i in range(n))
    if r == n:
        inv = inverse(M)
        for i in range(n):
            for j in range(n):
                assert sum(rows[i][k] * inv[k][j] for k in range(n)) == (1 if i == j else 0)
        rhs = [1] * n
        sol = solve_linear(M, [rhs]).solution[0]
        assert [sum(rows[i][j] * sol[j] for j in range(n)) for i in range(n)] == rhs


def test_inconsistent_system():
    res = solve_linear(Matrix.from_dense([[1, 1], [1, 1]]), [[0, 1]])
    assert res.inconsistent


def test_symbolic_solve():
    M = Matrix.from_dense([[b, 1], [1, b]])
    sol = solve_linear(M, [[1, 0]]).solution[0]
    assert sol[0] == RationalFunction(b, b * b - 1)


def test_ragged_matrix_rejected():
    with pytest.raises(DimError):
        solve_linear([[1, 2], [3]])


@given(st.integers(2, 5).flatmap(square))
def test_modular_rank_never_exceeds_exact(rows):
    M = Matrix.from_dense(rows)
    A = modular.to_mod_array(rows, modular.PRIMES[0])
    assert modular.rank_mod_p(A, modular.PRIMES[0]) <= rank(M)
    p = modular.PRIMES[0]
    cp = charpoly(M)
    assert modular.charpoly_mod_p(A, p) == [int(c) % p for c in cp]


def test_squarefree():
    assert squarefree_check(u * (u + 1), "u")
    assert not squarefree_check(u * u * (u + 1), "u")
    assert upoly.rational_roots([-1, 0, 1]) == [-1, 1]


@pytest.mark.parametrize("k", range(0, 8))
def test_chebyshev_laurent_identity(k):
    t = chebyshev("T", k, "x").subs({"x": (q + q ** -1) / 2})
    assert 2 * t == q ** k + q ** -k if k else 2 * t == 2 * Poly.const(1)


def test_chebyshev_u_recurrence():
    for k in range(2, 8):
        assert chebyshev("U", k) == 2 * x * chebyshev("U", k - 1) - chebyshev("U", k - 2)


def test_counting_functions():
    assert [catalan(n) for n in range(7)] == [1, 1, 2, 5, 14, 42, 132]
    assert [central_binomial(n) for n in range(2, 8)] == [2, 3, 6, 10, 20, 35]
    assert q_integer(3, "u", 2) == 1 + u ** 2 + u ** 4
    assert double_factorial_binom(5, 2) == Fraction(15, 2 * 3)

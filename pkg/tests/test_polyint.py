from fractions import Fraction

import pytest
from hypothesis import assume, given
from hypothesis import strategies as st

from tlint import polyint
from tlint.exactmath import DimError, DomainError, Matrix, Poly, RationalFunction, inverse, rank
from tlint.polyint import (
    PowerBasis,
    centralizer_dimension,
    construct_generator,
    exceptional_scan,
    express_in_polynomial,
    express_numeric,
    hamiltonian,
    minimal_polynomial,
    rho,
    specialize,
    spectrum_nondegenerate,
    transfer_expression,
    tt_hat_coefficients,
    verify_expression,
)
from tlint.tlcore import BETA
from tlint.transfer import build_transfer

B = BETA


def square(n):
    return st.lists(st.lists(st.integers(-2, 2), min_size=n, max_size=n), min_size=n, max_size=n)


def matpow(rows, k):
    n = len(rows)
    out = [[int(i == j) for j in range(n)] for i in range(n)]
    for _ in range(k):
        out = [[sum(out[i][m] * rows[m][j] for m in range(n)) for j in range(n)] for i in range(n)]
    return out


def brute_minpoly_degree(rows):
    """Smallest k with I, M, ..., M^k linearly dependent."""
    vecs = []
    for k in range(len(rows) + 1):
        vecs.append([x for r in matpow(rows, k) for x in r])
        if rank(vecs) < len(vecs):
            return k
    raise AssertionError("Cayley-Hamilton violated")


@given(st.integers(1, 5).flatmap(square))
def test_minimal_polynomial_against_power_dependence(rows):
    M = Matrix.from_dense(rows)
    m = minimal_polynomial(M)
    assert m.degree == brute_minpoly_degree(rows)
    assert m.coeffs[-1] == 1
    n = len(rows)
    total = [[0] * n for _ in range(n)]
    for i, c in enumerate(m.coeffs):
        P = matpow(rows, i)
        total = [[total[a][b] + c * P[a][b] for b in range(n)] for a in range(n)]
    assert all(x == 0 for r in total for x in r)


def test_minimal_polynomial_examples():
    assert minimal_polynomial(Matrix.from_dense([[2, 0], [0, 2]])).coeffs == [-2, 1]
    m = minimal_polynomial(Matrix.from_dense([[1, 1], [0, 1]]))
    assert m.coeffs == [1, -2, 1] and not m.squarefree


@pytest.mark.parametrize("n,ham", [(3, "h0"), (4, "h0"), (3, "hbeta")])
def test_symbolic_routes_agree(n, ham):
    M = rho(hamiltonian(n, ham))
    a = minimal_polynomial(M, method="krylov")
    c = minimal_polynomial(M, method="interpolate")
    assert a.coeffs == c.coeffs


@given(st.fractions(min_value=-5, max_value=5, max_denominator=4))
def test_specialisation_commutes_with_minimal_polynomial(beta):
    assume(beta not in (0, 1, -1) and beta * beta != 2)
    sym = minimal_polynomial(rho(hamiltonian(3, "h0")))
    num = minimal_polynomial(rho(hamiltonian(3, "h0", beta)))
    want = [c.evaluate({"beta": beta}) if isinstance(c, Poly) else c for c in sym.coeffs]
    assert num.coeffs == want


def test_degree_drops_where_the_representation_is_not_faithful():
    h = specialize(hamiltonian(4, "h0"), 0)
    assert PowerBasis(h).degree == 6
    assert minimal_polynomial(rho(h)).degree == 3


def test_nondegenerate_spectrum():
    assert spectrum_nondegenerate(Matrix.diagonal([1, 2, 3]))
    assert not spectrum_nondegenerate(Matrix.diagonal([1, 1, 2]))
    assert spectrum_nondegenerate(Matrix.from_dense([[0, 1], [1, 0]]))
    assert not spectrum_nondegenerate(rho(specialize(hamiltonian(5, "h0"), 0)))


@pytest.mark.parametrize("n,beta", [(2, 5), (3, 7), (4, 3)])
def test_centralizer_equals_power_span_for_generic_beta(n, beta):
    h = hamiltonian(n, "h0")
    assert centralizer_dimension(h, n, beta) == PowerBasis(specialize(h, beta)).degree


def test_hbeta_needs_nonzero_beta():
    with pytest.raises(DomainError):
        hamiltonian(3, "hbeta", 0)


@given(st.fractions(min_value=-6, max_value=6, max_denominator=5))
def test_numeric_expression_round_trip(beta):
    assume(beta not in (0, 2, -2))
    T = build_transfer(3)
    h = hamiltonian(3, "h0")
    ex = express_numeric(T, h, beta)
    hb = specialize(h, beta)
    assert ex.status == "exact"
    assert ex.rebuild(hb) == specialize(T.element, beta)


@pytest.mark.parametrize("n,ham", [(2, "h0"), (3, "h0"), (4, "h0"), (2, "hbeta"), (3, "hbeta")])
def test_symbolic_expression_round_trip(n, ham):
    T = build_transfer(n).element
    h = hamiltonian(n, ham)
    ex = express_in_polynomial(T, h)
    assert verify_expression(ex, T, h)
    broken = polyint.PolyExpression(ex.scalar, ex.coeffs, ex.f, ex.status, ex.var, ex.degree,
                                    [ex.a[0] + 1] + ex.a[1:], ex.prefactor)
    assert not verify_expression(broken, T, h)


def test_two_strand_expression():
    ex = transfer_expression(2)
    u = Poly.var("u")
    assert ex.f == 1
    assert ex.coeffs == [-u * (B + 2 * u) * (2 + B * u)]


def test_x_form_for_three_strands_has_no_correction():
    r = tt_hat_coefficients(3)
    assert r["f"] == 1 and not any(r["a_hat"].values())


def test_scan_classification():
    rep = exceptional_scan(3, "-2/beta", [0, 2, 3])
    assert rep[Fraction(0)]["defined"] is False
    assert rep[Fraction(2)]["exceptional"] and not rep[Fraction(3)]["exceptional"]
    rep0 = exceptional_scan(3, "0", [2, 3])
    assert all(r["expressible"] for r in rep0.values())


def test_construct_generator():
    S = [[1, 1, 0], [0, 1, 1], [1, 0, 1]]
    G = construct_generator(S, [1, 2])
    assert minimal_polynomial(G).degree == 2
    X = Matrix.from_dense(S) @ Matrix.diagonal([5, -1, -1]) @ Matrix.from_dense(inverse(S))
    assert G @ X == X @ G
    with pytest.raises(DimError):
        construct_generator([[1, 1], [1, 1]], [1, 1])
    with pytest.raises(DimError):
        construct_generator(S, [1, 1])


@pytest.mark.parametrize("n", [2, 3, 4])
def test_jones_wenzl_is_a_polynomial_in_h0(n):
    assert polyint.verify_jw_polynomial(n, "0")


def test_rational_function_coefficients_stay_exact():
    m = minimal_polynomial(rho(hamiltonian(3, "hbeta"))).coeffs
    assert isinstance(m[1], RationalFunction)
    assert m[1] * (4 * B * B) == B ** 6 + 3 * B ** 4 + 12 * B ** 2 - 16


def test_rational_root_of_the_six_strand_polynomial_is_exceptional():
    rep = exceptional_scan(6, "0", [Fraction(1, 2), Fraction(3)])
    half, three = rep[Fraction(1, 2)], rep[Fraction(3)]
    assert half["exceptional"] and not half["expressible"] and half["minpoly_degree"] == 19
    assert three["expressible"] and three["minpoly_degree"] == 20

from fractions import Fraction

import pytest
from hypothesis import given
from hypothesis import strategies as st

from tlint.exactmath import DomainError, Poly, chebyshev
from tlint.tlcore import BETA, TLElement, e, one
from tlint.transfer import (
    braid_element,
    build_transfer,
    commutator_check,
    crossing_and_tt,
    expected_identity_points,
    gamma_decompose,
    h0,
    hamiltonian_at,
    hbeta,
    identity_points,
    isotropic_value,
    palindromic,
    prefactor,
    scalar_part,
)

U = Poly.var("u")
B = BETA
rationals = st.fractions(min_value=-6, max_value=6, max_denominator=5)


def truncate(T, order):
    """Coefficients of u^0..u^order of T."""
    return T.map_coeffs(lambda c: sum((c.coefficient("u", k) * U ** k for k in range(order + 1)), Poly.const(0))
                        if isinstance(c, Poly) else c)


def test_single_strand():
    assert build_transfer(1).element == one(1).scale(B + 2 * U + B * U * U)


@pytest.mark.parametrize("n", range(1, 6))
def test_value_at_zero_is_beta(n):
    T = build_transfer(n).element
    assert T.map_coeffs(lambda c: c.subs({"u": 0})) == one(n).scale(B)


@pytest.mark.parametrize("n", range(2, 6))
def test_second_order_expansion(n):
    T = build_transfer(n).element
    h = h0(n)
    want = h.scale(-2 * U * B) + (h * h).scale(2 * B * U ** 2) + h.scale((B * B - 4) * U ** 2)
    assert truncate(T, 2).non_identity() == want
    assert truncate(T, 3).identity_coeff() == B + 2 * U + B * U ** 2 + 2 * U ** 3


@pytest.mark.parametrize("n", range(2, 6))
def test_structure(n):
    T = build_transfer(n)
    assert palindromic(T)
    g = gamma_decompose(n)
    assert g["scalar"] == scalar_part(n)
    rebuilt = one(n).scale(g["scalar"]) + TLElement(n, {d: c * prefactor() for d, c in g["gammas"].items()})
    assert rebuilt == T.element
    assert crossing_and_tt(n)["palindrome"]


@pytest.mark.parametrize("n", range(2, 5))
def test_ttilde_substitution(n):
    tt = crossing_and_tt(n)["tt"]
    x = Poly.var("x")
    T = build_transfer(n).element
    # the identity coefficient of Ttilde is beta U_n(x/2) + 2 U_{n-1}(x/2)
    want = B * chebyshev("U", n, "x").subs({"x": x / 2}) + 2 * chebyshev("U", n - 1, "x").subs({"x": x / 2})
    assert tt.identity_coeff() == want
    assert T.identity_coeff() == scalar_part(n)


@given(rationals, st.integers(2, 4))
def test_numeric_beta_matches_specialisation(beta, n):
    sym = build_transfer(n).element
    num = build_transfer(n, beta).element
    specialised = TLElement(n, {d: c.subs({"beta": beta}) for d, c in sym.terms.items()}, num.beta)
    assert specialised == num


@given(rationals, rationals, st.sampled_from([Fraction(3), Fraction(-2), Fraction(1, 3)]))
def test_numeric_commutation(x, y, beta):
    T = build_transfer(3, beta).element
    a = T.map_coeffs(lambda c: c.subs({"u": x}) if isinstance(c, Poly) else c)
    c = T.map_coeffs(lambda c: c.subs({"u": y}) if isinstance(c, Poly) else c)
    assert a * c == c * a


@pytest.mark.parametrize("n", range(2, 5))
def test_commutator(n):
    assert commutator_check(n)


def test_mutated_r_operator_breaks_commutation():
    assert not commutator_check(3, mutate=True)
    assert not commutator_check(4, mutate=True)


@given(st.sampled_from([Fraction(3), Fraction(2), Fraction(-2), Fraction(0), Fraction(7, 2), Fraction(-5, 3)]),
       st.integers(2, 5))
def test_identity_points(beta, n):
    assert identity_points(n, beta).points == expected_identity_points(beta)


def test_identity_points_need_two_strands():
    with pytest.raises(DomainError):
        identity_points(1, 3)


@pytest.mark.parametrize("n", range(2, 6))
def test_h0_and_its_normalisations(n):
    assert hamiltonian_at(n, 0, "h0").principal == h0(n)
    assert hamiltonian_at(n, 0, "h0", beta=5).principal == h0(n, 5)
    # at beta = 0 the renormalised operator has the same principal hamiltonian
    assert hamiltonian_at(n, 0, "h0", beta=0).principal == h0(n, 0)


@pytest.mark.parametrize("n", range(2, 5))
def test_two_nonzero_identity_points_give_the_same_hamiltonian(n):
    beta = Fraction(7, 3)
    a = hamiltonian_at(n, -2 / beta, "hbeta", beta=beta).principal
    c = hamiltonian_at(n, -beta / 2, "hbeta", beta=beta).principal
    assert a == c
    sym = hbeta(n)
    assert a == TLElement(n, {d: v.evaluate({"beta": beta}) if hasattr(v, "evaluate") else v
                              for d, v in sym.terms.items()}, a.beta)


def test_hamiltonian_errors():
    with pytest.raises(DomainError):
        hamiltonian_at(3, 1, beta=3)
    with pytest.raises(DomainError):
        hamiltonian_at(3, Fraction(-1), "hbeta", beta=2)


@pytest.mark.parametrize("n", range(2, 5))
def test_braid_element(n):
    F = braid_element(n)
    q = Poly.var("q")
    assert F.beta == q + q ** -1
    for i in range(1, n):
        assert e(n, i, F.beta) * F == F * e(n, i, F.beta)


@pytest.mark.parametrize("n", range(2, 6))
def test_isotropic_point(n):
    assert isotropic_value(n, -2) == one(n, -2).scale(-2)
    assert isotropic_value(n).identity_coeff() == (n + 1) * B + 2 * n

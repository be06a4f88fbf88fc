from fractions import Fraction

import pytest
from hypothesis import given
from hypothesis import strategies as st

from tlint import eightvertex as ev
from tlint.exactmath import DomainError, Poly

U = Poly.var("u")


def xor_elements(n):
    return st.dictionaries(st.integers(0, (1 << n) - 1), st.lists(st.integers(-3, 3), min_size=1, max_size=3),
                           max_size=4).map(lambda d: ev.XorElement(n, d))


@given(st.integers(1, 4).flatmap(lambda n: st.tuples(xor_elements(n), xor_elements(n), xor_elements(n))))
def test_group_algebra_is_commutative_and_associative(t):
    a, b, c = t
    assert a * b == b * a
    assert (a * b) * c == a * (b * c)
    assert a * (b + c) == a * b + a * c


@given(st.integers(1, 3).flatmap(lambda n: st.tuples(xor_elements(n), xor_elements(n))))
def test_matrix_form_is_a_homomorphism(t):
    a, b = t
    assert (a * b).to_matrix() == a.to_matrix() @ b.to_matrix()


@pytest.mark.parametrize("n", range(1, 7))
def test_three_forms_agree(n):
    assert ev.forms_agree(n)


def test_transfer_matrix_forms():
    assert ev.transfer_matrix(2, "recursive") == ev.transfer_matrix(2, "additive")
    with pytest.raises(DomainError):
        ev.transfer_matrix(2, "other")
    with pytest.raises(DomainError):
        ev.transfer_matrix(0)


@pytest.mark.parametrize("n", range(1, 4))
def test_commuting_family(n):
    assert ev.commuting_check(n)


@pytest.mark.parametrize("n", range(1, 5))
def test_product_states_are_eigenvectors(n):
    """Direct symbolic product of the recursive matrix with every product state."""
    T = ev.transfer_recursive(n)
    for col, s in enumerate(ev.sign_sequences(n)):
        v = [int(x) for x in ev.sign_matrix(n)[:, col]]
        lam = Poly.from_dense(ev.eigenvalue(n, ev.sign_changes(s)), "u")
        assert T.apply(v) == [lam * x for x in v]


@pytest.mark.parametrize("n", range(1, 8))
def test_eigenvector_check(n):
    assert ev.eigenvector_check(n)


@pytest.mark.parametrize("n", range(1, 8))
def test_spectrum_multiplicities(n):
    sp = ev.spectrum(n)
    assert sum(e["multiplicity"] for e in sp.entries) == 2 ** n
    counts = [0] * n
    for s in ev.sign_sequences(n):
        counts[ev.sign_changes(s)] += 1
    assert counts == [e["multiplicity"] for e in sp.entries]
    assert ev.idempotent_ranks(n) == counts


@pytest.mark.parametrize("n", range(1, 7))
def test_hamiltonian_idempotents_and_expansions(n):
    assert ev.minpoly_check(n)
    assert all(ev.idempotent_check(n).values())
    assert ev.mimuj_check(n)
    assert ev.tau_reconstruction_check(n)
    assert all(ev.spectral_expansion(n).values())
    assert ev.first_order_check(n)


def test_hamiltonian_eigenvalues():
    h = ev.hamiltonian(3)
    assert [e["mu"] for e in h["eigen"]] == [2, 0, -2]
    assert [e["multiplicity"] for e in h["eigen"]] == [2, 4, 2]
    assert ev.m_poly(3) == [0, -4, 0, 1]


@given(st.integers(1, 40).flatmap(lambda n: st.tuples(st.just(n), st.integers(0, n - 1))))
def test_integer_weights_match_rational_sum(nk):
    n, k = nk
    assert ev.conjecture_coefficients(n, k) == ev._direct_coefficients(n, k)


@given(st.integers(1, 30).flatmap(lambda n: st.tuples(st.just(n), st.integers(0, n - 1))))
def test_t_form_matches_u_form(nk):
    n, k = nk
    assert ev.check_eigenspace(n, k) and ev.check_eigenspace_in_u(n, k)


@pytest.mark.parametrize("n", range(1, 6))
def test_double_factorial_form_as_an_operator(n):
    assert ev.conjecture_matrix_check(n)


def test_conjecture_range_and_mutation():
    res = ev.verify_conjecture_tmu(40)
    assert all(v is True for v in res.values())
    assert ev.verify_conjecture_tmu(6, mutate=True)[5] == {"n": 5, "k": 0}
    assert ev.verify_conjecture_tmu(5, mutate=True, in_u=True)[5] == {"n": 5, "k": 0}
    with pytest.raises(DomainError):
        ev.verify_conjecture_tmu(0)


def test_int64_guard():
    big = ev.XorElement(2, {0: [2 ** 61]})
    with pytest.raises(OverflowError):
        big.to_array()
    with pytest.raises(DomainError):
        ev.XorElement(1, {0: [Fraction(1, 2)]}).to_array()

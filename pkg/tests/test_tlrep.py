from fractions import Fraction

import pytest
from hypothesis import given
from hypothesis import strategies as st

from tlint.exactmath import DomainError, Poly, catalan, determinant
from tlint.tlcore import TLElement, e, enumerate_diagrams
from tlint.tlrep import (
    act,
    bilinear,
    bilinear_adjoint_check,
    defect_counts,
    dim_standard,
    enumerate_link_states,
    full_basis,
    gram_det_check,
    gram_formula,
    gram_matrix,
    is_faithful_kernel,
    is_faithful_modular,
    rep_matrix,
)

b = Poly.var("beta")
diagrams = {n: enumerate_diagrams(n) for n in range(1, 6)}


@pytest.mark.parametrize("n", range(0, 9))
def test_dimensions(n):
    assert sum(dim_standard(n, d) ** 2 for d in defect_counts(n)) == catalan(n)
    for d in defect_counts(n):
        states = enumerate_link_states(n, d)
        assert len(states) == dim_standard(n, d)
        for x in states:
            assert sum(1 for p in x if p < 0) == d
            assert all(p < 0 or x[p] == i for i, p in enumerate(x))


def test_bad_defect_count():
    with pytest.raises(DomainError):
        dim_standard(4, 1)


@given(st.integers(1, 5).flatmap(lambda n: st.tuples(st.sampled_from(diagrams[n]), st.sampled_from(diagrams[n]))),
       st.sampled_from([Fraction(3), Fraction(-1, 2), Fraction(0)]))
def test_representation_is_a_homomorphism(pair, beta):
    p, r = pair
    a = TLElement.diagram(p, beta=beta)
    c = TLElement.diagram(r, beta=beta)
    assert rep_matrix(a * c).matrix == rep_matrix(a).matrix @ rep_matrix(c).matrix


@pytest.mark.parametrize("n", range(2, 6))
def test_symbolic_homomorphism_on_generators(n):
    for i in range(1, n):
        for j in range(1, n):
            lhs = rep_matrix(e(n, i) * e(n, j)).matrix
            assert lhs == rep_matrix(e(n, i)).matrix @ rep_matrix(e(n, j)).matrix


def test_e1_on_two_strands():
    cup = enumerate_link_states(2, 0)[0]
    assert act(e(2, 1), cup) == {cup: b}
    assert act(e(2, 1), enumerate_link_states(2, 2)[0]) == {}


@pytest.mark.parametrize("n,d", [(n, d) for n in range(1, 6) for d in defect_counts(n)])
def test_bilinear_form_is_invariant_and_symmetric(n, d):
    assert bilinear_adjoint_check(n, d, trials=8)
    states = enumerate_link_states(n, d)
    for x in states:
        for y in states:
            assert bilinear(x, y) == bilinear(y, x)


@pytest.mark.parametrize("n,d", [(n, d) for n in range(1, 7) for d in defect_counts(n)])
def test_gram_determinant(n, d):
    assert gram_det_check(n, d)["equal"]


def test_gram_small_cases():
    assert gram_matrix(2, 0).to_dense() == [[b]]
    assert determinant(gram_matrix(4, 0)) == gram_formula(4, 0)
    assert gram_formula(3, 1) == b * b - 1


def test_full_basis_order():
    assert [d for d, _ in full_basis(4)] == [0, 0, 2, 2, 2, 4]


@pytest.mark.parametrize("n", range(2, 6))
def test_faithfulness(n):
    assert is_faithful_kernel(n, 3) and is_faithful_modular(n, 3)
    # at beta = 0 the standard modules lose faithfulness exactly for even n
    assert is_faithful_kernel(n, 0) == (n % 2 == 1) == is_faithful_modular(n, 0)

from fractions import Fraction

import pytest
from hypothesis import given
from hypothesis import strategies as st

from tlint.exactmath import DimError, DomainError, catalan
from tlint.tlcore import (
    BETA,
    RingError,
    TLElement,
    compose,
    dagger,
    e,
    enumerate_diagrams,
    generators,
    is_diagram,
    jones_wenzl,
    jones_wenzl_wenzl,
    one,
    partial_trace,
    rotate,
    rotate_diagram,
    tensor_concat,
    through_lines,
)


def stack(a, b):
    """Reference product by union-find on the glued picture: b sits on top of a."""
    m = len(a)
    n = m // 2
    parent = {}

    def find(v):
        while parent.setdefault(v, v) != v:
            v = parent[v]
        return v

    def union(v, w):
        parent[find(v)] = find(w)

    for i in range(m):
        union(("a", i), ("a", a[i]))
        union(("b", i), ("b", b[i]))
    for j in range(n):
        union(("a", m - 1 - j), ("b", j))
    outer = [("a", i) for i in range(n)] + [("b", i) for i in range(n, m)]
    ends = {}
    for v in outer:
        ends.setdefault(find(v), []).append(v[1])
    result = [None] * m
    for x, y in ends.values():
        result[x], result[y] = y, x
    roots = {find(v) for v in parent}
    return tuple(result), len(roots - set(ends))


diagram_of = {n: enumerate_diagrams(n) for n in range(1, 6)}


def elements(n, beta):
    ds = diagram_of[n]
    return st.dictionaries(st.integers(0, len(ds) - 1), st.integers(-3, 3), max_size=4).map(
        lambda d: TLElement(n, {ds[k]: c for k, c in d.items()}, beta))


@pytest.mark.parametrize("n", range(0, 7))
def test_diagram_count_is_catalan(n):
    ds = enumerate_diagrams(n)
    assert len(ds) == catalan(n) == len(set(ds))
    assert all(is_diagram(p) for p in ds)


@given(st.integers(1, 5).flatmap(lambda n: st.tuples(st.sampled_from(diagram_of[n]), st.sampled_from(diagram_of[n]))))
def test_compose_matches_path_following(pair):
    a, b = pair
    assert compose(a, b) == stack(a, b)


@given(st.integers(2, 5).flatmap(lambda n: st.tuples(elements(n, 3), elements(n, 3), elements(n, 3))))
def test_associative_and_distributive(triple):
    a, b, c = triple
    assert (a * b) * c == a * (b * c)
    assert a * (b + c) == a * b + a * c


@given(st.integers(1, 5).flatmap(lambda n: st.tuples(elements(n, 2), elements(n, 2))))
def test_dagger_is_anti_involution(pair):
    a, b = pair
    assert dagger(dagger(a)) == a
    assert dagger(a * b) == dagger(b) * dagger(a)


@pytest.mark.parametrize("n", range(2, 6))
def test_generator_relations(n):
    for i in range(1, n):
        assert e(n, i) * e(n, i) == e(n, i).scale(BETA)
        if i + 1 < n:
            assert e(n, i) * e(n, i + 1) * e(n, i) == e(n, i)
            assert e(n, i + 1) * e(n, i) * e(n, i + 1) == e(n, i + 1)
        for j in range(i + 2, n):
            assert e(n, i) * e(n, j) == e(n, j) * e(n, i)


@pytest.mark.parametrize("n", range(1, 6))
def test_rotation_has_order_2n(n):
    for p in diagram_of[n]:
        assert rotate_diagram(p, 2 * n) == p
        assert is_diagram(rotate_diagram(p, 1))
    a = TLElement.diagram(diagram_of[n][-1])
    assert rotate(rotate(a, 1), 2 * n - 1) == a


@pytest.mark.parametrize("n", range(1, 6))
def test_partial_trace(n):
    assert partial_trace(one(n + 1)) == one(n).scale(BETA)
    assert partial_trace(e(n + 1, n)) == one(n)


def test_tensor_concat():
    assert tensor_concat(e(2, 1), e(2, 1)) == e(4, 1) * e(4, 3)
    assert tensor_concat(one(1), e(2, 1)) == e(3, 2)


def test_through_lines():
    assert through_lines(one(3).sorted_terms()[0][0]) == 3
    assert through_lines(compose(e(3, 1).sorted_terms()[0][0], e(3, 2).sorted_terms()[0][0])[0]) == 1


def test_errors():
    with pytest.raises(DimError):
        e(2, 1) * e(3, 1)
    with pytest.raises(RingError):
        e(2, 1, 2) * e(2, 1, 3)
    with pytest.raises(DomainError):
        TLElement.diagram((1, 0, 3))


@pytest.mark.parametrize("n", range(2, 6))
def test_jones_wenzl_recursions_agree(n):
    assert jones_wenzl(n) == jones_wenzl_wenzl(n)


@pytest.mark.parametrize("n", range(2, 7))
def test_jones_wenzl_properties(n):
    W = jones_wenzl(n)
    assert W.identity_coeff() == 1
    assert W * W == W
    for g in generators(n):
        assert not (g * W) and not (W * g)


def test_jones_wenzl_two_strands():
    W2 = jones_wenzl(2)
    assert W2.identity_coeff() == 1
    assert W2.coeff(e(2, 1).sorted_terms()[0][0]) * BETA == -1


def test_jones_wenzl_at_numeric_beta():
    W = jones_wenzl(3, Fraction(5, 2))
    for g in generators(3, Fraction(5, 2)):
        assert not (g * W)

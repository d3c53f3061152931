import pytest
from hypothesis import given, settings, strategies as st

from nervelab.cat import (
    FiniteFunctor,
    category_from_generators,
    classical_nerve,
    contractible_groupoid,
    cyclic_group,
    discrete_category,
    group_as_category,
    identity_functor,
    nerve_simplex_string,
    ordinal,
    poset_category,
    product_category,
    product_group,
    string_simplex,
    symmetric_group,
)
from oracles import strings_count


@pytest.mark.parametrize("C", [
    ordinal(3),
    group_as_category(symmetric_group(3)),
    contractible_groupoid("abc"),
    product_category(ordinal(1), group_as_category(cyclic_group(2))),
    discrete_category([1, 2]),
], ids=lambda C: C.name)
def test_axioms(C):
    assert C.check() == []


@settings(max_examples=20, deadline=None)
@given(st.integers(1, 6), st.integers(1, 3))
def test_group_nerves_count_strings(n, m):
    G = product_group(cyclic_group(n), cyclic_group(m))
    C = group_as_category(G)
    X = classical_nerve(C, 2)
    assert len(X.simplices(2)) == strings_count(C.arrows, C.objects, 2) == (n * m) ** 2
    assert C.is_groupoid()


def test_string_simplex_round_trip():
    C = ordinal(2)
    s = string_simplex(C, 0, [(0, 0), (0, 1), (1, 1), (1, 2)])
    assert s.surj == (0, 0, 1, 1, 2)
    assert nerve_simplex_string(C, s) == (0, ((0, 0), (0, 1), (1, 1), (1, 2)))


def test_equivalence_not_isomorphism():
    E2 = contractible_groupoid([0, 1])
    pt = contractible_groupoid([0])
    F = FiniteFunctor(E2, pt, {0: 0, 1: 0}, {a: (0, 0) for a in E2.arrows})
    assert F.check() == [] and F.is_equivalence() and not F.is_isomorphism()
    assert identity_functor(E2).is_isomorphism()


def test_non_essentially_surjective():
    F = FiniteFunctor(ordinal(0), ordinal(1), {0: 0}, {(0, 0): (0, 0)})
    assert F.is_fully_faithful() and not F.is_essentially_surjective()


def test_generators_helper_and_inverse():
    C = category_from_generators([0, 1], {"f": (0, 1), "g": (1, 0)},
                                 {("g", "f"): "id0", ("f", "g"): "id1"})
    assert C.check() == []
    assert C.inverse("f") == "g" and C.is_groupoid()


def test_bad_composition_detected():
    C = poset_category([0, 1], lambda a, b: a <= b)
    C.compose_table[((0, 1), (0, 0))] = (0, 0)
    assert C.check()

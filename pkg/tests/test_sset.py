from math import comb

import pytest
from hypothesis import given, settings, strategies as st

from nervelab.cat import classical_nerve, group_as_category, cyclic_group, ordinal, symmetric_group
from nervelab.sset import (
    CapError,
    Simplex,
    boundary_subcomplex,
    codegeneracy_op,
    coface_op,
    compose_ops,
    cube,
    cube_boundary,
    cube_horn,
    enumerate_maps,
    epi_mono,
    horn,
    identity_map,
    is_kan,
    is_kan_fibration,
    monotone_maps,
    pi0,
    pi1_edge_path,
    product,
    quotient_collapse,
    smash,
    standard_simplex,
)
from oracles import monotone_count, strings_count

SPACES = {
    "delta3": lambda: standard_simplex(3),
    "prod12": lambda: product(standard_simplex(1), standard_simplex(2)),
    "BS3": lambda: classical_nerve(group_as_category(symmetric_group(3)), 3),
}
_BUILT = {k: f() for k, f in SPACES.items()}


@pytest.mark.parametrize("n", range(5))
def test_standard_simplex_counts(n):
    X = standard_simplex(n)
    assert X.counts() == tuple(comb(n + 1, k + 1) for k in range(n + 1))
    assert len(X.simplices(2)) == monotone_count(2, n)


def test_horn_and_boundary_counts():
    assert horn(3, 1).counts() == (4, 6, 3)
    assert boundary_subcomplex(2).counts() == (3, 3)
    assert not boundary_subcomplex(3).check()


def test_cap_error():
    with pytest.raises(CapError):
        standard_simplex(3, cap=2)


def test_product_square():
    P = product(standard_simplex(1), standard_simplex(1))
    assert P.counts() == (4, 5, 2)
    assert not P.check()


@settings(max_examples=60, deadline=None)
@given(st.sampled_from(sorted(SPACES)), st.data())
def test_operator_action_is_functorial(name, data):
    X = _BUILT[name]
    k = data.draw(st.integers(0, 3))
    s = data.draw(st.sampled_from(X.simplices(k)))
    m = data.draw(st.integers(0, 3))
    a = data.draw(st.sampled_from(list(monotone_maps(m, k))))
    p = data.draw(st.integers(0, 3))
    b = data.draw(st.sampled_from(list(monotone_maps(p, m))))
    assert X.apply(X.apply(s, a), b) == X.apply(s, compose_ops(a, b))


@settings(max_examples=60, deadline=None)
@given(st.integers(1, 4), st.data())
def test_cosimplicial_identities_on_ops(n, data):
    j = data.draw(st.integers(1, n + 1))
    i = data.draw(st.integers(0, j - 1))
    # d^j d^i = d^i d^{j-1} for i < j
    assert compose_ops(coface_op(n + 1, j), coface_op(n, i)) == compose_ops(coface_op(n + 1, i), coface_op(n, j - 1))
    k = data.draw(st.integers(0, n - 1))
    # s^k d^k = s^k d^{k+1} = id
    for t in (k, k + 1):
        assert compose_ops(codegeneracy_op(n - 1, k), coface_op(n, t)) == tuple(range(n))


@settings(max_examples=80, deadline=None)
@given(st.integers(0, 4), st.integers(0, 4), st.data())
def test_epi_mono_factorization(p, q, data):
    op = data.draw(st.sampled_from(list(monotone_maps(p, q))))
    mono, epi = epi_mono(op)
    assert compose_ops(mono, epi) == op
    assert len(set(mono)) == len(mono)
    assert set(epi) == set(range(len(mono)))


def test_simplex_word_round_trip():
    s = Simplex("x", (0, 0, 1, 1, 1))
    assert Simplex.from_word("x", s.word, s.dim) == s


def test_group_nerve_is_kan_with_right_pi1():
    X = classical_nerve(group_as_category(cyclic_group(3)), 3)
    r = is_kan(X, 3)
    assert r.ok
    assert pi1_edge_path(X, "*", r).order == 3


def test_ordinal_nerve_is_inner_kan_only():
    X = classical_nerve(ordinal(2), 3)
    assert is_kan(X, 3, inner_only=True).ok
    r = is_kan(X, 2)
    assert not r.ok and r.first_failure() == (2, 0)


def test_horn_is_not_kan():
    r = is_kan(horn(2, 0), 2, exhaustive=True)
    assert not r.ok and r.witnesses


def test_nerve_counts_match_string_oracle():
    C = group_as_category(symmetric_group(3))
    X = classical_nerve(C, 3)
    for k in range(4):
        assert len(X.simplices(k)) == strings_count(C.arrows, C.objects, k)


@pytest.mark.parametrize("n", range(4))
def test_maps_from_circle_to_simplex(n):
    circle = quotient_collapse(standard_simplex(1), boundary_subcomplex(1))
    assert len(enumerate_maps(circle, standard_simplex(n))) == n + 1


def test_identity_is_kan_fibration():
    X = standard_simplex(2)
    assert is_kan_fibration(identity_map(X), 2).ok


def test_pi0_of_discrete_union():
    X = quotient_collapse(standard_simplex(2), boundary_subcomplex(2))
    assert len(pi0(X)) == 1
    assert len(pi0(boundary_subcomplex(1))) == 2


def test_cube_faces():
    c = cube([1, 2])
    assert not cube_boundary(c).check()
    H = cube_horn(c, 1, 1)
    assert len(set(H.all_cells())) < len(set(cube_boundary(c).all_cells()))


def test_smash_of_circles_has_one_vertex():
    circle = quotient_collapse(standard_simplex(1), boundary_subcomplex(1))
    v = circle.basepoint
    S = smash(circle, circle, v, v, 2)
    assert S.counts()[0] == 1
    assert not S.check()

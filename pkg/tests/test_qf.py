import pytest
from hypothesis import given, settings, strategies as st

from nervelab import qf
from nervelab.cat import (
    FiniteFunctor,
    classical_nerve,
    contractible_groupoid,
    cyclic_group,
    discrete_category,
    group_as_category,
    identity_functor,
    ordinal,
    symmetric_group,
)
from nervelab.sset import identity_map, monotone_maps, standard_simplex
from oracles import strings_count

BASES = {
    "[2]": ordinal(2),
    "BZ2": group_as_category(cyclic_group(2)),
    "E2": contractible_groupoid([0, 1]),
}


@pytest.mark.parametrize("name", sorted(BASES))
def test_simplex_category_counts(name):
    B = BASES[name]
    S = qf.simplex_category(B, 3)
    for n in range(4):
        assert S.count(n) == strings_count(B.arrows, B.objects, n)


@settings(max_examples=60, deadline=None)
@given(st.sampled_from(sorted(BASES)), st.data())
def test_restriction_is_functorial(name, data):
    B = BASES[name]
    n = data.draw(st.integers(0, 3))
    alpha = data.draw(st.sampled_from(qf.simplices_over(B, n)))
    m = data.draw(st.integers(0, 3))
    u = data.draw(st.sampled_from(list(monotone_maps(m, n))))
    k = data.draw(st.integers(0, 3))
    v = data.draw(st.sampled_from(list(monotone_maps(k, m))))
    uv = tuple(u[t] for t in v)
    lhs = qf.restrict_simplex(B, qf.restrict_simplex(B, alpha, u), v)
    assert lhs == qf.restrict_simplex(B, alpha, uv)


def test_product_projection_cartesian_arrows():
    p = qf.product_projection(ordinal(1), group_as_category(cyclic_group(2)))
    # every arrow of B x G is cartesian since the fiber is a groupoid
    assert all(qf.is_cartesian(p, f) for f in p.total.arrows)
    assert qf.is_fibered(p).ok


def test_non_fibered_report():
    E = discrete_category(["a", "b"])
    B = ordinal(1)
    P = FiniteFunctor(E, B, {"a": 0, "b": 1}, {("id", "a"): (0, 0), ("id", "b"): (1, 1)})
    r = qf.is_fibered(qf.FiberedCategory(E, B, P))
    assert not r.ok and r.f1_failures
    with pytest.raises(ValueError):
        qf.qf_from_fibered(qf.FiberedCategory(E, B, P), 2)


def test_grothendieck_is_fibered_and_quasifibered():
    Z4, Z2 = group_as_category(cyclic_group(4)), group_as_category(cyclic_group(2))
    quot = FiniteFunctor(Z4, Z2, {"*": "*"}, {g: g % 2 for g in Z4.arrows})
    B = ordinal(1)
    acts = {(0, 0): identity_functor(Z2), (1, 1): identity_functor(Z4), (0, 1): quot}
    assert qf.check_strict_functor(B, {0: Z2, 1: Z4}, acts) == []
    p = qf.grothendieck(B, {0: Z2, 1: Z4}, acts)
    assert p.total.check() == []
    Q = qf.qf_from_fibered(p, 2)
    assert Q.qf_failures() == [] and Q.functoriality_failures() == []
    assert qf.compare_lim(p, 2).ok


def test_lim_diagram_needs_two_levels():
    p = qf.product_projection(ordinal(1), contractible_groupoid([0, 1]))
    with pytest.raises(ValueError):
        qf.lim_diagram(qf.qf_from_fibered(p, 1))


def _constant(B, X):
    return qf.SDiagram(B, {b: X for b in B.objects}, {a: identity_map(X) for a in B.arrows})


def test_cosimplicial_replacement_identities():
    F = _constant(ordinal(1), classical_nerve(group_as_category(cyclic_group(2)), 3))
    assert F.check() == []
    R = qf.cosimplicial_replacement(F, 3)
    for m in range(2):
        assert R.identity_failures(m) == []


def test_holim_of_constant_point_is_point():
    H = qf.holim_sset(_constant(ordinal(2), standard_simplex(0)), 2, 2)
    assert [len(H.value.simplices(k)) for k in range(3)] == [1, 1, 1]
    assert "approximation" in H.label


def test_holim_guard():
    F = _constant(ordinal(1), classical_nerve(group_as_category(symmetric_group(3)), 3))
    with pytest.raises(MemoryError):
        qf.holim_sset(F, 2, 2, guard=10)


def test_ordinary_limit_of_constant_diagram():
    X = classical_nerve(group_as_category(cyclic_group(3)), 2)
    L = qf.lim_sset(_constant(ordinal(1), X), 2)
    assert [len(L.simplices(k)) for k in range(3)] == [len(X.simplices(k)) for k in range(3)]
    assert qf.pi0_count(L) == 1

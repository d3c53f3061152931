from nervelab import models
from nervelab.cat import FiniteFunctor, contractible_groupoid, cyclic_group, discrete_category, group_as_category, ordinal
from nervelab.scat import (
    LazyHoms,
    discrete_functor,
    discrete_scat,
    enumerate_functors,
    free_scat,
    group_nerve_scat,
    identity_functor,
    is_fibrant,
    is_fibrant_groupoid,
    is_weak_fibration,
    pi0_category,
    product_scat,
    rlp_scat,
    strong_equivalence_certificate,
)


def test_discrete_and_group_nerve_categories_are_valid():
    assert discrete_scat(ordinal(2), cap=2).check(2) == []
    G = group_nerve_scat(cyclic_group(2), cap=3)
    assert G.check(2) == []
    # one nondegenerate string (g, ..., g) per dimension
    assert G.hom("*", "*").counts() == (1, 1, 1, 1)


def test_product_scat():
    P = product_scat(discrete_scat(ordinal(1), cap=2), group_nerve_scat(cyclic_group(2), cap=2))
    assert P.check(1) == []


def test_free_scat_is_lazy_and_bounded():
    C = free_scat([0, 1, 2], [("a", 0, 1, 1), ("b", 1, 2, 2)], cap=2)
    assert isinstance(C.homs, LazyHoms)
    assert not dict.__contains__(C.homs, (0, 2))
    H = C.hom(0, 2)
    assert H.counts()[0] == 2 * 3  # vertices of Delta^1 x Delta^2
    bounded = free_scat([0], [("loop", 0, 0, 0)], cap=1, max_length=2)
    assert len(bounded.hom(0, 0).simplices(0)) == 3


def test_functors_out_of_cube_category_are_strings():
    C = discrete_scat(ordinal(2), cap=2)
    # functors from the 1-cube category are arrows of [2]
    assert len(enumerate_functors(models.delta_n(1), C)) == 6
    assert len(enumerate_functors(models.delta_n(2), C)) == 10


def test_pi0_of_group_nerve_is_point():
    P = pi0_category(group_nerve_scat(cyclic_group(3), cap=2))
    assert len(P.objects) == 1 and len(P.arrows) == 1


def test_fibrancy():
    assert is_fibrant(discrete_scat(ordinal(1), cap=2), 2).ok
    assert is_fibrant_groupoid(discrete_scat(contractible_groupoid([0, 1]), cap=2), 2)
    assert not is_fibrant_groupoid(discrete_scat(ordinal(1), cap=2), 2)


def test_weak_fibration_needs_iso_lifts():
    src, tgt = discrete_category([0, 1]), contractible_groupoid([0, 1])
    F = FiniteFunctor(src, tgt, {0: 0, 1: 1}, {("id", 0): (0, 0), ("id", 1): (1, 1)})
    f = discrete_functor(F, discrete_scat(src, cap=2), discrete_scat(tgt, cap=2))
    assert not is_weak_fibration(f, 2).ok


def test_identity_is_strong_equivalence():
    C = discrete_scat(group_as_category(cyclic_group(2)), cap=2)
    cert = strong_equivalence_certificate(identity_functor(C), 2)
    assert bool(cert)


def test_rlp_against_boundary_inclusion():
    full = models.delta_n(1)
    sub = full.restrict(lambda x, y, c: True, objects=[0, 1])
    Z2 = discrete_scat(group_as_category(cyclic_group(2)), cap=2)
    assert rlp_scat(sub, full, identity_functor(Z2)).ok

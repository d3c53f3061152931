import pytest

from nervelab.cat import classical_nerve, contractible_groupoid, cyclic_group, group_as_category, ordinal, symmetric_group
from nervelab.nerves import (
    adjunction_check,
    check_standard_diagonal,
    fill_horn_hc,
    hc_nerve,
    horn_map_from_faces,
    induced_map,
    isomorphic_via,
    nerve,
    standard_nerve,
    wbar_nerve,
)
from nervelab.scat import discrete_scat, identity_functor
from nervelab.sset import boundary_subcomplex, horn, standard_simplex

CATS = {
    "[2]": ordinal(2),
    "BZ3": group_as_category(cyclic_group(3)),
    "BS3": group_as_category(symmetric_group(3)),
    "E3": contractible_groupoid([0, 1, 2]),
}


@pytest.mark.parametrize("name", sorted(CATS))
@pytest.mark.parametrize("build", [hc_nerve, standard_nerve, wbar_nerve], ids=["hc", "standard", "wbar"])
def test_discrete_nerves_are_classical(name, build):
    C = CATS[name]
    N = build(discrete_scat(C, cap=3), 2)
    assert N.value.counts() == classical_nerve(C, 2).counts()
    assert not N.value.check()


def test_standard_nerve_diagonal_cross_check():
    N = standard_nerve(discrete_scat(CATS["[2]"], cap=3), 2)
    assert check_standard_diagonal(N) == []


def test_identity_induces_isomorphism():
    C = discrete_scat(CATS["BZ3"], cap=3)
    N = hc_nerve(C, 2)
    assert isomorphic_via(induced_map(identity_functor(C), N, N))


def test_functor_of_round_trips():
    N = hc_nerve(discrete_scat(CATS["E3"], cap=3), 2)
    for k in range(3):
        for s in N.value.simplices(k):
            assert N.simplex_of(N.functor_of(s)) == s


def test_outer_horn_fills_in_group_nerve():
    C = discrete_scat(CATS["BZ3"], cap=3)
    N = hc_nerve(C, 2)
    e = next(s for s in N.value.simplices(1) if s.surj == (0, 1))
    h = horn_map_from_faces(2, 0, N, {1: e, 2: e})
    assert fill_horn_hc(C, N, h, 2, 0).found


@pytest.mark.parametrize("S, n", [(standard_simplex(2), 2), (boundary_subcomplex(2), 2), (horn(2, 1), 2)],
                         ids=["simplex", "boundary", "horn"])
def test_adjunction_bijection(S, n):
    r = adjunction_check(S, n, discrete_scat(CATS["[2]"], cap=3))
    assert r.ok and r.maps == r.functors


def test_adjunction_naturality_under_restriction():
    C = discrete_scat(CATS["BZ3"], cap=3)
    assert adjunction_check(standard_simplex(2), 2, C, restrict_to=horn(2, 0)).ok


def test_unknown_flavor():
    with pytest.raises(ValueError):
        nerve(discrete_scat(CATS["[2]"], cap=2), 1, flavor="bogus")

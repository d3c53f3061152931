import pytest
from hypothesis import given, settings, strategies as st

from nervelab import models
from nervelab.sset import monotone_maps
from oracles import boolean_vertices, ind_count, word_count


@pytest.mark.parametrize("n", range(4))
def test_delta_n_homs_are_cubes(n):
    C = models.delta_n(n)
    assert C.check(1) == []
    for a in range(n + 1):
        for b in range(a, n + 1):
            assert len(C.hom(a, b).simplices(0)) == len(boolean_vertices(max(b - a - 1, 0)))


@pytest.mark.parametrize("n", range(5))
def test_ind_counts_match_chain_oracle(n):
    assert len(models.ind_generators(n)) == ind_count(n)


def test_other_families_are_categories():
    for n in range(3):
        assert models.sc(n).check(1) == []
        assert models.wbar(n).check(1) == []


@settings(max_examples=60, deadline=None)
@given(st.integers(0, 3), st.integers(0, 3), st.data())
def test_elementary_factorization_recomposes(m, n, data):
    # the function asserts the recomposition internally; check the shape too
    theta = data.draw(st.sampled_from(list(monotone_maps(m, n))))
    steps = models.elementary_factorization(theta, n)
    kinds = [k for k, _, _ in steps]
    assert kinds == sorted(kinds, reverse=True)  # every "s" before any "d"
    assert kinds.count("d") == n + 1 - len(set(theta))


@pytest.mark.parametrize("n", range(4))
def test_tau_is_a_functor(n):
    F = models.tau(n)
    assert F.check(1) == []


def test_psi_strict_at_n3():
    assert models.psi_strict_monotone(3) == []


@pytest.mark.parametrize("k, length", [(0, 2), (1, 2), (1, 3), (2, 2)])
def test_free_monoid_words_match_oracle(k, length):
    K, base = models.smash_of_circles(2, 2)
    M = models.FreeMonoidCategory(K, base, 2, length)
    letters = sum(1 for s in K.simplices(k) if s.nd != base)
    assert M.word_counts(k) == word_count(letters, length) == models.free_monoid_word_count(K, base, k, length)


def test_sphere_model_concatenation():
    S = models.sphere_model(2, 2, max_length=3)
    (loop,) = [s for s in S.hom("*", "*").simplices(1) if len(S.letters(s)) == 1]
    two = S.compose("*", "*", "*", loop, loop)
    assert S.compose("*", "*", "*", two, loop) == S.compose("*", "*", "*", loop, two)
    assert S.compose("*", "*", "*", loop, S.identity("*", 1)) == loop
    with pytest.raises(OverflowError):
        S.compose("*", "*", "*", two, two)


def test_horn_image_labels():
    assert models.horn_image(3, 1, 0, 3).label() == "cubic horn Π_{1,1}, 3 faces"
    assert models.horn_image(3, 0, 1, 3).label().startswith("cube boundary")

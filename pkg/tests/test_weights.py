from fractions import Fraction as F
from itertools import combinations
from math import factorial, prod

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

import oracles
from tropical_hassett.errors import DomainError, InputError
from tropical_hassett.permgroup import transposition
from tropical_hassett.weights import (
    WeightComplex,
    WeightVector,
    admissible_transpositions,
    aut_kw,
    aut_mbar,
    classify_heavy_light,
    heavy_light_vector,
    is_transposition_automorphism,
    kw_contains,
    kw_facets,
    kw_has_one_dimensional_facet,
    product_structure_matches,
    realize_product,
    symmetrize,
    weight_of_subset,
)

WREATH = [F(1, 3)] * 3 + [F(7, 12)] * 3
HEAVY_HALF = [1, 1, F(1, 2), F(1, 2)]

weights_strategy = st.lists(
    st.integers(1, 12).flatmap(lambda d: st.integers(1, d).map(lambda a: F(a, d))),
    min_size=2,
    max_size=7,
)


class TestWeightVector:
    def test_rejects_floats_and_out_of_range(self):
        with pytest.raises(InputError):
            WeightVector([0.5, 0.5])
        with pytest.raises(InputError):
            WeightVector([0, F(1, 2)])
        with pytest.raises(InputError):
            WeightVector([F(3, 2)])
        with pytest.raises(InputError):
            WeightVector([])

    def test_genus_condition(self):
        WeightVector([F(1, 2)] * 5).require_genus(0)
        with pytest.raises(DomainError):
            WeightVector([F(1, 2)] * 4).require_genus(0)
        with pytest.raises(DomainError):
            WeightVector([1, 1]).require_genus(0)
        WeightVector([F(1, 10)]).require_genus(1)

    def test_fractions_are_reduced(self):
        w = WeightVector(["2/4", F(3, 6)])
        assert w.weights == (F(1, 2), F(1, 2))


class TestSubsetsAndFacets:
    def test_weight_of_subset_examples(self):
        assert weight_of_subset(WREATH, {1, 4}) == F(11, 12)
        assert weight_of_subset(WREATH, set()) == 0
        assert weight_of_subset([F(1, 2), F(1, 2)], {1, 2}) == 1
        with pytest.raises(InputError):
            weight_of_subset(WREATH, {7})

    def test_kw_contains_examples(self):
        assert kw_contains(WREATH, {1, 2, 3})
        assert not kw_contains(WREATH, {4, 5})
        assert all(kw_contains(WREATH, {i}) for i in range(1, 7))

    def test_facet_examples(self):
        assert set(kw_facets([F(1, 2)] * 3)) == {frozenset(s) for s in ({1, 2}, {1, 3}, {2, 3})}
        assert set(kw_facets([1, 1, 1])) == {frozenset({i}) for i in (1, 2, 3)}
        expected = {frozenset({1, 2, 3})} | {frozenset({i, j}) for i in (1, 2, 3) for j in (4, 5, 6)}
        assert set(kw_facets(WREATH)) == expected

    def test_one_dimensional_facet_examples(self):
        assert kw_has_one_dimensional_facet([F(1, 2)] * 3)
        assert not kw_has_one_dimensional_facet([F(1, 4)] * 4)
        assert kw_has_one_dimensional_facet(WREATH)

    @settings(max_examples=150, deadline=None)
    @given(weights_strategy)
    def test_facets_match_exhaustive_scan(self, w):
        assert set(kw_facets(w)) == oracles.facets(w)
        assert set(WeightComplex(w).faces()) == oracles.faces(w)

    @settings(max_examples=100, deadline=None)
    @given(weights_strategy, st.data())
    def test_faces_downward_closed(self, w, data):
        n = len(w)
        T = data.draw(st.sets(st.integers(1, n)))
        S = data.draw(st.sets(st.sampled_from(sorted(T)))) if T else set()
        if kw_contains(w, T):
            assert kw_contains(w, S)


class TestAutKw:
    def test_transposition_examples(self):
        assert is_transposition_automorphism(HEAVY_HALF, 3, 4)
        assert not is_transposition_automorphism(HEAVY_HALF, 1, 3)
        assert not is_transposition_automorphism(WREATH, 1, 4)

    @pytest.mark.parametrize(
        "w, order",
        [([1, 1, 1], 6), ([F(1, 2)] * 3, 6), (HEAVY_HALF, 4), (WREATH, 36)],
    )
    def test_orders(self, w, order):
        assert aut_kw(w).order() == order

    @settings(max_examples=120, deadline=None)
    @given(weights_strategy)
    def test_equals_full_automorphism_group(self, w):
        # generated-by-transpositions group versus every face-preserving permutation
        brute = oracles.aut_kw_elements(w)
        K = aut_kw(w)
        assert K.elements() == brute
        for i, j in combinations(range(1, len(w) + 1), 2):
            assert is_transposition_automorphism(w, i, j) == (transposition(len(w), i - 1, j - 1) in brute)

    @settings(max_examples=60, deadline=None)
    @given(weights_strategy)
    def test_elements_preserve_faces(self, w):
        F_ = oracles.faces(w)
        for sigma in aut_kw(w).elements():
            assert all(frozenset(sigma[i - 1] + 1 for i in S) in F_ for S in F_)
        assert factorial(len(w)) % aut_kw(w).order() == 0


class TestAdmissible:
    def test_examples(self):
        assert admissible_transpositions(HEAVY_HALF) == list(combinations(range(1, 5), 2))
        assert admissible_transpositions([1, 1, 1]) == [(1, 2), (1, 3), (2, 3)]
        within = [(1, 2), (1, 3), (2, 3), (4, 5), (4, 6), (5, 6)]
        assert admissible_transpositions(WREATH) == within

    def test_group_orders(self):
        assert aut_mbar(HEAVY_HALF).order() == 24
        assert aut_mbar([F(1, 2)] * 3).order() == 6
        assert aut_mbar([F(1, 4)] * 4).order() == 24

    def test_non_disjoint_reading_breaks_the_facet_criterion(self):
        # K_w has no 1-dimensional facet here, so the two groups must agree
        w = [F(2, 5), 1, 1, 1, F(2, 7), F(1, 7)]
        assert not kw_has_one_dimensional_facet(w)
        assert aut_mbar(w) == aut_kw(w)
        assert aut_mbar(w, disjoint=False).order() == 6 != aut_kw(w).order()

    @settings(max_examples=200, deadline=None)
    @given(weights_strategy)
    def test_equal_groups_without_one_dimensional_facets(self, w):
        K, M = aut_kw(w), aut_mbar(w)
        assert K.issubgroup(M)
        if not kw_has_one_dimensional_facet(w):
            assert K == M


class TestSymmetrize:
    def test_examples(self):
        assert symmetrize([1, 1, 1]).weights == (1, 1, 1)
        assert symmetrize([F(1, 2), F(1, 3)]).weights == (F(5, 12), F(5, 12))
        assert symmetrize(HEAVY_HALF).weights == tuple(F(x) for x in HEAVY_HALF)

    @settings(max_examples=100, deadline=None)
    @given(weights_strategy)
    def test_properties(self, w):
        hat = symmetrize(w)
        assert kw_facets(hat) == kw_facets(w)
        assert symmetrize(hat) == hat
        assert aut_kw(hat) == aut_kw(w)
        for orbit in aut_kw(w).orbits():
            assert len({hat.weights[k] for k in orbit}) == 1


class TestHeavyLight:
    def test_examples(self):
        c = classify_heavy_light([F(1, 4), F(1, 4), 1, 1, 1])
        assert (c.light, c.heavy, c.is_heavy_light) == ({1, 2}, {3, 4, 5}, True)
        c = classify_heavy_light([1, 1, 1])
        assert c.heavy == {1, 2, 3} and not c.is_heavy_light

    def test_wreath_vector_follows_the_definition(self):
        # {2,4} weighs 11/12 < 1 yet 11/12 + 1/3 > 1, so marking 1 is not light
        c = classify_heavy_light(WREATH)
        assert weight_of_subset(WREATH, {2, 4}) + WREATH[0] > 1
        assert c.light == frozenset() and c.heavy == frozenset()
        assert not c.is_heavy_light

    @pytest.mark.parametrize("m, n", [(2, 3), (3, 2), (2, 4), (4, 3)])
    def test_heavy_light_vectors(self, m, n):
        c = classify_heavy_light(heavy_light_vector(m, n, F(1, m)))
        assert c.light == frozenset(range(1, m + 1))
        assert c.heavy == frozenset(range(m + 1, m + n + 1))
        assert c.is_heavy_light


class TestRealizeProduct:
    @pytest.mark.parametrize("blocks", [[3], [2, 2], [2, 3], [1, 4], [2, 2, 2], [3, 2], [4, 2], [1], [2, 1, 3]])
    def test_group_is_the_product(self, blocks):
        w = realize_product(blocks)
        K = aut_kw(w)
        assert K.order() == prod(factorial(b) for b in blocks)
        assert sorted(len(o) for o in K.orbits() if len(o) > 1) == sorted(b for b in blocks if b > 1)
        assert product_structure_matches(K, blocks)
        # independent count of face-preserving permutations
        if w.n <= 7:
            assert len(oracles.aut_kw_elements(w.weights)) == K.order()

    def test_single_block_is_all_ones(self):
        assert realize_product([4]).weights == (1, 1, 1, 1)
        assert realize_product([1]).weights == (1,)

    def test_certificate_rejects_wrong_structure(self):
        assert not product_structure_matches(aut_kw([1, 1, 1]), [2])
        assert not product_structure_matches(aut_kw(WREATH), [6])

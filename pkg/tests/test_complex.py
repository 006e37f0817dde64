import json
from fractions import Fraction as F
from itertools import combinations, permutations

import networkx as nx
import pytest

import oracles
from conftest import HALF, SMALL_CASES, WREATH, complex_for
from tropical_hassett import complex as cx
from tropical_hassett import graphs as gr
from tropical_hassett.errors import CapacityError, DomainError, InputError
from tropical_hassett.permgroup import PermutationGroup
from tropical_hassett.weights import aut_kw


class TestBuild:
    @pytest.mark.parametrize(
        "g, w, sizes",
        [
            (1, (HALF, HALF), [1, 1]),
            (0, (1, 1, 1, 1), [3]),
            # 12 one-edge classes; the 9 two-edge graphs each carry 2 labellings
            (0, WREATH, [12, 18]),
            (1, (1,), [1]),
        ],
    )
    def test_sizes(self, g, w, sizes):
        assert complex_for(g, w).sizes() == sizes

    def test_wreath_two_edge_graphs(self):
        X = complex_for(0, WREATH)
        assert len({gr.canonical(H.graph) for H in X.reps[1]}) == 9

    @pytest.mark.parametrize("g, w", SMALL_CASES)
    def test_classes_per_graph(self, g, w):
        X = complex_for(g, w)
        for p, dim in enumerate(X.reps):
            by_graph = {}
            for H in dim:
                by_graph.setdefault(gr.canonical(H.graph), []).append(H)
                assert H.graph.n_edges == p + 1
            for code, classes in by_graph.items():
                G = gr.from_code(code)
                # brute-force labelled classes, independent of the package
                if G.n_edges <= 4:
                    assert len(classes) == len(oracles.labelled_classes(G))
                assert len(classes) == cx.edge_action_count(G)

    @pytest.mark.parametrize("g, w", SMALL_CASES)
    def test_functoriality_and_closure(self, g, w):
        X = complex_for(g, w)
        assert X.functoriality_violations() == []
        for p in range(1, X.dim + 1):
            for s in range(X.sizes()[p]):
                for i in range(p + 1):
                    H = gr.contract(X.graph(p, s), i)
                    assert X.codes[p - 1][X.face(p, i, s)] == gr.canonical(H)

    def test_caps_and_domain(self):
        with pytest.raises(CapacityError):
            cx.build_delta(2, (1, 1), cap=100)
        with pytest.raises(DomainError):
            cx.build_delta(0, (1, 1))


class TestInjections:
    def test_identity_and_generators(self):
        X = complex_for(1, (1, 1, 1))
        for q in range(X.dim + 1):
            for s in range(X.sizes()[q]):
                assert cx.apply_injection(X, list(range(q + 1)), q, s) == s
                for i in range(q + 1):
                    if q:
                        delta = [j if j < i else j + 1 for j in range(q)]
                        assert cx.apply_injection(X, delta, q, s) == X.face(q, i, s)

    @pytest.mark.parametrize("g, w", [(1, (HALF, HALF)), (1, (1, 1, 1)), (1, (HALF,) * 3)])
    def test_factorizations_agree(self, g, w):
        X = complex_for(g, w)
        for q in range(X.dim + 1):
            for s in range(X.sizes()[q]):
                for p in range(q + 1):
                    for iota in permutations(range(q + 1), p + 1):
                        a = cx.apply_injection(X, iota, q, s)
                        assert a == cx.apply_injection_via_permutation_first(X, iota, q, s)
                        assert a == cx.apply_injection_direct(X, iota, q, s)

    def test_contravariance(self):
        # (iota o kappa)^* = kappa^* o iota^*
        X = complex_for(1, (1, 1, 1))
        q = X.dim
        for s in range(X.sizes()[q]):
            for iota in permutations(range(q + 1), 2):
                for kappa in permutations(range(2), 1):
                    comp = [iota[k] for k in kappa]
                    lhs = cx.apply_injection(X, comp, q, s)
                    rhs = cx.apply_injection(X, kappa, 1, cx.apply_injection(X, iota, q, s))
                    assert lhs == rhs

    def test_rejects_non_injective(self):
        X = complex_for(1, (1, 1, 1))
        with pytest.raises(InputError):
            cx.apply_injection(X, [0, 0], 2, 0)
        with pytest.raises(InputError):
            cx.apply_injection(X, [], 2, 0)


class TestFiltration:
    def test_roses_only_at_level_one(self):
        X = complex_for(2, (1,))
        V1 = cx.v_subcomplex(X, 1)
        assert all(H.graph.n_vertices == 1 for dim in V1.reps for H in dim)
        assert V1.sizes() == [1, 1]

    @pytest.mark.parametrize("g, w", SMALL_CASES)
    def test_chain_and_top(self, g, w):
        X = complex_for(g, w)
        top = 2 * g - 2 + len(w)
        prev = None
        for i in range(1, top + 1):
            idx = cx.v_indices(X, i)
            V = cx.v_subcomplex(X, i)
            assert V.functoriality_violations() == []
            counts = [len(s) for s in idx]
            while counts and not counts[-1]:
                counts.pop()
            assert V.sizes() == counts
            if prev is not None:
                assert all(a <= b for a, b in zip(prev, idx))
            prev = idx
        assert cx.v_subcomplex(X, top).sizes() == X.sizes()

    def test_small_case_whole_complex(self):
        X = complex_for(1, (HALF, HALF))
        assert cx.v_subcomplex(X, 2).sizes() == X.sizes()
        with pytest.raises(InputError):
            cx.v_subcomplex(X, 0)


class TestInducedAutomorphisms:
    def test_identity(self):
        X = complex_for(1, (1, 1, 1))
        assert cx.sn_induced_automorphism(X, (0, 1, 2)).is_identity()

    def test_swap_of_two_markings(self):
        X = complex_for(1, (1, 1, 1))
        phi = cx.sn_induced_automorphism(X, (1, 0, 2))
        assert not phi.is_identity() and phi.compose(phi).is_identity()
        for s, H in enumerate(X.reps[0]):
            G = H.graph
            moved = X.reps[0][phi(0, s)].graph
            swapped = [{ {1: 2, 2: 1}.get(i, i) for i in G.markings_at(v)} for v in range(G.n_vertices)]
            assert sorted(map(sorted, swapped)) == sorted(sorted(moved.markings_at(v)) for v in range(moved.n_vertices))

    def test_rejects_permutations_outside_aut_kw(self):
        X = complex_for(0, WREATH)
        with pytest.raises(DomainError):
            cx.sn_induced_automorphism(X, (3, 1, 2, 0, 4, 5))

    @pytest.mark.parametrize("g, w", SMALL_CASES)
    def test_homomorphism(self, g, w):
        X = complex_for(g, w)
        K = sorted(aut_kw(w).elements())[:12]
        induced = {s: cx.sn_induced_automorphism(X, s) for s in K}
        for a, b in combinations(K, 2):
            ab = tuple(a[b[x]] for x in range(len(a)))
            if ab in induced:
                assert induced[a].compose(induced[b]) == induced[ab]


class TestAutComplex:
    @pytest.mark.parametrize(
        "g, w, order",
        [(1, (F(1, 3), F(1, 2)), 1), (1, (F(2, 5), F(2, 5)), 1), (0, (1, 1, 1, 1), 6), (0, WREATH, 1296)],
    )
    def test_orders(self, g, w, order):
        assert cx.aut_complex(complex_for(g, w)).order() == order

    @pytest.mark.parametrize(
        "g, w",
        [(1, (HALF, HALF)), (0, (1, 1, 1, 1)), (1, (HALF,) * 3), (0, (HALF, HALF, 1, 1, 1)), (0, WREATH),
         (1, (1, 1, 1)), (0, (F(1, 3),) * 3 + (1, 1))],
    )
    def test_order_matches_backtracking_oracle(self, g, w):
        X = complex_for(g, w)
        assert cx.aut_complex(X).order() == oracles.count_complex_automorphisms(X)

    @pytest.mark.parametrize("g, w", SMALL_CASES)
    def test_generators_commute_and_order_is_consistent(self, g, w):
        X = complex_for(g, w)
        A = cx.aut_complex(X)
        for phi in A.generators:
            assert phi.violations(X) == []
        # Schreier-Sims on the returned generators must reproduce the order
        assert PermutationGroup(X.total(), [A.to_flat(p) for p in A.generators]).order() == A.order()

    def test_non_automorphism_detected(self):
        X = complex_for(0, WREATH)
        bad = cx.ComplexAutomorphism(((1, 0) + tuple(range(2, 12)), tuple(range(18))))
        assert bad.violations(X)
        assert bad not in cx.aut_complex(X)

    def test_large_symmetric_group_is_not_enumerated(self):
        X = cx.build_delta(0, [F(1, 3)] * 8)
        A = cx.aut_complex(X)
        assert X.sizes() == [35]
        assert A.order_string() == "35!"
        with pytest.raises(CapacityError):
            A.elements()

    def test_cap(self):
        with pytest.raises(CapacityError):
            cx.aut_complex(complex_for(1, (1, 1, 1)), cap=10)


class TestGenusZero:
    def test_skeleton_examples(self):
        S = cx.one_skeleton_g0(complex_for(0, (1,) * 5))
        assert S.number_of_nodes() == 10 and S.number_of_edges() == 15
        # splits {i,j} | rest are adjacent iff the pairs are disjoint: the Kneser graph K(5,2)
        assert nx.is_isomorphic(S, nx.petersen_graph())
        S = cx.one_skeleton_g0(complex_for(0, WREATH))
        assert (S.number_of_nodes(), S.number_of_edges(), nx.number_connected_components(S)) == (12, 9, 3)
        S = cx.one_skeleton_g0(complex_for(0, (1, 1, 1, 1)))
        assert (S.number_of_nodes(), S.number_of_edges()) == (3, 0)

    @pytest.mark.parametrize("w", [(1,) * 5, (HALF, HALF, 1, 1, 1), (1, 1, 1, 1), WREATH, (1,) * 6])
    def test_flag(self, w):
        assert cx.is_flag_g0(complex_for(0, w)) == (True, None)

    @pytest.mark.parametrize("w", [(1,) * 5, (HALF, HALF, 1, 1, 1), WREATH, (1,) * 6, (F(1, 3),) * 3 + (1, 1)])
    def test_adjacency_is_split_compatibility(self, w):
        X = complex_for(0, w)
        S = cx.one_skeleton_g0(X)
        for a, b in combinations(range(X.sizes()[0]), 2):
            A1, A2 = cx.vertex_split(X, a)
            B1, B2 = cx.vertex_split(X, b)
            compatible = any(not (P & Q) for P in (A1, A2) for Q in (B1, B2))
            assert S.has_edge(a, b) == compatible

    def test_domain(self):
        with pytest.raises(DomainError):
            cx.one_skeleton_g0(complex_for(1, (HALF, HALF)))
        with pytest.raises(DomainError):
            cx.is_flag_g0(complex_for(1, (HALF, HALF)))


class TestExport:
    def test_json(self):
        X = complex_for(0, WREATH)
        d = json.loads(cx.complex_to_json_string(X))
        assert d["sizes"] == [12, 18]
        assert d["weights"][0] == {"num": 1, "den": 3}
        assert len(d["dimensions"][1]["faces"]) == 18

    def test_dot(self):
        dot = cx.complex_to_dot(complex_for(0, WREATH))
        assert dot.count(" -- ") == 9
        assert "h=0; {1,2,3,4} | h=0; {5,6}" in dot

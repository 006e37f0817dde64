"""Named, parameterised checks that return structured reports.

Each ``verify_*`` function builds what it needs, compares computed objects
against the claimed structure, and returns a :class:`CheckReport`.  A check
raises :class:`DomainError` only when asked about parameters outside the
claim it tests.
"""

from __future__ import annotations

import json
import time
from dataclasses import asdict, dataclass, field
from fractions import Fraction
from itertools import combinations
from math import comb, factorial
from typing import Any, Callable, Sequence

import networkx as nx

from . import graphs as gr
from .complex import (
    DEFAULT_SIMPLEX_CAP,
    SymmetricDeltaComplex,
    aut_complex,
    build_delta,
    identity_automorphism,
    is_flag_g0,
    one_skeleton_g0,
    sn_induced_automorphism,
    v_indices,
)
from .errors import DomainError, InputError
from .permgroup import DEFAULT_GROUP_CAP, cycle_string
from .weights import (
    WeightVector,
    as_weights,
    aut_kw,
    heavy_light_vector,
    product_structure_matches,
    realize_product,
)


@dataclass
class CheckReport:
    check: str
    params: dict
    verdict: bool
    witnesses: dict = field(default_factory=dict)
    duration_ms: float = 0.0

    @property
    def passed(self) -> bool:
        return self.verdict

    def to_json(self) -> dict:
        d = asdict(self)
        d["verdict"] = "pass" if self.verdict else "fail"
        return _plain(d)

    def dumps(self) -> str:
        return json.dumps(self.to_json(), indent=1)

    def summary(self) -> str:
        return f"{self.check} {self.params}: {'PASS' if self.verdict else 'FAIL'} ({self.duration_ms:.0f} ms)"


def _plain(x: Any):
    """Make witnesses JSON-safe: fractions become strings, tuples lists."""
    if isinstance(x, Fraction):
        return str(x)
    if isinstance(x, WeightVector):
        return [str(v) for v in x.weights]
    if isinstance(x, dict):
        return {str(k): _plain(v) for k, v in x.items()}
    if isinstance(x, (list, tuple, set, frozenset)):
        items = [_plain(v) for v in x]
        return sorted(items, key=repr) if isinstance(x, (set, frozenset)) else items
    return x


def _timed(name: str, params: dict, body: Callable[[], tuple[bool, dict]]) -> CheckReport:
    t0 = time.perf_counter()
    verdict, witnesses = body()
    ms = (time.perf_counter() - t0) * 1000
    return CheckReport(name, _plain(params), bool(verdict), witnesses, ms)


def induced_map_report(X: SymmetricDeltaComplex, group_cap: int) -> tuple[bool, dict]:
    """Is sigma -> Phi_sigma a bijection from Aut(K_w) onto Aut(X)?"""
    A = aut_complex(X)
    K = aut_kw(X.w)
    K.cap = group_cap
    images: dict[tuple, tuple] = {}
    collisions = []
    for sigma in sorted(K.elements()):
        phi = sn_induced_automorphism(X, sigma)
        if phi.maps in images:
            collisions.append([cycle_string(images[phi.maps]), cycle_string(sigma)])
        images.setdefault(phi.maps, sigma)
    missing = [list(map(list, g.maps)) for g in A.generators if g.maps not in images]
    w = {
        "aut_kw_order": K.order(),
        "aut_complex_order": A.order_string(),
        "sizes": X.sizes(),
        "aut_complex_generators_dim0": [list(g.maps[0]) for g in A.generators],
    }
    if collisions:
        w["non_injective"] = collisions
    if missing:
        w["generators_outside_image"] = missing
    ok = not collisions and not missing and K.order() == A.order()
    return ok, w


def verify_main_theorem(g: int, w, cap: int = DEFAULT_SIMPLEX_CAP, group_cap: int = DEFAULT_GROUP_CAP) -> CheckReport:
    w = as_weights(w)
    if g < 1 or 2 * g - 2 + w.n < 3:
        raise DomainError("the claim covers g >= 1 with 2g - 2 + n >= 3")

    def body():
        X = build_delta(g, w, cap)
        return induced_map_report(X, group_cap)

    return _timed("main-theorem", {"g": g, "w": w}, body)


def verify_excluded_case(g: int, w, cap: int = DEFAULT_SIMPLEX_CAP) -> CheckReport:
    """Small cases outside the main claim, where Aut of the complex is trivial."""
    w = as_weights(w)

    def body():
        X = build_delta(g, w, cap)
        A = aut_complex(X)
        return A.order() == 1, {"sizes": X.sizes(), "aut_complex_order": A.order(), "aut_kw_order": aut_kw(w).order()}

    return _timed("excluded-case", {"g": g, "w": w}, body)


def _check_heavy_light_params(m: int, n: int, eps) -> Fraction:
    eps = Fraction(eps)
    if m < 2 or n < 2 or m + n < 5 or not 0 < eps <= Fraction(1, m):
        raise DomainError("need m, n >= 2, m + n >= 5 and 0 < eps <= 1/m")
    return eps


def verify_heavy_light(m: int, n: int, eps, cap: int = DEFAULT_SIMPLEX_CAP) -> CheckReport:
    eps = _check_heavy_light_params(m, n, eps)

    def body():
        X = build_delta(0, heavy_light_vector(m, n, eps), cap)
        ok, wit = induced_map_report(X, DEFAULT_GROUP_CAP)
        flag, clique = is_flag_g0(X)
        wit["expected_order"] = factorial(m) * factorial(n)
        wit["flag"] = flag
        if clique is not None:
            wit["clique_without_simplex"] = sorted(clique)
        ok = ok and aut_complex(X).order() == factorial(m) * factorial(n) and flag
        return ok, wit

    return _timed("heavy-light", {"m": m, "n": n, "eps": eps}, body)


def disjoint_vertex_count(k: int) -> int:
    return comb(2 * k + 2, k + 1) // 2


def verify_disjoint_vertices(k: int, cap: int = DEFAULT_SIMPLEX_CAP) -> CheckReport:
    if k < 1:
        raise DomainError("k must be positive")

    def body():
        X = build_delta(0, [Fraction(1, k)] * (2 * k + 2), cap)
        A = aut_complex(X)
        N = disjoint_vertex_count(k)
        ok = X.sizes() == [N] and A.order() == factorial(N)
        return ok, {"expected_vertices": N, "sizes": X.sizes(), "aut_complex_order": A.order_string()}

    return _timed("disjoint-vertices", {"k": k}, body)


WREATH_WEIGHTS = [Fraction(1, 3)] * 3 + [Fraction(7, 12)] * 3


def verify_wreath_example(cap: int = DEFAULT_SIMPLEX_CAP) -> CheckReport:
    def body():
        X = build_delta(0, WREATH_WEIGHTS, cap)
        S = one_skeleton_g0(X)
        comps = [S.subgraph(c) for c in nx.connected_components(S)]
        stars = sum(1 for C in comps if nx.is_isomorphic(C, nx.star_graph(3)))
        A = aut_complex(X)
        K = aut_kw(WREATH_WEIGHTS)
        wit = {
            "sizes": X.sizes(),
            "skeleton_vertices": S.number_of_nodes(),
            "skeleton_edges": S.number_of_edges(),
            "components": len(comps),
            "three_leaf_stars": stars,
            "aut_complex_order": A.order(),
            "aut_kw_order": K.order(),
        }
        ok = (
            S.number_of_nodes() == 12
            and S.number_of_edges() == 9
            and len(comps) == 3
            and stars == 3
            and A.order() == 1296
            and K.order() == 36
        )
        return ok, wit

    return _timed("wreath", {"w": WREATH_WEIGHTS}, body)


def _deck_collisions(X: SymmetricDeltaComplex, restrict: bool) -> tuple[int, list]:
    groups: dict[tuple, list[tuple]] = {}
    scanned = 0
    for p, s in X.simplices():
        H = X.graph(p, s)
        G = H.graph
        if G.n_vertices < 3 or (restrict and any(G.genera)):
            continue
        scanned += 1
        groups.setdefault((G.n_vertices, p, gr.deck(H)), []).append(X.codes[p][s])
    bad = [codes[:2] for codes in groups.values() if len(codes) > 1]
    return scanned, bad


def verify_reconstruction(g: int, w, cap: int = DEFAULT_SIMPLEX_CAP) -> CheckReport:
    """Equal non-loop contraction decks force equal classes (>= 3 vertices).

    The verdict covers graphs with all vertex genera zero; the same scan
    without that restriction is reported alongside as data.
    """
    w = as_weights(w)

    def body():
        X = build_delta(g, w, cap)
        scanned, bad = _deck_collisions(X, restrict=True)
        scanned_all, bad_all = _deck_collisions(X, restrict=False)
        wit = {
            "classes_scanned": scanned,
            "collisions": len(bad),
            "unrestricted_classes_scanned": scanned_all,
            "unrestricted_collisions": len(bad_all),
        }
        if bad:
            wit["pairs"] = bad[:5]
        if bad_all:
            wit["unrestricted_pairs"] = bad_all[:5]
        return not bad, wit

    return _timed("reconstruction", {"g": g, "w": w}, body)


def expansion_formula(m: int, n: int, x: int, y: int) -> int:
    """Closed count of one-edge expansions of the split with ``x`` markings,
    ``y`` of them light, on one side."""
    return 2**x - 2**y + 2 ** (m + n - x) - 2 ** (m - y) - 2 - n


def verify_expansion_formula(m: int, n: int, eps) -> CheckReport:
    eps = _check_heavy_light_params(m, n, eps)

    def body():
        w = heavy_light_vector(m, n, eps)
        lights = frozenset(range(1, m + 1))
        rows = []
        mismatches = []
        for G in gr.enumerate_stable_graphs(0, w, max_edges=1).get(1, []):
            A = G.markings_at(0)
            x, y = len(A), len(A & lights)
            count = len(gr.one_edge_expansions(G, w, 0))
            predicted = expansion_formula(m, n, x, y)
            small = min(A, G.markings_at(1), key=len)
            special = len(small) == 2 and len(small & lights) == 1
            rows.append({"A": sorted(A), "count": count, "formula": predicted, "special": special})
            if count != predicted:
                mismatches.append(rows[-1])
        best = max(r["count"] for r in rows)
        maximisers = [r for r in rows if r["count"] == best]
        exact = all(r["special"] for r in maximisers) and len(maximisers) == sum(r["special"] for r in rows)
        wit = {
            "one_edge_classes": len(rows),
            "max_count": best,
            "maximisers": len(maximisers),
            "special_graphs": sum(r["special"] for r in rows),
        }
        if mismatches:
            wit["mismatches"] = mismatches
        if not exact:
            wit["maximiser_sets"] = [r["A"] for r in maximisers]
        return not mismatches and exact, wit

    return _timed("expansion-formula", {"m": m, "n": n, "eps": eps}, body)


def verify_realize_product(block_sizes: Sequence[int]) -> CheckReport:
    def body():
        w = realize_product(block_sizes)
        K = aut_kw(w)
        ok = product_structure_matches(K, block_sizes)
        return ok, {
            "w": w,
            "aut_kw_order": K.order(),
            "orbits": [[k + 1 for k in o] for o in K.orbits() if len(o) > 1],
        }

    return _timed("realize-product", {"blocks": list(block_sizes)}, body)


def _rose_index(X: SymmetricDeltaComplex, loops: int) -> int:
    """Index of the one-vertex, genus-0, ``loops``-petal class in dimension ``loops - 1``."""
    hits = [
        s for s, H in enumerate(X.reps[loops - 1])
        if H.graph.n_vertices == 1 and H.graph.genera == (X.g - loops,)
    ]
    if len(hits) != 1:
        raise AssertionError(f"expected one rose class with {loops} loops, found {len(hits)}")
    return hits[0]


def verify_filtration_and_locals(g: int, w, cap: int = DEFAULT_SIMPLEX_CAP, group_cap: int = 10**5) -> CheckReport:
    w = as_weights(w)
    if g < 1:
        raise DomainError("the claim covers g >= 1")

    def body():
        X = build_delta(g, w, cap)
        A = aut_complex(X)
        phis = A.elements(group_cap) if A.order() <= group_cap else [identity_automorphism(X)] + A.generators
        top = 2 * g - 2 + w.n
        levels = {i: v_indices(X, i) for i in range(1, top + 1)}
        roses = {1: _rose_index(X, 1), g: _rose_index(X, g)}
        bridge = [[gr.bridges(H) for H in dim] for dim in X.reps]
        cyc = [[gr.cycle_signature(H) for H in dim] for dim in X.reps]
        failures = []
        for phi in phis:
            for i, per_dim in levels.items():
                for p, idx in enumerate(per_dim):
                    if {phi(p, s) for s in idx} != idx:
                        failures.append(("V", i, p))
            for k, r in roses.items():
                if phi(k - 1, r) != r:
                    failures.append(("rose", k))
            for p, s in X.simplices():
                t = phi(p, s)
                if bridge[p][s] != bridge[p][t]:
                    failures.append(("bridges", p, s))
                if cyc[p][s] != cyc[p][t]:
                    failures.append(("cycles", p, s))
        v2 = levels.get(2, levels[top])
        restricted = {tuple(tuple(phi(p, s) for s in sorted(idx)) for p, idx in enumerate(v2)) for phi in phis}
        injective = len(restricted) == len({phi.maps for phi in phis})
        wit = {
            "aut_complex_order": A.order_string(),
            "maps_checked": len(phis),
            "filtration_levels": top,
            "restriction_to_V2_injective": injective,
        }
        if failures:
            wit["failures"] = failures[:10]
        return not failures and injective, wit

    return _timed("filtration", {"g": g, "w": w}, body)


def verify_structure(g: int, w, cap: int = DEFAULT_SIMPLEX_CAP) -> CheckReport:
    """Table relations, contraction commutation, genus and stability under contraction."""
    w = as_weights(w)

    def body():
        X = build_delta(g, w, cap)
        relations = X.functoriality_violations()
        bad = []
        for p, s in X.simplices():
            H = X.graph(p, s)
            for i in range(p + 1):
                K = gr.contract(H, i)
                if K.graph.genus() != g or not gr.is_w_stable(K, w, g):
                    bad.append(("contraction", X.codes[p][s], i))
            for i, j in combinations(range(p + 1), 2):
                # d_i d_j = d_{j-1} d_i on graphs, not only on tables
                a = gr.canonical(gr.contract(gr.contract(H, j), i))
                b = gr.canonical(gr.contract(gr.contract(H, i), j - 1))
                if a != b:
                    bad.append(("order", X.codes[p][s], i, j))
        wit = {"sizes": X.sizes(), "relation_violations": len(relations), "graph_violations": len(bad)}
        if bad:
            wit["examples"] = bad[:5]
        return not relations and not bad, wit

    return _timed("structure", {"g": g, "w": w}, body)


CHECKS: dict[str, Callable[..., CheckReport]] = {
    "main-theorem": verify_main_theorem,
    "excluded-case": verify_excluded_case,
    "heavy-light": verify_heavy_light,
    "disjoint-vertices": verify_disjoint_vertices,
    "wreath": verify_wreath_example,
    "reconstruction": verify_reconstruction,
    "expansion-formula": verify_expansion_formula,
    "realize-product": verify_realize_product,
    "filtration": verify_filtration_and_locals,
    "structure": verify_structure,
}


def run_check(name: str, **params) -> CheckReport:
    try:
        fn = CHECKS[name]
    except KeyError:
        raise InputError(f"unknown check {name!r}; choose from {', '.join(CHECKS)}") from None
    return fn(**params)


def _run_one(item):
    name, params = item
    return run_check(name, **params)


def run_checks(requests: Sequence[tuple[str, dict]], workers: int = 1) -> list[CheckReport]:
    """Run independent checks, optionally in worker processes; order is kept."""
    if workers <= 1:
        return [_run_one(r) for r in requests]
    from concurrent.futures import ProcessPoolExecutor

    with ProcessPoolExecutor(max_workers=workers) as pool:
        return list(pool.map(_run_one, requests))
